#include "hivdelay/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace hivdelay {

double horner(std::span<const double> c, double x) {
  double acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> horner(std::span<const double> c, std::complex<double> x) {
  std::complex<double> acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> horner_derivative(std::span<const double> c, std::complex<double> x) {
  std::complex<double> acc = 0;
  for (std::size_t i = c.size(); i-- > 1;) acc = acc * x + static_cast<double>(i) * c[i];
  return acc;
}

std::vector<double> poly_multiply(std::span<const double> lhs, std::span<const double> rhs) {
  if (lhs.empty() || rhs.empty()) return {};
  std::vector<double> out(lhs.size() + rhs.size() - 1, 0.0);
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    for (std::size_t j = 0; j < rhs.size(); ++j) out[i + j] += lhs[i] * rhs[j];
  }
  return out;
}

std::vector<std::complex<double>> polynomial_roots(std::span<const double> ascending) {
  std::size_t n = ascending.size();
  while (n > 0 && ascending[n - 1] == 0.0) --n;
  if (n <= 1) return {};
  const std::size_t degree = n - 1;
  const double lead = ascending[degree];

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(degree), static_cast<Eigen::Index>(degree));
  for (std::size_t i = 1; i < degree; ++i) companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < degree; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(degree - 1)) = -ascending[i] / lead;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  const auto& ev = solver.eigenvalues();

  const std::span<const double> coeffs = ascending.first(n);
  std::vector<std::complex<double>> roots;
  roots.reserve(degree);
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    std::complex<double> z = ev[i];
    for (int iter = 0; iter < 5; ++iter) {
      const auto d = horner_derivative(coeffs, z);
      if (std::abs(d) == 0.0) break;
      const auto step = horner(coeffs, z) / d;
      const auto candidate = z - step;
      if (std::abs(horner(coeffs, candidate)) >= std::abs(horner(coeffs, z))) break;
      z = candidate;
    }
    roots.push_back(z);
  }
  return roots;
}

std::vector<double> positive_real_roots(std::span<const double> ascending, double imag_tol) {
  std::vector<double> out;
  for (const auto& r : polynomial_roots(ascending)) {
    if (std::abs(r.imag()) <= imag_tol * std::max(1.0, std::abs(r)) && r.real() > 0) out.push_back(r.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hivdelay
