#pragma once

// Independent references for the spectral layer.

#include <cmath>
#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace oracle {

inline std::vector<double> multiply(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline std::vector<double> reflect(std::vector<double> a) {
  for (std::size_t i = 1; i < a.size(); i += 2) a[i] = -a[i];
  return a;
}

/// |P(i w)|^2 - |Q(i w)|^2 as a polynomial in s = w^2, obtained from
/// P(x)P(-x) - Q(x)Q(-x), which is even in x, with x^2 = -s. Ascending,
/// normalised to a monic leading coefficient.
inline std::vector<double> modulus_polynomial(const std::vector<double>& p, const std::vector<double>& q) {
  auto pp = multiply(p, reflect(p));
  const auto qq = q.empty() ? std::vector<double>{0.0} : multiply(q, reflect(q));
  for (std::size_t i = 0; i < qq.size(); ++i) pp[i] -= qq[i];
  std::vector<double> s;
  for (std::size_t i = 0; i < pp.size(); i += 2) s.push_back(((i / 2) % 2 ? -1.0 : 1.0) * pp[i]);
  const double lead = s.back();
  for (double& c : s) c /= lead;
  return s;
}

/// Bisection for a sign change of f on [lo, hi]; nullopt without one.
inline std::optional<double> bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo > 0) == (fhi > 0)) return std::nullopt;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm > 0) == (flo > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Rightmost real root of f on [lo, hi] from a uniform sign scan.
inline std::optional<double> rightmost_real_root(const std::function<double(double)>& f, double lo, double hi,
                                                 int samples = 20000) {
  double prev = f(hi);
  for (int i = samples - 1; i >= 0; --i) {
    const double x0 = lo + (hi - lo) * i / samples;
    const double x1 = lo + (hi - lo) * (i + 1) / samples;
    const double cur = f(x0);
    if ((cur > 0) != (prev > 0) || cur == 0) return bisect(f, x0, x1);
    prev = cur;
  }
  return std::nullopt;
}

}  // namespace oracle
