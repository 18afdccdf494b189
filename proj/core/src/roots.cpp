#include "hivdelay/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <utility>

#include "hivdelay/errors.hpp"
#include "hivdelay/polynomial.hpp"

namespace hivdelay {
namespace {

using cd = std::complex<double>;

constexpr double kNearRoot = 1e-10;
constexpr double kJitter = 1e-6;
constexpr int kMaxJitter = 5;
constexpr int kInitialSegments = 64;
constexpr std::size_t kMaxEvaluations = 2'000'000;

struct ContourFailure {};

class ArgumentTracker {
 public:
  explicit ArgumentTracker(const QuasiPolynomial& qp) : qp_(qp) {}

  cd value(cd xi) {
    if (++evaluations_ > kMaxEvaluations) throw ContourFailure{};
    const cd v = eval(qp_, xi);
    if (std::abs(v) < kNearRoot * magnitude_scale(qp_, xi)) throw ContourFailure{};
    return v;
  }

  // Accumulated change of arg D along the straight edge from `from` to `to`.
  double edge(cd from, cd to) {
    double total = 0;
    // e^{-xi tau} turns by tau radians per unit length along vertical edges.
    const double length = std::abs(to - from);
    const int segments = std::max(kInitialSegments, static_cast<int>(std::ceil(4.0 * length * std::max(1.0, qp_.tau))));
    cd z0 = from;
    cd d0 = value(z0);
    for (int i = 1; i <= segments; ++i) {
      const cd z1 = from + (to - from) * (static_cast<double>(i) / segments);
      const cd d1 = value(z1);
      total += segment(z0, d0, z1, d1, 0);
      z0 = z1;
      d0 = d1;
    }
    return total;
  }

 private:
  double segment(cd z0, cd d0, cd z1, cd d1, int depth) {
    const double turn = std::arg(d1 / d0);
    const double step = std::abs(z1 - z0);
    // The derivative test rules out a whole hidden turn between the ends.
    const bool smooth = std::abs(turn) < std::numbers::pi / 4 &&
                        std::abs(d1 - d0) < 0.5 * std::min(std::abs(d0), std::abs(d1)) &&
                        std::abs(eval_dxi(qp_, z0)) * step < 0.5 * std::abs(d0) &&
                        std::abs(eval_dxi(qp_, z1)) * step < 0.5 * std::abs(d1);
    if (smooth) return turn;
    if (depth > 60 || std::abs(z1 - z0) < 1e-13 * std::max(1.0, std::abs(z0))) throw ContourFailure{};
    const cd zm = 0.5 * (z0 + z1);
    const cd dm = value(zm);
    return segment(z0, d0, zm, dm, depth + 1) + segment(zm, dm, z1, d1, depth + 1);
  }

  const QuasiPolynomial& qp_;
  std::size_t evaluations_ = 0;
};

double sigma_max_for(const QuasiPolynomial& qp, double sigma) {
  double sp = 0;
  for (std::size_t i = 0; i + 1 < qp.p.size(); ++i) sp += std::abs(qp.p[i]);
  double sq = 0;
  for (double v : qp.q) sq += std::abs(v);
  return std::max(sigma + 1.0, 1.0 + std::max(1.0, sp) + sq * std::exp(std::abs(sigma) * qp.tau));
}

std::optional<int> winding(const QuasiPolynomial& qp, double sigma, double omega_cap) {
  const double right = sigma_max_for(qp, sigma);
  const cd c0(sigma, -omega_cap), c1(right, -omega_cap), c2(right, omega_cap), c3(sigma, omega_cap);
  try {
    ArgumentTracker tracker(qp);
    const double total = tracker.edge(c0, c1) + tracker.edge(c1, c2) + tracker.edge(c2, c3) + tracker.edge(c3, c0);
    const double turns = total / (2 * std::numbers::pi);
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > 0.1) return std::nullopt;
    return static_cast<int>(rounded);
  } catch (const ContourFailure&) {
    return std::nullopt;
  }
}

}  // namespace

double root_modulus_bound(const QuasiPolynomial& qp, double sigma) {
  double sp = 0;
  for (std::size_t i = 0; i + 1 < qp.p.size(); ++i) sp += std::abs(qp.p[i]);
  double sq = 0;
  for (double v : qp.q) sq += std::abs(v);
  return std::max(1.0, sp + std::exp(-sigma * qp.tau) * sq);
}

int count_roots_right_of(const QuasiPolynomial& qp, double sigma, double omega_cap) {
  qp.check();
  if (!(omega_cap > 0)) throw UnsupportedShape("count_roots_right_of: omega_cap must be positive");
  for (int attempt = 0; attempt <= kMaxJitter; ++attempt) {
    const double shift = attempt * kJitter;
    if (auto n = winding(qp, sigma + shift, omega_cap + shift)) return *n;
  }
  throw ContourNearRoot("count_roots_right_of: root on the contour after jittering");
}

int count_roots_right_of(const QuasiPolynomial& qp, double sigma) {
  return count_roots_right_of(qp, sigma, root_modulus_bound(qp, sigma) + 1.0);
}

std::vector<std::complex<double>> rightmost_roots(const QuasiPolynomial& qp, const RootRegion& region,
                                                  double spacing) {
  qp.check();
  std::vector<cd> found;
  const int nre = static_cast<int>(std::floor((region.re_max - region.re_min) / spacing)) + 1;
  const int nim = static_cast<int>(std::floor(region.im_max / spacing)) + 1;
  const double margin = 1e-9;

  for (int i = 0; i < nre; ++i) {
    for (int j = 0; j < nim; ++j) {
      cd z(region.re_min + i * spacing, j * spacing);
      bool converged = false;
      for (int iter = 0; iter < 100; ++iter) {
        const cd deriv = eval_dxi(qp, z);
        if (deriv == 0.0) break;
        const cd step = eval(qp, z) / deriv;
        z -= step;
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > 1e6) break;
        if (std::abs(step) < 1e-12 * std::max(1.0, std::abs(z))) {
          converged = true;
          break;
        }
      }
      if (!converged) continue;
      if (std::abs(eval(qp, z)) >= 1e-9 * magnitude_scale(qp, z)) continue;
      if (z.imag() < 0) z = std::conj(z);
      if (std::abs(z.imag()) < 1e-10) z = cd(z.real(), 0.0);
      if (z.real() < region.re_min - margin || z.real() > region.re_max + margin || z.imag() > region.im_max + margin) {
        continue;
      }
      const bool duplicate =
          std::any_of(found.begin(), found.end(), [&](const cd& r) { return std::abs(r - z) <= 1e-8; });
      if (!duplicate) found.push_back(z);
    }
  }
  std::sort(found.begin(), found.end(), [](const cd& l, const cd& r) {
    if (l.real() != r.real()) return l.real() > r.real();
    return l.imag() < r.imag();
  });
  return found;
}

double default_omega_cap(const QuasiPolynomial& qp) {
  const auto roots = positive_roots(modulus_poly(qp));
  if (roots.empty()) return 10.0;
  return 1.0 + std::sqrt(roots.back());
}

}  // namespace hivdelay
