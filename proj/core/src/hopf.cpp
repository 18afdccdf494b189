#include "hivdelay/hopf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "hivdelay/characteristic.hpp"
#include "hivdelay/errors.hpp"
#include "hivdelay/model.hpp"
#include "hivdelay/roots.hpp"

namespace hivdelay {
namespace {

using cd = std::complex<double>;

constexpr int kBaseGrid = 64;
constexpr int kMaxRefine = 3;  // find_hopf seed grid refinements

// Upper end of the E_d regime (R0(tau2) = R1), if E_d exists at tau = 0.
std::optional<double> ed_tau_limit(const ModelParams& params) {
  const double R1 = reproduction_numbers(params).R1;
  auto t2 = threshold_delay(params, R1);
  if (!t2 || *t2 <= 0) return std::nullopt;
  return *t2;
}

double pull_in(double t) { return 1e-8 * std::max(1.0, std::abs(t)); }

// Past this frequency the quartic term of R~ dominates all the others, at
// every delay of the range.
double omega_tail(const ModelParams& params, Interval range) {
  double tail = 1.0;
  for (double t : {range.lo, range.hi}) {
    const QuasiPolynomial qp = char_Ed(params.with_tau(t));
    const double sum = -qp.q[3] + qp.p[2] - qp.q[2] - qp.q[1];
    tail = std::max(tail, sum / qp.p[4]);
  }
  return tail;
}

struct Evaluated {
  cd D;
  double scale;
};

Evaluated evaluate(const ModelParams& params, double omega, double tau) {
  const QuasiPolynomial qp = char_Ed(params.with_tau(tau));
  const cd xi(0.0, omega);
  return {eval(qp, xi), magnitude_scale(qp, xi)};
}

HopfPoint make_point(const ModelParams& params, double omega, double tau) {
  const ModelParams at = params.with_tau(tau);
  const QuasiPolynomial qp = char_Ed(at);
  const cd xi(0.0, omega);
  HopfPoint hp;
  hp.tau_h = tau;
  hp.omega_h = omega;
  hp.dD_dxi = eval_dxi(qp, xi);
  hp.re_dxi_dtau = std::real(-dD_dtau(qp, char_Ed_dtau(at), xi) / hp.dD_dxi);
  hp.R_h = reproduction_numbers(at).R0;
  return hp;
}

// Newton on (Re D, Im D)(omega, tau) = 0 with the analytic Jacobian.
std::optional<std::pair<double, double>> newton2d(const ModelParams& params, double omega, double tau) {
  try {
    for (int iter = 0; iter < 50; ++iter) {
      const ModelParams at = params.with_tau(tau);
      const QuasiPolynomial qp = char_Ed(at);
      const cd xi(0.0, omega);
      const cd D = eval(qp, xi);
      const cd d_omega = cd(0.0, 1.0) * eval_dxi(qp, xi);
      const cd d_tau = dD_dtau(qp, char_Ed_dtau(at), xi);
      const double det = d_omega.real() * d_tau.imag() - d_tau.real() * d_omega.imag();
      if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
      const double step_omega = (-D.real() * d_tau.imag() + d_tau.real() * D.imag()) / det;
      const double step_tau = (-d_omega.real() * D.imag() + D.real() * d_omega.imag()) / det;
      omega += step_omega;
      tau += step_tau;
      if (!(omega > 0) || !(tau >= 0) || !std::isfinite(omega) || !std::isfinite(tau)) return std::nullopt;
      if (std::hypot(step_omega, step_tau) < 1e-12) {
        const Evaluated e = evaluate(params, omega, tau);
        if (std::abs(e.D) < 1e-9 * e.scale) return std::make_pair(omega, tau);
        return std::nullopt;
      }
    }
  } catch (const InadmissibleEquilibrium&) {
  }
  return std::nullopt;
}

std::vector<double> nodes(Interval box, int n, bool positive) {
  std::vector<double> out(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) out[static_cast<std::size_t>(i)] = box.lo + box.width() * i / n;
  if (positive && out.front() <= 0) out.front() = box.hi * 1e-6;
  return out;
}

bool straddles(double a, double b, double c, double d) {
  const double lo = std::min({a, b, c, d});
  const double hi = std::max({a, b, c, d});
  return lo <= 0 && hi >= 0;
}

struct Cell {
  double w0, w1, t0, t1;
};

struct GridScan {
  std::vector<Cell> flagged;
  double min_residual = std::numeric_limits<double>::infinity();
};

GridScan scan(const ModelParams& params, Interval tau_box, Interval omega_box, int n) {
  const auto ws = nodes(omega_box, n, true);
  const auto ts = nodes(tau_box, n, false);
  const std::size_t m = ws.size();
  std::vector<cd> values(m * ts.size());
  GridScan out;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      values[i * m + j] = evaluate(params, ws[j], ts[i]).D;
      out.min_residual = std::min(out.min_residual, std::abs(values[i * m + j]));
    }
  }
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    for (std::size_t j = 0; j + 1 < m; ++j) {
      const cd a = values[i * m + j], b = values[i * m + j + 1], c = values[(i + 1) * m + j],
               d = values[(i + 1) * m + j + 1];
      if (straddles(a.real(), b.real(), c.real(), d.real()) && straddles(a.imag(), b.imag(), c.imag(), d.imag())) {
        out.flagged.push_back({ws[j], ws[j + 1], ts[i], ts[i + 1]});
      }
    }
  }
  return out;
}

std::vector<Cell> split(const Cell& c) {
  const double wm = 0.5 * (c.w0 + c.w1), tm = 0.5 * (c.t0 + c.t1);
  return {{c.w0, wm, c.t0, tm}, {wm, c.w1, c.t0, tm}, {c.w0, wm, tm, c.t1}, {wm, c.w1, tm, c.t1}};
}

// Largest |coefficient| of char_Ed and of its tau-derivative over [t0, t1].
// Each coefficient is affine in e^{-a tau}, so the end values bound it.
struct CoefficientBounds {
  std::vector<double> p, q, dp, dq;
};

CoefficientBounds coefficient_bounds(const ModelParams& params, double t0, double t1) {
  CoefficientBounds b;
  auto take = [](std::vector<double>& into, const std::vector<double>& from) {
    if (into.size() < from.size()) into.resize(from.size(), 0.0);
    for (std::size_t k = 0; k < from.size(); ++k) into[k] = std::max(into[k], std::abs(from[k]));
  };
  for (double t : {t0, t1}) {
    const ModelParams at = params.with_tau(t);
    const QuasiPolynomial qp = char_Ed(at);
    const CoefficientDerivative d = char_Ed_dtau(at);
    take(b.p, qp.p);
    take(b.q, qp.q);
    take(b.dp, d.dp);
    take(b.dq, d.dq);
  }
  return b;
}

// True when D(i omega, tau) cannot vanish on the cell: |D| at the centre
// exceeds the mean-value bound built from the derivative bounds.
bool cell_clear(const ModelParams& params, const Cell& c, double& centre_modulus) {
  const double wc = 0.5 * (c.w0 + c.w1), tc = 0.5 * (c.t0 + c.t1);
  const Evaluated e = evaluate(params, wc, tc);
  centre_modulus = std::abs(e.D);
  const CoefficientBounds b = coefficient_bounds(params, c.t0, c.t1);
  const double W = std::max(std::abs(c.w0), std::abs(c.w1)), T = std::max(c.t0, c.t1);
  auto power_sum = [W](const std::vector<double>& a) {
    double s = 0, wk = 1;
    for (double v : a) {
      s += v * wk;
      wk *= W;
    }
    return s;
  };
  auto slope_sum = [W](const std::vector<double>& a) {
    double s = 0, wk = 1;
    for (std::size_t k = 1; k < a.size(); ++k) {
      s += static_cast<double>(k) * a[k] * wk;
      wk *= W;
    }
    return s;
  };
  const double q_mod = power_sum(b.q);
  const double l_omega = slope_sum(b.p) + slope_sum(b.q) + T * q_mod;
  const double l_tau = power_sum(b.dp) + power_sum(b.dq) + W * q_mod;
  const double reach = l_omega * 0.5 * (c.w1 - c.w0) + l_tau * 0.5 * (c.t1 - c.t0);
  return centre_modulus > reach * (1 + 1e-12) + 64 * std::numeric_limits<double>::epsilon() * e.scale;
}

}  // namespace

RSPair ri_split(const ModelParams& params, double omega, double tau) {
  const cd D = eval(char_Ed(params.with_tau(tau)), cd(0.0, omega));
  return {D.real(), D.imag()};
}

std::optional<HopfPoint> find_hopf(const ModelParams& params, Interval tau_box, Interval omega_box) {
  params.validate();
  const auto limit = ed_tau_limit(params);
  if (!limit) return std::nullopt;
  tau_box.lo = std::max(tau_box.lo, 0.0);
  tau_box.hi = std::min(tau_box.hi, *limit - 1e-9 * std::max(1.0, *limit));
  if (!(tau_box.lo < tau_box.hi) || !(omega_box.lo < omega_box.hi) || !(omega_box.hi > 0)) return std::nullopt;

  const double tol = 1e-9;
  std::vector<std::pair<double, double>> solutions;
  for (int level = 0; level <= kMaxRefine; ++level) {
    const GridScan grid = scan(params, tau_box, omega_box, kBaseGrid << level);
    int failures = 0;
    for (const Cell& c : grid.flagged) {
      auto sol = newton2d(params, 0.5 * (c.w0 + c.w1), 0.5 * (c.t0 + c.t1));
      if (!sol || sol->first < omega_box.lo - tol || sol->first > omega_box.hi + tol ||
          sol->second < tau_box.lo - tol || sol->second > tau_box.hi + tol) {
        ++failures;
        continue;
      }
      const bool known = std::any_of(solutions.begin(), solutions.end(), [&](const auto& s) {
        return std::hypot(s.first - sol->first, s.second - sol->second) < 1e-7;
      });
      if (!known) solutions.push_back(*sol);
    }
    if (grid.flagged.empty() || failures == 0) break;
  }
  if (solutions.empty()) return std::nullopt;
  // Smallest R_h above R1 is the largest tau; ties broken by smaller omega.
  const auto best = std::max_element(solutions.begin(), solutions.end(), [](const auto& l, const auto& r) {
    if (l.second != r.second) return l.second < r.second;
    return l.first > r.first;
  });
  return make_point(params, best->first, best->second);
}

double transversality(const ModelParams& params, const HopfPoint& hp) {
  const ModelParams at = params.with_tau(hp.tau_h);
  const QuasiPolynomial qp = char_Ed(at);
  const cd xi(0.0, hp.omega_h);
  const cd dxi = eval_dxi(qp, xi);
  if (std::abs(dxi) < 1e-10) throw Degenerate("transversality: dD/dxi vanishes at the crossing");
  return std::real(-dD_dtau(qp, char_Ed_dtau(at), xi) / dxi);
}

double crossing_lower_bound(const ModelParams& params, double omega, double tau) {
  const QuasiPolynomial qp = char_Ed(params.with_tau(tau));
  const double A4 = qp.p[4], A2 = qp.p[2], A0 = qp.p[0];
  const double B3 = -qp.q[3], B2 = -qp.q[2], B1 = -qp.q[1];
  const double w2 = omega * omega;
  const double tail = B3 * w2 - B1;
  return A4 * w2 * w2 - A2 * w2 + A0 - omega * std::sqrt(B2 * B2 * w2 + tail * tail);
}

NoCrossingCertificate no_crossing_certificate(const ModelParams& params, Interval tau_range, double omega_cap) {
  params.validate();
  const auto limit = ed_tau_limit(params);
  if (!limit) throw InadmissibleEquilibrium("no_crossing_certificate: E_d does not exist");
  Interval range{std::max(0.0, tau_range.lo + pull_in(tau_range.lo)),
                 std::min(tau_range.hi - pull_in(tau_range.hi), *limit - 1e-9 * std::max(1.0, *limit))};
  if (!(range.lo < range.hi)) throw InadmissibleEquilibrium("no_crossing_certificate: empty E_d delay range");
  if (!(omega_cap > 0)) throw UnsupportedShape("no_crossing_certificate: omega_cap must be positive");

  NoCrossingCertificate cert;
  NoCrossingEvidence& ev = cert.evidence;
  ev.tau_scanned = range;

  // (i) Large frequencies. Past omega_tail the quartic term dominates every
  // other term of the bound; in between the bound is sampled at both ends of
  // the range, which suffices because it is affine in e^{-a tau}.
  ev.omega_tail = std::max(omega_cap, omega_tail(params, range));
  ev.lower_bound_min = std::numeric_limits<double>::infinity();
  constexpr int kBoundSamples = 8192;
  for (int i = 0; i <= kBoundSamples; ++i) {
    const double w = omega_cap + (ev.omega_tail - omega_cap) * i / kBoundSamples;
    for (double t : {range.lo, range.hi}) {
      ev.lower_bound_min = std::min(ev.lower_bound_min, crossing_lower_bound(params, w, t));
    }
  }
  ev.lower_bound_ok = ev.lower_bound_min > 0;
  if (!ev.lower_bound_ok) return cert;

  // (ii) Subdivision of [0, omega_cap] x range. A cell is cleared by the
  // derivative bound; otherwise it is split, and Newton is tried from its
  // centre. Only a zero found inside the range counts as a crossing.
  constexpr int kMaxDepth = 60;
  constexpr std::size_t kMaxCells = 4'000'000;
  struct Pending {
    Cell cell;
    int depth;
  };
  std::vector<Pending> work;
  const double dw = omega_cap / kBaseGrid, dt = range.width() / kBaseGrid;
  for (int i = kBaseGrid - 1; i >= 0; --i) {
    for (int j = kBaseGrid - 1; j >= 0; --j) {
      const double t0 = range.lo + dt * i, w0 = dw * j;
      work.push_back({{w0, j + 1 == kBaseGrid ? omega_cap : w0 + dw, t0, i + 1 == kBaseGrid ? range.hi : t0 + dt}, 0});
    }
  }
  ev.grid_min_residual = std::numeric_limits<double>::infinity();
  std::vector<std::pair<double, double>> outside;  // zeros already seen beyond the range
  std::size_t processed = 0;
  while (!work.empty()) {
    const Pending item = work.back();
    work.pop_back();
    if (++processed > kMaxCells) throw Inconclusive("no_crossing_certificate: cell budget exhausted", item.depth);
    double centre = 0;
    const bool clear = cell_clear(params, item.cell, centre);
    if (item.depth == 0) ev.grid_min_residual = std::min(ev.grid_min_residual, centre);
    if (clear) continue;
    if (item.depth == 0) ++ev.flagged_cells;
    ev.refinement_level = std::max(ev.refinement_level, item.depth);
    const Cell& c = item.cell;
    const double wc = 0.5 * (c.w0 + c.w1), tc = 0.5 * (c.t0 + c.t1);
    const bool near_known = std::any_of(outside.begin(), outside.end(), [&](const auto& z) {
      return std::abs(z.first - wc) < 4 * (c.w1 - c.w0) && std::abs(z.second - tc) < 4 * (c.t1 - c.t0);
    });
    if (!near_known) {
      if (auto sol = newton2d(params, wc, tc)) {
        if (sol->second >= range.lo && sol->second <= range.hi && sol->first <= omega_cap) {
          ev.crossing = make_point(params, sol->first, sol->second);
          return cert;
        }
        outside.push_back(*sol);
      }
    }
    if (item.depth == kMaxDepth) {
      throw Inconclusive("no_crossing_certificate: cell neither cleared nor resolved", item.depth);
    }
    for (const Cell& sub : split(c)) work.push_back({sub, item.depth + 1});
  }
  cert.certified = true;
  return cert;
}

double default_hopf_omega_cap(const ModelParams& params, Interval tau_range) {
  if (params.with_tau(0.0) == reference_parameters(0.0)) return 2.1;
  const auto limit = ed_tau_limit(params);
  double best = 0;
  bool any = false;
  if (limit) {
    const double lo = std::max(0.0, tau_range.lo);
    const double hi = std::min(tau_range.hi, *limit - 1e-9 * std::max(1.0, *limit));
    for (int i = 0; i <= 32 && lo <= hi; ++i) {
      const double t = lo + (hi - lo) * i / 32;
      const auto roots = positive_roots(modulus_poly(char_Ed(params.with_tau(t))));
      if (!roots.empty()) {
        any = true;
        best = std::max(best, std::sqrt(roots.back()));
      }
    }
  }
  double cap = any ? 1.0 + best : 10.0;
  // The bound R~ must be positive above the cap for the certificate to use it.
  if (limit) {
    const double lo = std::max(0.0, tau_range.lo);
    const double hi = std::min(tau_range.hi, *limit - 1e-9 * std::max(1.0, *limit));
    if (lo <= hi) {
      const double tail = omega_tail(params, Interval{lo, hi});
      double last_bad = 0;
      constexpr int kSamples = 8192;
      for (int i = 0; i <= kSamples; ++i) {
        const double w = tail * i / kSamples;
        for (double t : {lo, hi}) {
          if (crossing_lower_bound(params, w, t) <= 0) last_bad = std::max(last_bad, w);
        }
      }
      if (last_bad > 0) cap = std::max(cap, 1.05 * last_bad + tail / kSamples);
    }
  }
  return cap;
}

}  // namespace hivdelay
