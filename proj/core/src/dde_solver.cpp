#include "hivdelay/dde_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "hivdelay/errors.hpp"

namespace hivdelay {

namespace {

// Bogacki-Shampine 3(2) tableau.
constexpr double kC2 = 0.5, kC3 = 0.75;
constexpr double kB1 = 2.0 / 9.0, kB2 = 1.0 / 3.0, kB3 = 4.0 / 9.0;
constexpr double kE1 = -5.0 / 72.0, kE2 = 1.0 / 12.0, kE3 = 1.0 / 9.0, kE4 = -1.0 / 8.0;

constexpr double kSafety = 0.8;
constexpr double kMaxGrowth = 5.0;
constexpr double kMaxShrink = 0.1;

// Looks up the delayed state on the mesh built so far. Delayed times move
// forward with the integration, so the cursor only ever advances.
class DelayedLookup {
 public:
  DelayedLookup(const std::vector<MeshPoint>& mesh, const StateVector& history) : mesh_(mesh), history_(history) {}

  StateVector at(double t) {
    if (t <= mesh_.front().t) return t == mesh_.front().t ? mesh_.front().state : history_;
    while (cursor_ + 1 < mesh_.size() && mesh_[cursor_ + 1].t < t) ++cursor_;
    while (cursor_ > 0 && mesh_[cursor_].t >= t) --cursor_;
    if (cursor_ + 1 >= mesh_.size()) return mesh_.back().state;
    const MeshPoint& right = mesh_[cursor_ + 1];
    if (t == right.t) return right.state;
    return hermite(mesh_[cursor_], right, t);
  }

 private:
  const std::vector<MeshPoint>& mesh_;
  StateVector history_;
  std::size_t cursor_ = 0;
};

double error_norm(const StateVector& err, const StateVector& y0, const StateVector& y1, double rtol, double atol) {
  double norm = 0;
  for (std::size_t i = 0; i < StateVector::kSize; ++i) {
    const double scale = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    norm = std::max(norm, std::abs(err[i]) / scale);
  }
  return norm;
}

}  // namespace

Trajectory integrate(const ModelParams& params, const HistorySpec& history, double t_end,
                     const IntegrateOptions& opt) {
  params.validate();
  if (!(t_end > 0.0)) throw Error("integrate: t_end must be > 0");
  if (!(opt.rel_tol > 0 && opt.rel_tol < 1 && opt.abs_tol > 0 && opt.abs_tol < 1)) {
    throw Error("integrate: tolerances must lie in (0, 1)");
  }
  for (double c : history.value) {
    if (!(c >= 0.0)) throw Error("integrate: history must be componentwise non-negative");
  }

  const double tau = params.tau;
  std::vector<MeshPoint> mesh;
  mesh.reserve(4096);

  DelayedLookup delayed(mesh, history.value);
  auto field = [&](double t, const StateVector& y) {
    return rhs(params, y, tau > 0 ? delayed.at(t - tau) : y);
  };

  mesh.push_back({0.0, history.value, {}});
  mesh.back().slope = field(0.0, history.value);

  double max_step = t_end;
  if (opt.max_step > 0) max_step = std::min(max_step, opt.max_step);
  if (tau > 0) max_step = std::min(max_step, tau);

  double h = opt.initial_step;
  if (!(h > 0)) {
    const double ynorm = std::max(history.value.max_abs(), 1e-3);
    const double fnorm = std::max(mesh.back().slope.max_abs(), 1e-12);
    h = 0.01 * ynorm / fnorm * std::cbrt(opt.rel_tol / 1e-3);
  }
  h = std::clamp(h, 1e-10, max_step);

  // The slope jump at t = 0 reappears, one order smoother, at each multiple
  // of tau. Past 3 tau the solution is smooth enough for a third-order pair.
  std::vector<double> stops;
  if (tau > 0) {
    for (int k = 1; k <= 3 && k * tau < t_end; ++k) stops.push_back(k * tau);
  }
  stops.push_back(t_end);
  std::size_t next_stop = 0;

  std::size_t steps = 0;
  while (mesh.back().t < t_end) {
    const MeshPoint& cur = mesh.back();
    const double t = cur.t;
    const double h_min = 16 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
    while (stops[next_stop] <= t) ++next_stop;
    const double stop = stops[next_stop];
    if (t + h >= stop || (t + 1.1 * h >= stop && stop - t <= max_step)) h = stop - t;

    const StateVector& y = cur.state;
    const StateVector k1 = cur.slope;
    const StateVector k2 = field(t + kC2 * h, y + (kC2 * h) * k1);
    const StateVector k3 = field(t + kC3 * h, y + (kC3 * h) * k2);
    const double t_new = (h == stop - t) ? stop : t + h;
    const StateVector y_new = y + h * (kB1 * k1 + kB2 * k2 + kB3 * k3);
    const StateVector k4 = field(t_new, y_new);
    const StateVector err = h * (kE1 * k1 + kE2 * k2 + kE3 * k3 + kE4 * k4);

    const double norm = error_norm(err, y, y_new, opt.rel_tol, opt.abs_tol);
    if (norm <= 1.0) {
      mesh.push_back({t_new, y_new, k4});
      const double grow = norm == 0.0 ? kMaxGrowth : std::min(kMaxGrowth, kSafety * std::cbrt(1.0 / norm));
      h = std::min(h * grow, max_step);
      if (++steps > opt.max_steps) {
        throw StepSizeUnderflow("integrate: step budget exhausted", t_new);
      }
    } else {
      h *= std::max(kMaxShrink, kSafety * std::cbrt(1.0 / norm));
      if (h < h_min) {
        throw StepSizeUnderflow("integrate: step size underflow at t=" + std::to_string(t), t);
      }
    }
  }
  return Trajectory(params, history, std::move(mesh));
}

Trajectory integrate(const ModelParams& params, const HistorySpec& history, double t_end, double rel_tol,
                     double abs_tol) {
  IntegrateOptions opt;
  opt.rel_tol = rel_tol;
  opt.abs_tol = abs_tol;
  return integrate(params, history, t_end, opt);
}

StateVector perturbed(const StateVector& base, bool perturb_w) {
  StateVector out = base;
  auto bump = [](double value) { return value != 0.0 ? value * 1.01 : 0.01; };
  out[3] = bump(out[3]);
  if (perturb_w) out[4] = bump(out[4]);
  return out;
}

HistorySpec default_history(const ModelParams& params) {
  const Equilibrium eq = relevant_equilibrium(params);
  StateVector start = perturbed(eq.point, eq.kind == EquilibriumKind::DoubleInfection);
  for (auto& c : start) c = std::max(c, 0.0);
  return HistorySpec::constant(start);
}

}  // namespace hivdelay
