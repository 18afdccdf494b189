#include "hivdelay/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "hivdelay/errors.hpp"
#include "hivdelay/model.hpp"
#include "hivdelay/quadrature.hpp"

namespace hivdelay {
namespace {

// Pointwise part of a functional and the integrand of its memory term.
struct Functional {
  std::function<double(const StateVector&)> pointwise;
  std::function<double(const StateVector&)> integrand;
  double memory_weight = 0;
};

double integral(const Trajectory& traj, const std::function<double(const StateVector&)>& g, double lo, double hi) {
  if (hi <= lo) return 0.0;
  auto f = [&](double s) { return g(traj.sample(s)); };
  return integrate_adaptive(f, lo, hi, kMemoryQuadratureTol, 2000).value;
}

double centred_rate(const Trajectory& traj, const Functional& fn, double t, double h) {
  const double tau = traj.tau();
  double diff = fn.pointwise(traj.sample(t + h)) - fn.pointwise(traj.sample(t - h));
  if (tau > 0) {
    // int_{t-tau+h}^{t+h} - int_{t-tau-h}^{t-h}, written without cancellation.
    const double moved = integral(traj, fn.integrand, t - h, t + h) - integral(traj, fn.integrand, t - tau - h, t - tau + h);
    diff += fn.memory_weight * moved;
  }
  return diff / (2 * h);
}

LyapunovSample evaluate(const Trajectory& traj, const Functional& fn, double t) {
  const double h = kLyapunovStep;
  if (t - traj.tau() - h < traj.earliest() || t + h > traj.end()) {
    throw InsufficientHistory("Lyapunov functional needs the trajectory on [t - tau - h, t + h]");
  }
  LyapunovSample s;
  s.t = t;
  s.value = fn.pointwise(traj.sample(t)) + fn.memory_weight * integral(traj, fn.integrand, t - traj.tau(), t);
  s.rate = centred_rate(traj, fn, t, h);
  const double half = centred_rate(traj, fn, t, h / 2);
  s.rate_accepted = std::abs(s.rate - half) <= 1e-6 * std::max(1.0, std::abs(s.value));
  return s;
}

void require_positive(double value, const char* what) {
  if (!(value >= kPositivityFloor)) {
    throw NonpositiveState(std::string("V_s needs a positive ") + what + " component");
  }
}

}  // namespace

LyapunovSample v0_eval(const ModelParams& m, const Trajectory& traj, double t) {
  const double e = m.survival();
  const double x0 = m.lambda / m.d;
  Functional fn;
  fn.pointwise = [&](const StateVector& s) {
    const double dx = s.x() - x0;
    return 0.5 * e * dx * dx + x0 * (s.y() + s.z()) + (m.a * x0 / m.k) * s.v() + (m.b * x0 / m.c) * s.w();
  };
  fn.integrand = [](const StateVector& s) { return s.x() * s.v(); };
  fn.memory_weight = x0 * m.beta * e;
  return evaluate(traj, fn, t);
}

LyapunovSample vs_eval(const ModelParams& m, const Trajectory& traj, double t) {
  const Equilibrium es = equilibrium(m, EquilibriumKind::SingleInfection);
  if (!(reproduction_numbers(m).R0 > 1.0)) throw InadmissibleEquilibrium("vs_eval: E_s requires R0 > 1");
  const double xs = es.point.x(), ys = es.point.y(), vs = es.point.v();
  const double e = m.survival();
  Functional fn;
  fn.pointwise = [&](const StateVector& s) {
    require_positive(s.x(), "x");
    require_positive(s.y(), "y");
    require_positive(s.v(), "v");
    return e * (s.x() - xs * std::log(s.x())) + (s.y() - ys * std::log(s.y())) + s.z() +
           (m.a / m.k) * (s.v() - vs * std::log(s.v())) + (m.b / m.c) * s.w();
  };
  fn.integrand = [&](const StateVector& s) {
    require_positive(s.x(), "x");
    require_positive(s.v(), "v");
    const double r = s.x() * s.v() / (xs * vs);
    return r - std::log(r);
  };
  fn.memory_weight = m.beta * xs * vs * e;
  return evaluate(traj, fn, t);
}

double v0_rate_closed_form(const ModelParams& m, const StateVector& s) {
  const double e = m.survival();
  const double x0 = m.lambda / m.d;
  const double R0 = reproduction_numbers(m).R0;
  const double dx = s.x() - x0;
  return -e * dx * dx * (m.d + m.beta * s.v()) - (m.a * m.p * x0 / m.k) * (1.0 - R0) * s.v() -
         (m.b * m.q * x0 / m.c) * s.w();
}

double w_term(const ModelParams& m, const StateVector& cur, const StateVector& del) {
  const StateVector es = equilibrium(m, EquilibriumKind::SingleInfection).point;
  const double xs = es.x(), ys = es.y(), vs = es.v();
  const double delayed = del.x() * del.v();
  return 3.0 - xs / cur.x() - cur.y() * vs / (ys * cur.v()) - ys * delayed / (cur.y() * xs * vs) +
         std::log(delayed / (cur.x() * cur.v()));
}

double vs_rate_closed_form(const ModelParams& m, const StateVector& cur, const StateVector& del) {
  const StateVector es = equilibrium(m, EquilibriumKind::SingleInfection).point;
  const ThresholdSet th = reproduction_numbers(m);
  const double e = m.survival();
  const double xs = es.x(), vs = es.v();
  return m.d * xs * e * (2.0 - xs / cur.x() - cur.x() / xs) +
         (m.alpha * m.d * m.p / (m.beta * m.k)) * (th.R0 - th.R1) * cur.w() + m.beta * xs * vs * e * w_term(m, cur, del);
}

double log_mean_inequality(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || a.size() != b.size()) throw InvalidParameters("log_mean_inequality: need equal, nonempty lists");
  double sum = 0, logs = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!(a[i] > 0) || !(b[i] > 0)) throw InvalidParameters("log_mean_inequality: entries must be positive");
    const double r = b[i] / a[i];
    sum += r;
    logs += std::log(r);
  }
  return static_cast<double>(a.size()) - sum + logs;
}

double memory_integral(const Trajectory& traj, double lo, double hi) {
  return integral(traj, [](const StateVector& s) { return s.x() * s.v(); }, lo, hi);
}

}  // namespace hivdelay
