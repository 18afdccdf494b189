#include <algorithm>
#include <cmath>
#include <limits>

#include "hivdelay/dde_solver.hpp"
#include "hivdelay/errors.hpp"

namespace hivdelay {

namespace {

constexpr std::size_t kSamplesPerWindow = 4096;
constexpr double kAmplitudeAgreement = 0.05;

struct WindowStats {
  StateVector mean;
  StateVector amplitude;
  std::vector<StateVector> samples;
};

WindowStats window_stats(const Trajectory& tr, double t0, double t1) {
  WindowStats w;
  w.samples = tr.sample_uniform(t0, t1, kSamplesPerWindow);
  StateVector lo = w.samples.front(), hi = w.samples.front();
  for (const auto& s : w.samples) {
    for (std::size_t i = 0; i < StateVector::kSize; ++i) {
      lo[i] = std::min(lo[i], s[i]);
      hi[i] = std::max(hi[i], s[i]);
      w.mean[i] += s[i];
    }
  }
  w.mean *= 1.0 / static_cast<double>(w.samples.size());
  w.amplitude = hi - lo;
  return w;
}

double component_scale(double value, double reference) {
  return std::max({std::abs(value), 1e-3 * reference, std::numeric_limits<double>::min()});
}

}  // namespace

double relative_deviation(const StateVector& s, const StateVector& e) {
  const double ref = e.max_abs();
  double dev = 0;
  for (std::size_t i = 0; i < StateVector::kSize; ++i) {
    dev = std::max(dev, std::abs(s[i] - e[i]) / component_scale(e[i], ref));
  }
  return dev;
}

LongRunVerdict classify_longrun(const Trajectory& tr, std::span<const Equilibrium> candidates, double window,
                                double conv_tol) {
  if (!(window > 0) || tr.end() - tr.start() < 2 * window) {
    throw TrajectoryTooShort("classify_longrun: trajectory must cover two trailing windows");
  }
  LongRunVerdict verdict;
  verdict.window_end = tr.end();
  verdict.window_start = tr.end() - window;

  const WindowStats last = window_stats(tr, verdict.window_start, verdict.window_end);
  const WindowStats prev = window_stats(tr, verdict.window_start - window, verdict.window_start);
  verdict.amplitude = last.amplitude;

  // Upward crossings of x - mean.
  {
    const double dt = window / static_cast<double>(kSamplesPerWindow - 1);
    std::vector<double> crossings;
    for (std::size_t i = 1; i < last.samples.size(); ++i) {
      const double a = last.samples[i - 1].x() - last.mean.x();
      const double b = last.samples[i].x() - last.mean.x();
      if (a < 0 && b >= 0) crossings.push_back((static_cast<double>(i - 1) + a / (a - b)) * dt);
    }
    verdict.period = crossings.size() >= 2
                         ? (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1)
                         : std::numeric_limits<double>::quiet_NaN();
  }

  double best = std::numeric_limits<double>::infinity();
  const Equilibrium* closest = nullptr;
  for (const auto& eq : candidates) {
    double dev = 0;
    for (const auto& s : last.samples) dev = std::max(dev, relative_deviation(s, eq.point));
    if (dev < best) {
      best = dev;
      closest = &eq;
    }
  }
  verdict.residual = best;
  if (closest != nullptr && best < conv_tol) {
    verdict.kind = LongRunVerdict::Kind::ConvergedTo;
    verdict.target = *closest;
    return verdict;
  }

  const double ref = last.mean.max_abs();
  bool any_oscillating = false;
  bool steady = true;
  for (std::size_t i = 0; i < StateVector::kSize; ++i) {
    const double rel_amp = last.amplitude[i] / component_scale(last.mean[i], ref);
    if (rel_amp <= conv_tol) continue;
    any_oscillating = true;
    const double denom = std::max(last.amplitude[i], prev.amplitude[i]);
    if (std::abs(last.amplitude[i] - prev.amplitude[i]) > kAmplitudeAgreement * denom) steady = false;
  }
  verdict.kind = any_oscillating && steady ? LongRunVerdict::Kind::Oscillatory : LongRunVerdict::Kind::Undetermined;
  return verdict;
}

}  // namespace hivdelay
