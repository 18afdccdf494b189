#pragma once

#include <span>
#include <vector>

#include "hivdelay/params.hpp"
#include "hivdelay/trajectory.hpp"

namespace hivdelay {

/// m = min{d, a/2, b/2, p, q}, the decay rate in the differential bound
/// dB/dt <= c k e^{-a tau} lambda - m B(t).
double boundedness_decay_rate(const ModelParams& params);

/// B(t) = c k e^{-a tau} x(t) + c k y(t+tau) + c k z(t+tau) + (a c / 2) v(t+tau) + (b k / 2) w(t+tau).
double boundedness_functional(const ModelParams& params, const Trajectory& trajectory, double t);

struct BoundednessSample {
  double t = 0;
  double value = 0;  ///< B(t)
  double rate = 0;   ///< centred-difference dB/dt
  double bound = 0;  ///< c k e^{-a tau} lambda - m B(t)
  double slack = 0;  ///< bound + tolerance - rate; negative means violated
  bool holds = false;
};

struct BoundednessReport {
  double m = 0;
  double production = 0;  ///< c k e^{-a tau} lambda
  std::vector<BoundednessSample> samples;

  bool holds() const;
};

inline constexpr double kBoundednessStep = 1e-4;

/// Checks the differential bound at every sample time, with tolerance
/// rel_tol * max(1, |B(t)|, production). Each sample needs the trajectory to
/// cover [t - h, t + tau + h]; TrajectoryTooShort otherwise.
BoundednessReport boundedness_certificate(const ModelParams& params, const Trajectory& trajectory,
                                          std::span<const double> sample_times, double rel_tol = 1e-6);

}  // namespace hivdelay
