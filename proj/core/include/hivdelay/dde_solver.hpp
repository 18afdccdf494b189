#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "hivdelay/model.hpp"
#include "hivdelay/trajectory.hpp"

namespace hivdelay {

inline constexpr double kDefaultRelTol = 1e-8;
inline constexpr double kDefaultAbsTol = 1e-10;

struct IntegrateOptions {
  double rel_tol = kDefaultRelTol;
  double abs_tol = kDefaultAbsTol;
  double initial_step = 0;  ///< 0 picks a step from the initial slope
  double max_step = 0;      ///< 0 means unbounded (tau still caps it when tau > 0)
  std::size_t max_steps = 100'000'000;
};

/// Method-of-steps integration with the Bogacki-Shampine 3(2) pair and cubic
/// Hermite dense output. Steps never exceed tau when tau > 0, so every delayed
/// lookup lands on already accepted output or on the history. With tau = 0 the
/// delayed state is the current stage value and the scheme is a plain ODE
/// integrator.
///
/// Throws StepSizeUnderflow when the error test cannot be met.
Trajectory integrate(const ModelParams& params, const HistorySpec& history, double t_end,
                     const IntegrateOptions& options = {});

Trajectory integrate(const ModelParams& params, const HistorySpec& history, double t_end, double rel_tol,
                     double abs_tol);

/// `base` with v scaled by 1.01 (and w as well when `perturb_w`); components
/// that are exactly zero are set to 0.01 instead.
StateVector perturbed(const StateVector& base, bool perturb_w);

/// Default initial history for regime studies: the relevant equilibrium
/// perturbed in v, and in w as well when that equilibrium is E_d.
HistorySpec default_history(const ModelParams& params);

struct LongRunVerdict {
  enum class Kind { ConvergedTo, Oscillatory, Undetermined };

  Kind kind = Kind::Undetermined;
  /// Set for ConvergedTo.
  std::optional<Equilibrium> target;
  /// Max relative deviation from the closest candidate over the trailing window.
  double residual = 0;
  /// Peak-to-peak amplitude per component over the trailing window.
  StateVector amplitude;
  /// Mean spacing of upward crossings of x(t) minus its window mean; NaN when
  /// fewer than two crossings were seen.
  double period = 0;
  double window_start = 0;
  double window_end = 0;
};

/// Relative deviation of `s` from `e`, componentwise |s_i - e_i| / scale_i with
/// scale_i = max(|e_i|, 1e-3 * max_j |e_j|, tiny), maximised over i.
double relative_deviation(const StateVector& s, const StateVector& e);

/// Classifies the tail of a trajectory. Requires the trajectory to cover at
/// least 2 * window.
LongRunVerdict classify_longrun(const Trajectory& trajectory, std::span<const Equilibrium> candidates,
                                double window, double conv_tol);

}  // namespace hivdelay
