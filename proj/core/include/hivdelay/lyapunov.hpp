#pragma once

#include <span>

#include "hivdelay/params.hpp"
#include "hivdelay/state.hpp"
#include "hivdelay/trajectory.hpp"

namespace hivdelay {

struct LyapunovSample {
  double t = 0;
  double value = 0;
  /// Centred difference with step kLyapunovStep.
  double rate = 0;
  /// The rate agreed with the half-step estimate to 1e-6 max(1, |value|).
  bool rate_accepted = false;
};

inline constexpr double kLyapunovStep = 1e-4;
inline constexpr double kMemoryQuadratureTol = 1e-10;
inline constexpr double kPositivityFloor = 1e-12;

/// V0 = (e^{-a tau}/2)(x - lambda/d)^2 + (lambda/d)(y + z) + (a lambda/(d k)) v
///      + (b lambda/(c d)) w + (lambda beta/d) e^{-a tau} int_{t-tau}^t x v.
/// Needs the trajectory on [t - tau - h, t + h]; InsufficientHistory otherwise.
LyapunovSample v0_eval(const ModelParams& params, const Trajectory& trajectory, double t);

/// V_s = V1 + beta x_s v_s e^{-a tau} V2 around the single-infection
/// equilibrium. V1 uses x - x_s ln x and friends without additive constants,
/// so values can be negative. Throws InadmissibleEquilibrium when R0 <= 1,
/// InsufficientHistory as v0_eval, and NonpositiveState when x, y or v drops
/// below kPositivityFloor where a logarithm is taken.
LyapunovSample vs_eval(const ModelParams& params, const Trajectory& trajectory, double t);

/// -e^{-a tau}(x - lambda/d)^2 (d + beta v) - (a p lambda/(d k))(1 - R0) v - (b q lambda/(c d)) w.
double v0_rate_closed_form(const ModelParams& params, const StateVector& state);

/// W = 3 - x_s/x - y v_s/(y_s v) - y_s x_tau v_tau/(y x_s v_s) + ln(x_tau v_tau/(x v)),
/// with x_tau, v_tau taken from the delayed state.
double w_term(const ModelParams& params, const StateVector& current, const StateVector& delayed);

/// d x_s e^{-a tau}(2 - x_s/x - x/x_s) + (alpha d p/(beta k))(R0 - R1) w + beta x_s v_s e^{-a tau} W.
double vs_rate_closed_form(const ModelParams& params, const StateVector& current, const StateVector& delayed);

/// n - sum b_i/a_i + ln prod b_i/a_i, which is never positive. Throws
/// InvalidParameters on empty or mismatched input or non-positive entries.
double log_mean_inequality(std::span<const double> a, std::span<const double> b);

/// int_{lo}^{hi} x(s) v(s) ds on the dense output, to kMemoryQuadratureTol.
double memory_integral(const Trajectory& trajectory, double lo, double hi);

}  // namespace hivdelay
