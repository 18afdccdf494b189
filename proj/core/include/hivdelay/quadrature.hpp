#pragma once

#include <functional>

namespace hivdelay {

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;
  int evaluations = 0;
};

/// Adaptive Gauss-Kronrod (7/15) integration of f on [a, b] to absolute
/// tolerance abs_tol. Bisects the worst interval until the summed error
/// estimate meets the tolerance or max_intervals is reached.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                                    int max_intervals = 200);

}  // namespace hivdelay
