#include "hivdelay/boundedness.hpp"

#include <algorithm>
#include <cmath>

#include "hivdelay/errors.hpp"

namespace hivdelay {

double boundedness_decay_rate(const ModelParams& pr) {
  return std::min({pr.d, pr.a / 2, pr.b / 2, pr.p, pr.q});
}

double boundedness_functional(const ModelParams& pr, const Trajectory& tr, double t) {
  const StateVector now = tr.sample(t);
  const StateVector ahead = tr.sample(t + pr.tau);
  const double ck = pr.c * pr.k;
  return ck * pr.survival() * now.x() + ck * ahead.y() + ck * ahead.z() + 0.5 * pr.a * pr.c * ahead.v() +
         0.5 * pr.b * pr.k * ahead.w();
}

bool BoundednessReport::holds() const {
  return std::all_of(samples.begin(), samples.end(), [](const BoundednessSample& s) { return s.holds; });
}

BoundednessReport boundedness_certificate(const ModelParams& pr, const Trajectory& tr,
                                          std::span<const double> sample_times, double rel_tol) {
  constexpr double h = kBoundednessStep;
  BoundednessReport report;
  report.m = boundedness_decay_rate(pr);
  report.production = pr.c * pr.k * pr.survival() * pr.lambda;

  for (double t : sample_times) {
    if (t - h < tr.earliest() || t + pr.tau + h > tr.end()) {
      throw TrajectoryTooShort("boundedness_certificate: trajectory does not cover [t - h, t + tau + h] at t=" +
                               std::to_string(t));
    }
    BoundednessSample s;
    s.t = t;
    s.value = boundedness_functional(pr, tr, t);
    s.rate = (boundedness_functional(pr, tr, t + h) - boundedness_functional(pr, tr, t - h)) / (2 * h);
    s.bound = report.production - report.m * s.value;
    const double tol = rel_tol * std::max({1.0, std::abs(s.value), report.production});
    s.slack = s.bound + tol - s.rate;
    s.holds = s.slack >= 0;
    report.samples.push_back(s);
  }
  return report;
}

}  // namespace hivdelay
