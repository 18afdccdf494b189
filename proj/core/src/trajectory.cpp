#include "hivdelay/trajectory.hpp"

#include <algorithm>
#include <string>

#include "hivdelay/errors.hpp"

namespace hivdelay {

Trajectory::Trajectory(ModelParams params, HistorySpec history, std::vector<MeshPoint> mesh)
    : params_(params), history_(history), mesh_(std::move(mesh)) {
  if (mesh_.empty()) throw Error("trajectory needs at least one mesh point");
}

StateVector hermite(const MeshPoint& left, const MeshPoint& right, double t) {
  const double h = right.t - left.t;
  const double s = (t - left.t) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  StateVector out;
  for (std::size_t i = 0; i < StateVector::kSize; ++i) {
    out[i] = h00 * left.state[i] + h * h10 * left.slope[i] + h01 * right.state[i] + h * h11 * right.slope[i];
  }
  return out;
}

StateVector Trajectory::sample(double t) const {
  if (t < start()) {
    if (t < earliest()) throw OutOfSpan("t=" + std::to_string(t) + " precedes the history span");
    return history_.value;
  }
  if (t > end()) throw OutOfSpan("t=" + std::to_string(t) + " is past the end of the trajectory");

  const auto it = std::upper_bound(mesh_.begin(), mesh_.end(), t,
                                   [](double value, const MeshPoint& m) { return value < m.t; });
  const auto right = it == mesh_.end() ? std::prev(it) : it;
  const auto left = std::prev(right == mesh_.begin() ? std::next(right) : right);
  if (t == left->t) return left->state;
  if (t == right->t) return right->state;
  return hermite(*left, *right, t);
}

std::vector<StateVector> Trajectory::sample_uniform(double t0, double t1, std::size_t n) const {
  std::vector<StateVector> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = i + 1 == n ? t1 : t0 + (t1 - t0) * static_cast<double>(i) / static_cast<double>(n - 1);
    out.push_back(sample(t));
  }
  return out;
}

StateVector sample(const Trajectory& trajectory, double t) { return trajectory.sample(t); }

}  // namespace hivdelay
