#pragma once

#include <span>
#include <vector>

#include "hivdelay/params.hpp"
#include "hivdelay/state.hpp"

namespace hivdelay {

/// Initial data on [-tau, 0]. Only constant histories are supported.
struct HistorySpec {
  StateVector value;

  static HistorySpec constant(const StateVector& v) { return HistorySpec{v}; }
};

struct MeshPoint {
  double t = 0;
  StateVector state;
  StateVector slope;  ///< right-hand side evaluated at (t, state)
};

/// Dense numerical solution on [0, end()] with the constant history attached
/// for t in [-tau, 0). Between mesh points the solution is the cubic Hermite
/// interpolant of the stored states and slopes. Immutable once built.
class Trajectory {
 public:
  Trajectory(ModelParams params, HistorySpec history, std::vector<MeshPoint> mesh);

  const ModelParams& params() const { return params_; }
  const HistorySpec& history() const { return history_; }
  std::span<const MeshPoint> mesh() const { return mesh_; }

  double tau() const { return params_.tau; }
  double start() const { return mesh_.front().t; }
  double end() const { return mesh_.back().t; }
  /// Earliest time that sample() accepts.
  double earliest() const { return start() - tau(); }

  /// Dense-output evaluation; throws OutOfSpan outside [start - tau, end].
  StateVector sample(double t) const;

  /// n >= 2 equally spaced samples on [t0, t1].
  std::vector<StateVector> sample_uniform(double t0, double t1, std::size_t n) const;

 private:
  ModelParams params_;
  HistorySpec history_;
  std::vector<MeshPoint> mesh_;
};

StateVector sample(const Trajectory& trajectory, double t);

/// Cubic Hermite interpolation on one step.
StateVector hermite(const MeshPoint& left, const MeshPoint& right, double t);

}  // namespace hivdelay
