#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <hivdelay/boundedness.hpp>
#include <hivdelay/dde_solver.hpp>
#include <hivdelay/errors.hpp>

using namespace hivdelay;

TEST(Boundedness, DecayRateIsSmallestRate) {
  EXPECT_DOUBLE_EQ(boundedness_decay_rate(reference_parameters()), 1.0 / 180);
  ModelParams p = reference_parameters();
  p.d = 10;
  EXPECT_DOUBLE_EQ(boundedness_decay_rate(p), 0.25);  // a / 2
}

TEST(Boundedness, FunctionalAtConstantHistory) {
  const ModelParams p = reference_parameters(1.0);
  // At a rest state every shifted sample equals the constant.
  const Equilibrium e = equilibrium(p, EquilibriumKind::DiseaseFree);
  const Trajectory traj = integrate(p, HistorySpec::constant(e.point), 5.0);
  const double ck = p.c * p.k;
  EXPECT_NEAR(boundedness_functional(p, traj, 0.5), ck * p.survival() * 180.0, 1e-9);
}

TEST(Boundedness, BoundHoldsOnRandomHistories) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int r = 0; r < 25; ++r) {
    StateVector s;
    for (double& c : s) c = u(rng) < 0.2 ? 0.0 : 250 * u(rng);
    const ModelParams p = reference_parameters(4 * u(rng));
    const Trajectory traj = integrate(p, HistorySpec::constant(s), 81.0 + p.tau);
    std::vector<double> times;
    for (int k = 1; k <= 40; ++k) times.push_back(2.0 * k);
    const BoundednessReport rep = boundedness_certificate(p, traj, times);
    EXPECT_TRUE(rep.holds()) << "tau=" << p.tau;
    EXPECT_EQ(rep.samples.size(), times.size());
    for (const auto& smp : rep.samples) EXPECT_GE(smp.slack, 0.0);
  }
}

TEST(Boundedness, DetectsViolatedBoundWhenRateIsWrong) {
  // A trajectory checked against a much smaller production rate.
  const ModelParams p = reference_parameters(0.5);
  ModelParams other = p;
  other.lambda = 1e-6;
  const Trajectory traj = integrate(p, HistorySpec::constant(StateVector(0, 0, 0, 0, 0)), 30.0);
  std::vector<double> times{5.0, 10.0};
  EXPECT_FALSE(boundedness_certificate(other, traj, times).holds());
}

TEST(Boundedness, NeedsCoverage) {
  const ModelParams p = reference_parameters(2.0);
  const Trajectory traj = integrate(p, default_history(p), 10.0);
  std::vector<double> times{9.0};
  EXPECT_THROW(boundedness_certificate(p, traj, times), TrajectoryTooShort);
}
