#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <hivdelay/errors.hpp>
#include <hivdelay/model.hpp>

#include "oracles/frozen.hpp"
#include "oracles/model_oracle.hpp"

using namespace hivdelay;

namespace {

oracle::Vec5 arr(const StateVector& s) { return {s[0], s[1], s[2], s[3], s[4]}; }

}  // namespace

TEST(Model, RhsMatchesHandWrittenField) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 50.0);
  for (int i = 0; i < 100; ++i) {
    const ModelParams p = oracle::draw_params(reference_parameters(0.7), rng);
    const StateVector s(u(rng), u(rng), u(rng), u(rng), u(rng));
    const StateVector lag(u(rng), u(rng), u(rng), u(rng), u(rng));
    const StateVector f = rhs(p, s, lag);
    const auto g = oracle::field(p, arr(s), arr(lag));
    for (int k = 0; k < 5; ++k) EXPECT_NEAR(f[k], g[k], 1e-12 * (1 + std::abs(g[k])));
  }
}

TEST(Model, WorkedExampleThresholds) {
  const ThresholdSet th = reproduction_numbers(reference_parameters(0));
  EXPECT_NEAR(th.R0, frozen::kR0AtZero, 1e-12);
  EXPECT_NEAR(th.R1, frozen::kR1, 1e-12);
  const auto tau1 = threshold_delay(reference_parameters(), 1.0);
  const auto tau2 = threshold_delay(reference_parameters(), th.R1);
  ASSERT_TRUE(tau1 && tau2);
  EXPECT_NEAR(*tau1, frozen::kTau1Quoted, 1e-8);
  EXPECT_NEAR(*tau2, frozen::kTau2Quoted, 1e-8);
}

TEST(Model, RdVanishesAtOneExactlyAtTau2) {
  const ModelParams p = reference_parameters(frozen::kTau2);
  EXPECT_NEAR(reproduction_numbers(p).Rd, 1.0, 1e-12);
}

TEST(Model, ThresholdDelayRoundTripsAndRejectsUnreachable) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> target(0.2, 60.0);
  int hits = 0;
  for (int i = 0; i < 500; ++i) {
    const ModelParams p = oracle::draw_params(reference_parameters(), rng);
    const double t = target(rng);
    const auto tau = threshold_delay(p, t);
    const double r0 = reproduction_numbers(p).R0;
    if (t > r0) {
      EXPECT_FALSE(tau.has_value());
      continue;
    }
    ASSERT_TRUE(tau.has_value());
    EXPECT_GE(*tau, 0.0);
    EXPECT_LE(std::abs(reproduction_numbers(p.with_tau(*tau)).R0 - t), 1e-10 * std::max(1.0, t));
    ++hits;
  }
  EXPECT_GT(hits, 100);
}

TEST(Model, EquilibriaMatchNewtonOracle) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> tau(0.0, 3.0);
  for (int i = 0; i < 300; ++i) {
    const ModelParams p = oracle::draw_params(reference_parameters(), rng).with_tau(tau(rng));
    for (const auto& e : admissible_equilibria(p)) {
      oracle::Vec5 start = arr(e.point);
      for (double& c : start) c *= 1.05;
      if (e.kind == EquilibriumKind::DiseaseFree) start = {start[0], 0, 0, 0, 0};
      if (e.kind == EquilibriumKind::SingleInfection) start[2] = start[4] = 0;
      const auto solved = oracle::newton_steady_state(p, start);
      for (int k = 0; k < 5; ++k) {
        EXPECT_NEAR(e.point[k], solved[k], 1e-8 * std::max(1.0, std::abs(solved[k])))
            << label(e.kind) << " component " << k;
      }
    }
  }
}

TEST(Model, DiseaseFreeEquilibrium) {
  const Equilibrium e = equilibrium(reference_parameters(), EquilibriumKind::DiseaseFree);
  EXPECT_TRUE(e.admissible);
  EXPECT_EQ(e.point, StateVector(180.0, 0, 0, 0, 0));
}

TEST(Model, AdmissibilityFollowsThresholds) {
  const ModelParams p = reference_parameters();
  EXPECT_EQ(admissible_equilibria(p).size(), 3u);
  EXPECT_EQ(admissible_equilibria(p.with_tau(1.6)).size(), 2u);
  EXPECT_EQ(admissible_equilibria(p.with_tau(8.0)).size(), 1u);
  // Boundaries count as admissible.
  EXPECT_TRUE(equilibrium(p.with_tau(frozen::kTau2), EquilibriumKind::DoubleInfection).admissible);
  const auto es = equilibrium(p.with_tau(frozen::kTau2), EquilibriumKind::SingleInfection);
  const auto ed = equilibrium(p.with_tau(frozen::kTau2), EquilibriumKind::DoubleInfection);
  for (int k = 0; k < 5; ++k) EXPECT_NEAR(es.point[k], ed.point[k], 1e-7 * (1 + std::abs(es.point[k])));
}

TEST(Model, RelevantEquilibriumByRegime) {
  const ModelParams p = reference_parameters();
  EXPECT_EQ(relevant_equilibrium(p.with_tau(1.0)).kind, EquilibriumKind::DoubleInfection);
  EXPECT_EQ(relevant_equilibrium(p.with_tau(1.6)).kind, EquilibriumKind::SingleInfection);
  EXPECT_EQ(relevant_equilibrium(p.with_tau(8.0)).kind, EquilibriumKind::DiseaseFree);
}

TEST(Model, LabelsAndNames) {
  EXPECT_EQ(label(EquilibriumKind::DiseaseFree), "E0");
  EXPECT_EQ(label(EquilibriumKind::SingleInfection), "E_s");
  EXPECT_EQ(label(EquilibriumKind::DoubleInfection), "E_d");
  EXPECT_FALSE(to_string(EquilibriumKind::DoubleInfection).empty());
}
