#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <hivdelay/characteristic.hpp>
#include <hivdelay/errors.hpp>
#include <hivdelay/hopf.hpp>
#include <hivdelay/model.hpp>
#include <hivdelay/roots.hpp>

#include "oracles/frozen.hpp"
#include "oracles/model_oracle.hpp"
#include "oracles/spectral_oracle.hpp"

using namespace hivdelay;
using cd = std::complex<double>;

namespace {

// Right half-plane census from Newton roots (pairs count twice).
int census(const QuasiPolynomial& qp) {
  const double bound = root_modulus_bound(qp, 0.0);
  int n = 0;
  for (const auto& r : rightmost_roots(qp, RootRegion{-0.5, bound + 0.5, bound + 0.5}, std::max(0.25, bound / 60))) {
    if (r.real() > 0) n += r.imag() > 0 ? 2 : 1;
  }
  return n;
}

}  // namespace

TEST(Roots, WorkedExampleQuinticAtZeroDelay) {
  const QuasiPolynomial qp = char_Ed(reference_parameters(0.0));
  const auto roots = rightmost_roots(qp, RootRegion{-6, 2, 4});
  ASSERT_EQ(roots.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(roots[i].real(), frozen::kRootsQuoted[i][0], 1e-6);
    EXPECT_NEAR(roots[i].imag(), frozen::kRootsQuoted[i][1], 1e-6);
  }
  EXPECT_EQ(count_roots_right_of(qp, 0.0), 2);
  EXPECT_EQ(count_roots_right_of(qp, 0.0, 2.1), 2);
  EXPECT_EQ(count_roots_right_of(qp, -1.0), 3);
  EXPECT_EQ(count_roots_right_of(qp, -4.0), 4);
  EXPECT_EQ(count_roots_right_of(qp, -6.0), 5);
}

TEST(Roots, DiseaseFreeFactorAfterTau1) {
  const QuasiPolynomial qp = char_E0(reference_parameters(8.0));
  EXPECT_EQ(count_roots_right_of(qp, 0.0), 0);
  EXPECT_TRUE(positive_roots(modulus_poly(qp)).empty());
  auto f = [&](double x) { return eval(qp, x).real(); };
  const auto r = oracle::rightmost_real_root(f, -20.0, 5.0);
  ASSERT_TRUE(r.has_value());
  EXPECT_LT(*r, 0.0);
  const auto roots = rightmost_roots(qp, RootRegion{-3, 1, 3});
  ASSERT_FALSE(roots.empty());
  EXPECT_NEAR(roots.front().real(), *r, 1e-9);
}

TEST(Roots, DiseaseFreeRootAtOriginAtTau1) {
  const auto roots = rightmost_roots(char_E0(reference_parameters(frozen::kTau1)), RootRegion{-1, 1, 1});
  ASSERT_FALSE(roots.empty());
  EXPECT_LT(std::abs(roots.front()), 1e-8);
}

TEST(Roots, StableDoubleInfectionAtTauOne) {
  const QuasiPolynomial qp = char_Ed(reference_parameters(1.0));
  EXPECT_EQ(count_roots_right_of(qp, 0.0), 0);
  for (const auto& r : rightmost_roots(qp, RootRegion{-6, 2, 6})) EXPECT_LT(r.real(), 0.0);
}

TEST(Roots, CountAgreesWithNewtonCensusAcrossRegimes) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int by_regime[3] = {0, 0, 0};
  while (by_regime[0] + by_regime[1] + by_regime[2] < 30) {
    const ModelParams base = oracle::draw_params(reference_parameters(), rng);
    const ThresholdSet th = reproduction_numbers(base);
    const auto tau1 = threshold_delay(base, 1.0);
    const auto tau2 = threshold_delay(base, th.R1);
    if (!tau1 || !tau2) continue;
    const int regime = static_cast<int>(u(rng) * 3);
    if (by_regime[regime] >= 10) continue;
    ++by_regime[regime];
    QuasiPolynomial qp;
    if (regime == 0) {
      qp = char_E0(base.with_tau(*tau1 + 0.1 + 3 * u(rng)));
    } else if (regime == 1) {
      qp = char_Es(base.with_tau(*tau2 + (*tau1 - *tau2) * (0.05 + 0.9 * u(rng)))).d2;
    } else {
      qp = char_Ed(base.with_tau(*tau2 * 0.98 * u(rng)));
    }
    EXPECT_EQ(count_roots_right_of(qp, 0.0), census(qp)) << "regime " << regime << " tau " << qp.tau;
  }
}

TEST(Roots, ConjugatesAreDeduplicatedAndSorted) {
  const auto roots = rightmost_roots(char_Ed(reference_parameters(0.5)), RootRegion{-6, 2, 6});
  for (std::size_t i = 0; i < roots.size(); ++i) {
    EXPECT_GE(roots[i].imag(), 0.0);
    if (i > 0) EXPECT_GE(roots[i - 1].real(), roots[i].real());
    for (std::size_t j = 0; j < i; ++j) EXPECT_GT(std::abs(roots[i] - roots[j]), 1e-8);
  }
}

TEST(Roots, ImaginaryRootsMapToModulusRoots) {
  // At the Hopf delay the crossing root sits on the axis; its frequency
  // squared is a positive root of H.
  const QuasiPolynomial qp = char_Ed(reference_parameters(frozen::kTauH));
  const auto roots = rightmost_roots(qp, RootRegion{-1, 1, 2});
  ASSERT_FALSE(roots.empty());
  EXPECT_LT(std::abs(roots.front().real()), 1e-8);
  const auto s = positive_roots(modulus_poly(qp));
  const double w2 = roots.front().imag() * roots.front().imag();
  double best = 1e9;
  for (double v : s) best = std::min(best, std::abs(v - w2));
  EXPECT_LT(best, 1e-6);
  // Conversely a root of H that satisfies the angle equations gives D(i w) = 0.
  EXPECT_LT(std::abs(eval(qp, cd(0, std::sqrt(s.front())))), 1e-8);
}

TEST(Roots, RootOnContourIsReported) {
  // Real roots at sigma + k 1e-6 for every jitter step.
  std::vector<double> p{1.0};
  for (int k = 0; k <= 5; ++k) p = oracle::multiply(p, {-1e-6 * k, 1.0});
  const QuasiPolynomial qp{p, {}, 0.0};
  EXPECT_THROW(count_roots_right_of(qp, 0.0, 1.0), ContourNearRoot);
}

TEST(Roots, DefaultOmegaCap) {
  EXPECT_EQ(default_omega_cap(char_E0(reference_parameters(8.0))), 10.0);
  const double cap = default_omega_cap(char_Ed(reference_parameters(frozen::kTauH)));
  EXPECT_NEAR(cap, 1 + std::sqrt(frozen::kHRootsAtTauH[1]), 1e-4);
  EXPECT_GT(root_modulus_bound(char_Ed(reference_parameters(0.0)), 0.0), 1.0);
}
