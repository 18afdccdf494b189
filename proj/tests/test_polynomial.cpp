#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include <hivdelay/characteristic.hpp>
#include <hivdelay/errors.hpp>
#include <hivdelay/model.hpp>
#include <hivdelay/polynomial.hpp>
#include <hivdelay/quasi_polynomial.hpp>

#include "oracles/frozen.hpp"
#include "oracles/model_oracle.hpp"
#include "oracles/spectral_oracle.hpp"

using namespace hivdelay;

namespace {

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }

}  // namespace

TEST(Polynomial, HornerAndDerivative) {
  const std::vector<double> c{1, -2, 0, 3};  // 3x^3 - 2x + 1
  EXPECT_EQ(horner(c, 2.0), 21.0);
  EXPECT_EQ(horner(c, std::complex<double>(0, 1)), std::complex<double>(1, -5));
  EXPECT_EQ(horner_derivative(c, std::complex<double>(2, 0)), std::complex<double>(34, 0));
  EXPECT_EQ(poly_multiply(std::vector<double>{1, 1}, std::vector<double>{-1, 1}), (std::vector<double>{-1, 0, 1}));
}

TEST(Polynomial, RootsOfKnownProducts) {
  const std::vector<double> c{-6, 11, -6, 1};  // (x-1)(x-2)(x-3)
  auto roots = polynomial_roots(c);
  ASSERT_EQ(roots.size(), 3u);
  std::vector<double> re;
  for (auto r : roots) {
    EXPECT_NEAR(r.imag(), 0.0, 1e-12);
    re.push_back(r.real());
  }
  std::sort(re.begin(), re.end());
  EXPECT_NEAR(re[0], 1, 1e-12);
  EXPECT_NEAR(re[2], 3, 1e-12);
  EXPECT_EQ(positive_real_roots(std::vector<double>{1, 0, 1}).size(), 0u);
  EXPECT_EQ(positive_real_roots(std::vector<double>{-4, 0, 1}), (std::vector<double>{2.0}));
  EXPECT_TRUE(polynomial_roots(std::vector<double>{3}).empty());
  EXPECT_EQ(polynomial_roots(std::vector<double>{2, 1, 0, 0}).size(), 1u);
}

TEST(RouthHurwitz, CubicExamples) {
  EXPECT_TRUE(routh_hurwitz_cubic(1, 6, 11, 6));
  EXPECT_FALSE(routh_hurwitz_cubic(1, 1, 1, 2));
  EXPECT_THROW(routh_hurwitz_cubic(2, 6, 11, 6), UnsupportedShape);
}

TEST(RouthHurwitz, SingleInfectionCubicAtZeroDelay) {
  // tau = 0: D2 collapses to a cubic that passes Routh-Hurwitz whenever R0 > 1.
  std::mt19937_64 rng(21);
  for (int i = 0; i < 200; ++i) {
    const ModelParams p = oracle::draw_params(reference_parameters(), rng);
    if (!(reproduction_numbers(p).R0 > 1)) continue;
    const auto c = collapsed_polynomial(char_Es(p).d2);
    EXPECT_TRUE(routh_hurwitz_cubic(c[3], c[2], c[1], c[0]));
  }
}

TEST(Modulus, AgreesWithGenericConstructionForAllShapes) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> tau(0.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const ModelParams p = oracle::draw_params(reference_parameters(), rng).with_tau(tau(rng));
    const ThresholdSet th = reproduction_numbers(p);
    std::vector<QuasiPolynomial> shapes{char_E0(p)};
    if (th.R0 > 1) shapes.push_back(char_Es(p).d2);
    if (th.R0 > th.R1) shapes.push_back(char_Ed(p));
    for (const auto& qp : shapes) {
      const auto mp = modulus_poly(qp);
      const auto ref = oracle::modulus_polynomial(qp.p, qp.q);
      ASSERT_EQ(mp.coeffs.size(), ref.size());
      double scale = 0;
      for (double c : ref) scale = std::max(scale, std::abs(c));
      for (std::size_t k = 0; k < ref.size(); ++k) EXPECT_NEAR(mp.coeffs[k], ref[k], 1e-11 * scale);
    }
  }
}

TEST(Modulus, KindsAndUnsupportedShapes) {
  const ModelParams p = reference_parameters(0.5);
  EXPECT_EQ(modulus_poly(char_E0(p)).kind, ModulusKind::H0);
  EXPECT_EQ(modulus_poly(char_Es(p).d2).kind, ModulusKind::Hs);
  EXPECT_EQ(modulus_poly(char_Ed(p)).kind, ModulusKind::H);
  QuasiPolynomial quartic{{1, 2, 3, 4, 1}, {1}, 1.0};
  EXPECT_THROW(modulus_poly(quartic), UnsupportedShape);
  QuasiPolynomial not_monic{{1, 2, 3}, {1}, 1.0};
  EXPECT_THROW(modulus_poly(not_monic), UnsupportedShape);
  QuasiPolynomial q_too_big{{1, 2, 1}, {1, 1, 1}, 1.0};
  EXPECT_THROW(modulus_poly(q_too_big), UnsupportedShape);
}

TEST(Modulus, SingleInfectionIdentitiesOnThousandDraws) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> tau(0.0, 4.0);
  int used = 0;
  while (used < 1000) {
    const ModelParams m = oracle::draw_params(reference_parameters(), rng).with_tau(tau(rng));
    const double R0 = reproduction_numbers(m).R0;
    if (!(R0 > 1)) continue;
    ++used;
    const ModulusPolynomial hs = modulus_poly(char_Es(m).d2);
    EXPECT_TRUE(close_rel(hs.h(1), m.a * m.a + m.p * m.p + m.d * m.d * R0 * R0, 1e-10));
    EXPECT_TRUE(close_rel(hs.h(2), m.d * m.d * (m.a * m.a + m.p * m.p) * R0 * R0, 1e-10));
    EXPECT_TRUE(close_rel(hs.h(3), m.a * m.a * m.p * m.p * m.d * m.d * (R0 * R0 - 1), 1e-10));
    EXPECT_TRUE(positive_roots(hs).empty());
  }
}

TEST(Modulus, SingleInfectionConstantVanishesAtROneThreshold) {
  const ModelParams p = reference_parameters(frozen::kTau1);
  const ModulusPolynomial hs = modulus_poly(char_Es(p.with_tau(frozen::kTau1 - 1e-12)).d2);
  EXPECT_NEAR(hs.h(3), 0.0, 1e-12);
}

TEST(Modulus, HasCrossingFrequencyAtHopfDelay) {
  const auto roots = positive_roots(modulus_poly(char_Ed(reference_parameters(frozen::kTauH))));
  ASSERT_EQ(roots.size(), 2u);
  EXPECT_NEAR(roots[0], frozen::kOmegaH * frozen::kOmegaH, 1e-10);
  EXPECT_NEAR(roots[0], frozen::kHRootsAtTauH[0], 1e-5);
  EXPECT_NEAR(roots[1], frozen::kHRootsAtTauH[1], 1e-4);
}

TEST(Hurwitz, DeltaOneClosedFormOnThousandDraws) {
  std::mt19937_64 rng(123);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int used = 0;
  while (used < 1000) {
    const ModelParams base = oracle::draw_params(reference_parameters(), rng);
    const auto tau2 = threshold_delay(base, reproduction_numbers(base).R1);
    if (!tau2 || *tau2 <= 0) continue;
    const ModelParams m = base.with_tau(u(rng) * *tau2 * 0.999);
    const ThresholdSet th = reproduction_numbers(m);
    ++used;
    const HurwitzReport h = hurwitz_quintic(modulus_poly(char_Ed(m)));
    const double closed = th.R1 * th.R1 * m.d * m.d + m.a * m.a * th.R0 * th.R0 / (th.R1 * th.R1) + m.p * m.p +
                          (m.b + m.q) * (m.b + m.q);
    EXPECT_TRUE(close_rel(h.delta[0], closed, 1e-10));
    EXPECT_EQ(h.delta[4] > 0, h.delta[3] > 0);
  }
}

TEST(Hurwitz, DeterminantsMatchDefinitionAndRejectOtherShapes) {
  // (s+1)(s+2)(s+3)(s+4)(s+5), ascending.
  const ModulusPolynomial mp{{120, 274, 225, 85, 15, 1}, ModulusKind::H};
  const HurwitzReport r = hurwitz_quintic(mp);
  EXPECT_TRUE(r.all_positive);
  EXPECT_EQ(r.delta[0], 15.0);
  EXPECT_EQ(r.delta[1], 15.0 * 85 - 225);
  ModulusPolynomial unstable{{-1, 1, 1, 1, 1, 1}, ModulusKind::H};
  EXPECT_FALSE(hurwitz_quintic(unstable).all_positive);
  EXPECT_THROW(hurwitz_quintic(modulus_poly(char_E0(reference_parameters()))), UnsupportedShape);
}

TEST(Hurwitz, AllPositiveNearTau2) {
  // At R0 = R1 every determinant is positive; by continuity just below tau2.
  const HurwitzReport h = hurwitz_quintic(modulus_poly(char_Ed(reference_parameters(frozen::kTau2 - 1e-6))));
  for (int k = 0; k < 4; ++k) EXPECT_GT(h.delta[k], 0.0) << k;
  EXPECT_GE(h.delta[4], 0.0);
  EXPECT_TRUE(hurwitz_quintic(modulus_poly(char_Ed(reference_parameters(1.55)))).all_positive);
}

TEST(Hurwitz, TestIsInconclusiveOnPartOfTheStableBranch) {
  // E_d is stable at these delays (no right half-plane root), yet H has
  // roots with positive real part, so the determinants are not all positive.
  for (double tau : {1.0, 1.2, 1.45}) {
    const HurwitzReport h = hurwitz_quintic(modulus_poly(char_Ed(reference_parameters(tau))));
    EXPECT_FALSE(h.all_positive) << tau;
    EXPECT_GT(h.delta[0], 0.0);
    EXPECT_GT(h.delta[1], 0.0);
  }
}
