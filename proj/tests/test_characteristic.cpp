#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <hivdelay/characteristic.hpp>
#include <hivdelay/errors.hpp>
#include <hivdelay/model.hpp>

#include "oracles/frozen.hpp"
#include "oracles/model_oracle.hpp"

using namespace hivdelay;
using cd = std::complex<double>;

namespace {

oracle::Vec5 arr(const StateVector& s) { return {s[0], s[1], s[2], s[3], s[4]}; }

cd quad(const std::array<double, 3>& c, cd x) { return c[0] + x * (c[1] + x * c[2]); }

}  // namespace

TEST(Characteristic, FactorsMatchJacobianDeterminant) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(-2.0, 2.0), tau(0.0, 3.0);
  int ed_cases = 0;
  for (int i = 0; i < 200; ++i) {
    const ModelParams p = oracle::draw_params(reference_parameters(), rng).with_tau(tau(rng));
    const ThresholdSet th = reproduction_numbers(p);
    const cd xi(u(rng), u(rng));
    {
      const cd det = oracle::characteristic_det(p, arr(equilibrium(p, EquilibriumKind::DiseaseFree).point), xi);
      const cd expected = (xi + p.d) * (xi + p.b) * (xi + p.q) * eval(char_E0(p), xi);
      EXPECT_LT(std::abs(det - expected), 1e-9 * (1 + std::abs(det)));
    }
    if (th.R0 > 1) {
      const auto f = char_Es(p);
      const cd det = oracle::characteristic_det(p, arr(equilibrium(p, EquilibriumKind::SingleInfection).point), xi);
      const cd expected = quad(f.d1, xi) * eval(f.d2, xi);
      EXPECT_LT(std::abs(det - expected), 1e-9 * (1 + std::abs(det)));
    }
    if (th.R0 > th.R1) {
      ++ed_cases;
      const cd det = oracle::characteristic_det(p, arr(equilibrium(p, EquilibriumKind::DoubleInfection).point), xi);
      EXPECT_LT(std::abs(det - eval(char_Ed(p), xi)), 1e-9 * (1 + std::abs(det)));
    }
  }
  EXPECT_GT(ed_cases, 20);
}

TEST(Characteristic, DiseaseFreeFactor) {
  const ModelParams p = reference_parameters(0.0);
  const double R0 = reproduction_numbers(p).R0;
  EXPECT_NEAR(eval(char_E0(p), 0.0).real(), 1.5 * (1 - 480.0 / 13), 1e-12);
  EXPECT_NEAR(eval(char_E0(p), 0.0).real(), p.a * p.p * (1 - R0), 1e-12);
  // R0 = 1 puts a root at the origin.
  EXPECT_NEAR(std::abs(eval(char_E0(p.with_tau(frozen::kTau1)), 0.0)), 0.0, 1e-12);
  EXPECT_GT(eval(char_E0(p), 1e6).real(), 0.0);
}

TEST(Characteristic, SingleInfectionFactors) {
  const ModelParams p = reference_parameters(frozen::kTau2);
  EXPECT_NEAR(char_Es(p).d1[0], 0.0, 1e-8);
  const auto f = char_Es(reference_parameters(2.0));
  const double disc = f.d1[1] * f.d1[1] - 4 * f.d1[0];
  EXPECT_GT(f.d1[0], 0.0);
  EXPECT_LT((-f.d1[1] + std::sqrt(std::max(disc, 0.0))) / 2, 0.0);
  EXPECT_EQ(f.d2.p.size(), 4u);
  EXPECT_EQ(f.d2.q, (std::vector<double>{-1.5 / 180, -1.5}));
  EXPECT_THROW(char_Es(reference_parameters(8.0)), InadmissibleEquilibrium);
}

TEST(Characteristic, DoubleInfectionMatchesWorkedExampleCoefficients) {
  for (double tau : {0.0, 0.4, 1.3}) {
    const QuasiPolynomial qp = char_Ed(reference_parameters(tau));
    EXPECT_NEAR(qp.p[4], 240.0 / 221 * std::exp(-0.5 * tau) + 1457.0 / 180, 1e-12);
    EXPECT_EQ(qp.p[5], 1.0);
    EXPECT_EQ(qp.q[0], 0.0);
  }
  const QuasiPolynomial qp0 = char_Ed(reference_parameters(0.0));
  const auto collapsed = collapsed_polynomial(qp0);
  EXPECT_NEAR(collapsed[0], 259.0 / 260, 1e-12);
  EXPECT_THROW(char_Ed(reference_parameters(1.6)), InadmissibleEquilibrium);
}

TEST(Characteristic, DoubleInfectionConstantVanishesAtR1) {
  const double a0 = char_Ed(reference_parameters(frozen::kTau2 - 1e-9)).p[0];
  EXPECT_GT(a0, 0.0);
  EXPECT_LT(a0, 1e-8);
}

TEST(Characteristic, QuotedRootSolvesQuintic) {
  const cd xi(frozen::kRootsQuoted[0][0], frozen::kRootsQuoted[0][1]);
  EXPECT_LT(std::abs(eval(char_Ed(reference_parameters(0.0)), xi)), 1e-6);
}

TEST(Characteristic, DerivativesMatchFiniteDifferences) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1.5, 1.5), tau(0.0, 1.4);
  for (int i = 0; i < 100; ++i) {
    const ModelParams p = reference_parameters(tau(rng));
    const QuasiPolynomial qp = char_Ed(p);
    const cd xi(u(rng), std::abs(u(rng)));
    const double h = 1e-6;
    const cd fd_xi = (eval(qp, xi + h) - eval(qp, xi - h)) / (2 * h);
    EXPECT_LT(std::abs(eval_dxi(qp, xi) - fd_xi), 1e-5 * std::max(1.0, std::abs(fd_xi)));

    const cd fd_tau = (eval(char_Ed(p.with_tau(p.tau + h)), xi) - eval(char_Ed(p.with_tau(p.tau - h)), xi)) / (2 * h);
    const cd analytic = dD_dtau(qp, char_Ed_dtau(p), xi);
    EXPECT_LT(std::abs(analytic - fd_tau), 1e-5 * std::max(1.0, std::abs(fd_tau)));

    const CoefficientDerivative d = char_Ed_dtau(p);
    const auto up = char_Ed(p.with_tau(p.tau + h));
    const auto dn = char_Ed(p.with_tau(p.tau - h));
    for (std::size_t k = 0; k < 5; ++k) EXPECT_NEAR(d.dp[k], (up.p[k] - dn.p[k]) / (2 * h), 1e-6 * (1 + std::abs(d.dp[k])));
    for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(d.dq[k], (up.q[k] - dn.q[k]) / (2 * h), 1e-6 * (1 + std::abs(d.dq[k])));
  }
}

TEST(Characteristic, HurwitzBoundaryLiesJustBelowTau2) {
  // Delta_i are all positive only for R0 in (R1, ~17.114), far short of R_h.
  const auto t = hurwitz_boundary_delay(reference_parameters());
  ASSERT_TRUE(t.has_value());
  EXPECT_NEAR(*t, 1.5378726642, 1e-9);
  EXPECT_FALSE(hurwitz_quintic(modulus_poly(char_Ed(reference_parameters(*t - 1e-6)))).all_positive);
  EXPECT_TRUE(hurwitz_quintic(modulus_poly(char_Ed(reference_parameters(*t + 1e-6)))).all_positive);
  EXPECT_LT(reproduction_numbers(reference_parameters(*t)).R0, 17.2);
  ModelParams no_ed = reference_parameters();
  no_ed.k = 1;
  EXPECT_FALSE(hurwitz_boundary_delay(no_ed).has_value());
}
