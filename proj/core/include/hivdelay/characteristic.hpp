#pragma once

#include <array>
#include <complex>
#include <optional>
#include <vector>

#include "hivdelay/params.hpp"
#include "hivdelay/quasi_polynomial.hpp"

namespace hivdelay {

/// Disease-free factor D0 = xi^2 + (a+p) xi + ap - (beta lambda k / d) e^{-a tau} e^{-xi tau}.
QuasiPolynomial char_E0(const ModelParams& params);

struct SingleInfectionFactors {
  /// D1 = xi^2 + (b+q) xi + bq (1 - Rd), ascending.
  std::array<double, 3> d1{};
  /// D2 = xi^3 + a2 xi^2 + a1 xi + a0 - (c1 xi + c2) e^{-xi tau}.
  QuasiPolynomial d2;
};

/// Throws InadmissibleEquilibrium when R0 <= 1.
SingleInfectionFactors char_Es(const ModelParams& params);

/// Quintic characteristic function at E_d. Throws InadmissibleEquilibrium when R0 <= R1.
QuasiPolynomial char_Ed(const ModelParams& params);

/// Coefficient-wise tau derivatives of a quasi-polynomial (P and Q only; the
/// e^{-xi tau} factor is handled by dD_dtau).
struct CoefficientDerivative {
  std::vector<double> dp;
  std::vector<double> dq;
};

/// d/dtau of the E_d coefficients. Every coefficient is affine in R0 and
/// dR0/dtau = -a R0.
CoefficientDerivative char_Ed_dtau(const ModelParams& params);

/// dD/dtau = P_tau(xi) + (Q_tau(xi) - xi Q(xi)) e^{-xi tau}.
std::complex<double> dD_dtau(const QuasiPolynomial& qp, const CoefficientDerivative& deriv,
                             std::complex<double> xi);

/// Empirical Hurwitz boundary. Scanning down from tau2, the first delay at
/// which some Delta_i of H is no longer positive, bisected to 1e-12. nullopt
/// when E_d does not exist at tau = 0 or the determinants stay positive down
/// to tau = 0.
std::optional<double> hurwitz_boundary_delay(const ModelParams& params);

}  // namespace hivdelay
