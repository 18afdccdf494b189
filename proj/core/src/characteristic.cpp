#include "hivdelay/characteristic.hpp"

#include <cmath>

#include "hivdelay/errors.hpp"
#include "hivdelay/model.hpp"
#include "hivdelay/polynomial.hpp"

namespace hivdelay {

QuasiPolynomial char_E0(const ModelParams& m) {
  m.validate();
  QuasiPolynomial qp;
  qp.p = {m.a * m.p, m.a + m.p, 1.0};
  qp.q = {-(m.beta * m.lambda * m.k / m.d) * m.survival()};
  qp.tau = m.tau;
  return qp;
}

SingleInfectionFactors char_Es(const ModelParams& m) {
  m.validate();
  const ThresholdSet th = reproduction_numbers(m);
  if (!(th.R0 > 1.0)) throw InadmissibleEquilibrium("char_Es: E_s requires R0 > 1");
  const double g = m.k * m.beta * m.lambda * m.survival();
  const double ap = m.a * m.p;
  SingleInfectionFactors f;
  f.d1 = {m.b * m.q * (1.0 - th.Rd), m.b + m.q, 1.0};
  f.d2.p = {g, (g / ap) * (m.a + m.p) + ap, m.a + m.p + g / ap, 1.0};
  f.d2.q = {-ap * m.d, -ap};
  f.d2.tau = m.tau;
  return f;
}

QuasiPolynomial char_Ed(const ModelParams& m) {
  m.validate();
  const ThresholdSet th = reproduction_numbers(m);
  if (!(th.R0 > th.R1)) throw InadmissibleEquilibrium("char_Ed: E_d requires R0 > R1");
  const double R0 = th.R0, R1 = th.R1;
  const double a = m.a, b = m.b, d = m.d, p = m.p, q = m.q;
  const double r = R0 / R1;
  const double s = b + p + q;
  const double u = d * R1 + a * r;

  QuasiPolynomial qp;
  qp.p = {
      a * b * d * p * q * (R0 - R1),
      a * d * p * (b + q) * R0 + a * b * q * (p + d * R1) * (r - 1.0),
      a * d * s * R0 + p * (b + q) * u + a * b * q * (r - 1.0),
      s * u + p * (b + q) + a * d * R0,
      u + s,
      1.0,
  };
  qp.q = {
      0.0,
      -a * p * d * (b + q) * r,
      -a * p * (b + d + q) * r,
      -a * p * r,
  };
  qp.tau = m.tau;
  return qp;
}

CoefficientDerivative char_Ed_dtau(const ModelParams& m) {
  const ThresholdSet th = reproduction_numbers(m);
  const double R1 = th.R1;
  const double a = m.a, b = m.b, d = m.d, p = m.p, q = m.q;
  const double s = b + p + q;
  // d/dR0 of each coefficient, then chain rule with dR0/dtau = -a R0.
  const std::vector<double> dA = {
      a * b * d * p * q,
      a * d * p * (b + q) + a * b * q * (p + d * R1) / R1,
      a * d * s + p * (b + q) * a / R1 + a * b * q / R1,
      s * a / R1 + a * d,
      a / R1,
      0.0,
  };
  const std::vector<double> dB = {0.0, a * p * d * (b + q) / R1, a * p * (b + d + q) / R1, a * p / R1};
  const double chain = -a * th.R0;
  CoefficientDerivative out;
  for (double v : dA) out.dp.push_back(v * chain);
  for (double v : dB) out.dq.push_back(-v * chain);
  return out;
}

std::complex<double> dD_dtau(const QuasiPolynomial& qp, const CoefficientDerivative& deriv,
                             std::complex<double> xi) {
  const auto e = std::exp(-xi * qp.tau);
  return horner(deriv.dp, xi) + (horner(deriv.dq, xi) - xi * horner(qp.q, xi)) * e;
}

std::optional<double> hurwitz_boundary_delay(const ModelParams& params) {
  const ModelParams base = params.with_tau(0.0);
  const auto tau2 = threshold_delay(base, reproduction_numbers(base).R1);
  if (!tau2 || *tau2 <= 0) return std::nullopt;
  auto positive = [&](double t) { return hurwitz_quintic(modulus_poly(char_Ed(base.with_tau(t)))).all_positive; };
  constexpr int kSteps = 400;
  double hi = *tau2 * (1 - 1e-9);
  if (!positive(hi)) return hi;
  for (int i = 1; i <= kSteps; ++i) {
    const double lo = *tau2 * (1 - static_cast<double>(i) / kSteps);
    if (!positive(lo)) {
      double a = lo, b = hi;
      while (b - a > 1e-12) {
        const double m = 0.5 * (a + b);
        (positive(m) ? b : a) = m;
      }
      return a;
    }
    hi = lo;
  }
  return std::nullopt;
}

}  // namespace hivdelay
