#include "hivdelay/quasi_polynomial.hpp"

#include <cmath>

#include "hivdelay/errors.hpp"
#include "hivdelay/polynomial.hpp"

namespace hivdelay {

void QuasiPolynomial::check() const {
  if (p.size() < 2 || p.back() != 1.0) throw UnsupportedShape("quasi-polynomial: P must be monic of degree >= 1");
  if (q.size() >= p.size()) throw UnsupportedShape("quasi-polynomial: deg Q must be below deg P");
}

std::complex<double> eval(const QuasiPolynomial& qp, std::complex<double> xi) {
  return horner(qp.p, xi) + horner(qp.q, xi) * std::exp(-xi * qp.tau);
}

std::complex<double> eval_dxi(const QuasiPolynomial& qp, std::complex<double> xi) {
  const auto e = std::exp(-xi * qp.tau);
  return horner_derivative(qp.p, xi) + (horner_derivative(qp.q, xi) - qp.tau * horner(qp.q, xi)) * e;
}

double magnitude_scale(const QuasiPolynomial& qp, std::complex<double> xi) {
  const double r = std::abs(xi);
  double sp = 0, sq = 0, pw = 1;
  for (std::size_t i = 0; i < qp.p.size(); ++i, pw *= r) {
    sp += std::abs(qp.p[i]) * pw;
    if (i < qp.q.size()) sq += std::abs(qp.q[i]) * pw;
  }
  return sp + std::exp(-xi.real() * qp.tau) * sq;
}

std::vector<double> collapsed_polynomial(const QuasiPolynomial& qp) {
  std::vector<double> out = qp.p;
  for (std::size_t i = 0; i < qp.q.size(); ++i) out[i] += qp.q[i];
  return out;
}

ModulusPolynomial modulus_poly(const QuasiPolynomial& qp) {
  qp.check();
  auto coef = [](const std::vector<double>& v, std::size_t i) { return i < v.size() ? v[i] : 0.0; };
  ModulusPolynomial mp;
  switch (qp.degree()) {
    case 2: {
      if (qp.q.size() > 1) break;
      const double p1 = qp.p[1], p0 = qp.p[0], q0 = coef(qp.q, 0);
      mp.kind = ModulusKind::H0;
      mp.coeffs = {p0 * p0 - q0 * q0, p1 * p1 - 2 * p0, 1.0};
      return mp;
    }
    case 3: {
      if (qp.q.size() > 2) break;
      // xi^3 + a2 xi^2 + a1 xi + a0 - (c1 xi + c2) e^{-xi tau}
      const double a2 = qp.p[2], a1 = qp.p[1], a0 = qp.p[0];
      const double c1 = -coef(qp.q, 1), c2 = -coef(qp.q, 0);
      mp.kind = ModulusKind::Hs;
      mp.coeffs = {a0 * a0 - c2 * c2, a1 * a1 - 2 * a0 * a2 - c1 * c1, a2 * a2 - 2 * a1, 1.0};
      return mp;
    }
    case 5: {
      if (qp.q.size() > 4) break;
      // xi^5 + sum A_i xi^i - sum B_i xi^i e^{-xi tau}
      const double A4 = qp.p[4], A3 = qp.p[3], A2 = qp.p[2], A1 = qp.p[1], A0 = qp.p[0];
      const double B3 = -coef(qp.q, 3), B2 = -coef(qp.q, 2), B1 = -coef(qp.q, 1), B0 = -coef(qp.q, 0);
      mp.kind = ModulusKind::H;
      mp.coeffs = {
          A0 * A0 - B0 * B0,
          A1 * A1 - 2 * A0 * A2 - B1 * B1 + 2 * B0 * B2,
          2 * A0 * A4 - 2 * A1 * A3 + A2 * A2 + 2 * B1 * B3 - B2 * B2,
          2 * A1 - 2 * A2 * A4 + A3 * A3 - B3 * B3,
          A4 * A4 - 2 * A3,
          1.0,
      };
      return mp;
    }
    default:
      break;
  }
  throw UnsupportedShape("modulus_poly: only degree 2/3/5 characteristic shapes are supported");
}

std::vector<double> positive_roots(const ModulusPolynomial& mp) { return positive_real_roots(mp.coeffs); }

bool routh_hurwitz_cubic(double c3, double c2, double c1, double c0) {
  if (c3 != 1.0) throw UnsupportedShape("routh_hurwitz_cubic: leading coefficient must be 1");
  return c2 > 0 && c0 > 0 && c2 * c1 - c0 > 0;
}

HurwitzReport hurwitz_quintic(const ModulusPolynomial& mp) {
  if (mp.kind != ModulusKind::H || mp.coeffs.size() != 6) {
    throw UnsupportedShape("hurwitz_quintic: expects the quintic modulus polynomial");
  }
  const double h1 = mp.h(1), h2 = mp.h(2), h3 = mp.h(3), h4 = mp.h(4), h5 = mp.h(5);
  HurwitzReport r;
  auto& D = r.delta;
  D[0] = h1;
  D[1] = h1 * h2 - h3;
  D[2] = h3 * D[1] - h1 * (h1 * h4 - h5);
  D[3] = h4 * D[2] - h5 * (h2 * D[1] - (h1 * h4 - h5));
  D[4] = h5 * D[3];
  r.all_positive = D[0] > 0 && D[1] > 0 && D[2] > 0 && D[3] > 0 && D[4] > 0;
  return r;
}

}  // namespace hivdelay
