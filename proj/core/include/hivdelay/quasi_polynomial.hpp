#pragma once

#include <array>
#include <complex>
#include <vector>

namespace hivdelay {

/// D(xi) = P(xi) + Q(xi) e^{-xi tau} with real coefficients (ascending degree).
/// P is monic and deg P > deg Q.
struct QuasiPolynomial {
  std::vector<double> p;
  std::vector<double> q;
  double tau = 0;

  std::size_t degree() const { return p.empty() ? 0 : p.size() - 1; }
  /// Throws UnsupportedShape unless P is monic with deg P > deg Q.
  void check() const;
};

std::complex<double> eval(const QuasiPolynomial& qp, std::complex<double> xi);

/// dD/dxi = P'(xi) + (Q'(xi) - tau Q(xi)) e^{-xi tau}.
std::complex<double> eval_dxi(const QuasiPolynomial& qp, std::complex<double> xi);

/// sum |p_i| |xi|^i + |e^{-xi tau}| sum |q_j| |xi|^j, the magnitude against
/// which residuals of D are judged.
double magnitude_scale(const QuasiPolynomial& qp, std::complex<double> xi);

/// Value of D at tau = 0, i.e. P + Q as an ordinary polynomial.
std::vector<double> collapsed_polynomial(const QuasiPolynomial& qp);

enum class ModulusKind { H0, Hs, H };

/// Polynomial in s = omega^2 (ascending coefficients, monic) whose positive
/// roots are the candidate crossing frequencies omega = sqrt(s).
struct ModulusPolynomial {
  std::vector<double> coeffs;
  ModulusKind kind = ModulusKind::H0;

  /// h_i, the coefficient of s^{n-i} (h_0 = 1).
  double h(std::size_t i) const { return coeffs[coeffs.size() - 1 - i]; }
};

/// |P(i omega)|^2 - |Q(i omega)|^2 for the three supported shapes: quadratic P
/// with constant Q (H0), cubic P with linear Q (Hs) and quintic P with cubic Q
/// (H). Throws UnsupportedShape otherwise.
ModulusPolynomial modulus_poly(const QuasiPolynomial& qp);

/// Positive real roots of the modulus polynomial, ascending.
std::vector<double> positive_roots(const ModulusPolynomial& mp);

/// Routh-Hurwitz test for c3 s^3 + c2 s^2 + c1 s + c0 with c3 = 1.
bool routh_hurwitz_cubic(double c3, double c2, double c1, double c0);

struct HurwitzReport {
  std::array<double, 5> delta{};
  bool all_positive = false;
};

/// Hurwitz determinants of the quintic modulus polynomial H:
///   D1 = h1, D2 = h1 h2 - h3, D3 = h3 D2 - h1 (h1 h4 - h5),
///   D4 = h4 D3 - h5 (h2 D2 - (h1 h4 - h5)), D5 = h5 D4.
/// All positive iff every root of H has negative real part.
HurwitzReport hurwitz_quintic(const ModulusPolynomial& mp);

}  // namespace hivdelay
