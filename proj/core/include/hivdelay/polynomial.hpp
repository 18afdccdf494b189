#pragma once

#include <complex>
#include <span>
#include <vector>

namespace hivdelay {

/// Horner evaluation of a polynomial given by ascending coefficients.
double horner(std::span<const double> ascending, double x);
std::complex<double> horner(std::span<const double> ascending, std::complex<double> x);
/// Derivative evaluated by Horner on the fly.
std::complex<double> horner_derivative(std::span<const double> ascending, std::complex<double> x);

/// Ascending coefficients of the product of two polynomials.
std::vector<double> poly_multiply(std::span<const double> lhs, std::span<const double> rhs);

/// All complex roots (eigenvalues of the companion matrix, then Newton polish).
/// Trailing zero leading coefficients are dropped first.
std::vector<std::complex<double>> polynomial_roots(std::span<const double> ascending);

/// Real roots strictly greater than zero, ascending. A root is treated as real
/// when its imaginary part is below imag_tol * max(1, |root|).
std::vector<double> positive_real_roots(std::span<const double> ascending, double imag_tol = 1e-7);

}  // namespace hivdelay
