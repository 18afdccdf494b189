#pragma once

#include <complex>
#include <vector>

#include "hivdelay/quasi_polynomial.hpp"

namespace hivdelay {

/// max(1, sum_{i<n} |p_i| + e^{-sigma tau} sum |q_j|). Every root with
/// Re(xi) >= sigma has modulus at most this value.
double root_modulus_bound(const QuasiPolynomial& qp, double sigma);

/// Number of roots with Re(xi) > sigma and |Im(xi)| < omega_cap, by the
/// winding of D around [sigma, sigma_max] x [-omega_cap, omega_cap]. A root
/// on or too close to the contour makes the rectangle jitter outward by 1e-6
/// (up to five times); ContourNearRoot after that.
int count_roots_right_of(const QuasiPolynomial& qp, double sigma, double omega_cap);

/// As above with omega_cap taken from root_modulus_bound, so every root to
/// the right of sigma is counted.
int count_roots_right_of(const QuasiPolynomial& qp, double sigma);

struct RootRegion {
  double re_min = -6;
  double re_max = 2;
  double im_max = 4;
};

/// Distinct roots inside the region found by complex Newton from a uniform
/// seed grid (upper half-plane representatives, sorted by decreasing real
/// part, ties by imaginary part).
std::vector<std::complex<double>> rightmost_roots(const QuasiPolynomial& qp, const RootRegion& region,
                                                  double spacing = 0.25);

/// 1 + the largest crossing frequency sqrt(s*) over positive roots s* of the
/// modulus polynomial, or 10 when there is none.
double default_omega_cap(const QuasiPolynomial& qp);

}  // namespace hivdelay
