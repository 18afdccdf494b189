#pragma once

#include <complex>
#include <optional>

#include "hivdelay/params.hpp"

namespace hivdelay {

/// Real and imaginary parts of D(i omega) for the E_d characteristic function.
struct RSPair {
  double R = 0;
  double S = 0;
};

RSPair ri_split(const ModelParams& params, double omega, double tau);

struct Interval {
  double lo = 0;
  double hi = 0;

  double width() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
};

struct HopfPoint {
  double tau_h = 0;
  double omega_h = 0;
  std::complex<double> dD_dxi;  ///< dD/dxi at (i omega_h, tau_h)
  double re_dxi_dtau = 0;
  double R_h = 0;  ///< R0 at tau_h
};

/// Solves D(i omega, tau) = 0 by two-dimensional Newton started from grid
/// cells where both R and S change sign. The tau box is clipped to the E_d
/// regime (tau below tau2). Among several solutions the one with the smallest
/// R_h > R1 (largest tau) is returned.
std::optional<HopfPoint> find_hopf(const ModelParams& params, Interval tau_box, Interval omega_box);

/// Re(dxi/dtau) = Re(-D_tau / D_xi) at (i omega_h, tau_h). Throws Degenerate
/// when |D_xi| < 1e-10.
double transversality(const ModelParams& params, const HopfPoint& hp);

/// Lower bound of R(omega, tau):
///   A4 w^4 - A2 w^2 + A0 - w sqrt(B2^2 w^2 + (B3 w^2 - B1)^2).
/// Affine in e^{-a tau}, so its minimum over a tau interval sits at an end.
double crossing_lower_bound(const ModelParams& params, double omega, double tau);

struct NoCrossingEvidence {
  bool lower_bound_ok = false;
  double lower_bound_min = 0;     ///< smallest bound seen on [omega_cap, omega_tail]
  double omega_tail = 0;          ///< beyond this the bound is positive analytically
  double grid_min_residual = 0;   ///< min |D(i omega)| over the coarse cell centres
  int flagged_cells = 0;          ///< coarse cells the derivative bound could not clear
  int refinement_level = 0;       ///< deepest subdivision needed
  std::optional<HopfPoint> crossing;  ///< a root on the imaginary axis, when found
  Interval tau_scanned;
};

struct NoCrossingCertificate {
  bool certified = false;
  NoCrossingEvidence evidence;
};

/// Certifies that no characteristic root of E_d lies on the imaginary axis
/// for tau in the open range. Ends of the range are pulled in by
/// 1e-8 max(1, |tau|) and the range is clipped below tau2.
///
/// Above omega_cap the bound R~ must stay positive. Below it, a 64 x 64 cell
/// grid is cleared cell by cell: a cell is clear when |D| at its centre beats
/// a bound on |grad D| times the half-widths. Other cells are quartered, and
/// Newton from their centres reports any crossing inside the range. Throws
/// Inconclusive when a cell is neither cleared nor resolved after 60 halvings.
NoCrossingCertificate no_crossing_certificate(const ModelParams& params, Interval tau_range, double omega_cap);

/// 2.1 for the worked-example rates; otherwise 1 + the largest crossing
/// frequency of H over 33 delays in tau_range (10 when H has no positive
/// root), raised if needed so that R~ is positive above it.
double default_hopf_omega_cap(const ModelParams& params, Interval tau_range);

}  // namespace hivdelay
