#pragma once

// Radially symmetric solutions on balls: the exact hyperbolic conformal
// factor, the radial form of A(u), PDE residuals, finite-boundary-value
// shooting, and barrier sign checks.

#include <vector>

#include "sigmak/geomodel.hpp"
#include "sigmak/symkit.hpp"

namespace sigmak {

struct RadialJet {
  double u;
  double du;
  double ddu;
};

/// u = log(2R / (R^2 - r^2)) and its r-derivatives. Requires 0 <= r < R.
RadialJet exact_hyperbolic(double R, double r);

/// w(d) = u + log d = -log(1 - d/(2R)) in the boundary distance d, with
/// d-derivatives, evaluated without cancellation. R = +inf gives the
/// half-space solution (w = 0).
RadialJet exact_shifted(double R, double d);

struct RadialEigenvalues {
  double normal;
  double tangential;  // multiplicity n-1
};

/// Eigenvalues of A(u) for radial u. At r = 0 du/r is replaced by its limit ddu.
RadialEigenvalues radial_A_eigenvalues(double du, double ddu, double r, int n);

/// Same, for a function v(d) of the distance to an umbilic boundary of
/// curvature kappa (kappa = 0: half-space). Requires d > 0, kappa d < 1.
RadialEigenvalues umbilic_A_eigenvalues(double v_d, double v_dd, double d, double kappa, int n);

/// sigma_k of {tangential x (n-1), normal}, expanded as
/// C(n-1,k) t^k + C(n-1,k-1) t^{k-1} normal.
double radial_sigma_k(const RadialEigenvalues& eig, int n, int k);
Spectrum radial_spectrum(const RadialEigenvalues& eig, int n);

/// (n-1)^k C(n,k) e^{2ku}.
double rhs_value(int n, int k, double u);

struct RadialProfile {
  double R = 1.0;
  std::vector<double> r;
  std::vector<double> u;
  std::vector<double> du;
  std::vector<double> ddu;
};

/// Exact hyperbolic profile on r_i = i R / grid_size, i = 0..grid_size-1.
RadialProfile exact_profile(double R, int grid_size);

struct ResidualReport {
  std::vector<double> residual;  // F(u) = sigma_k(A(u)) - RHS
  std::vector<double> scaled;    // F(u) / max(1, RHS)
  std::vector<bool> in_cone;
  double max_abs = 0.0;
  double max_scaled = 0.0;
  bool all_in_cone = true;
};

ResidualReport pde_residual(const RadialProfile& p, int n, int k);

struct ShootResult {
  RadialProfile profile;
  double center_value = 0.0;
  double boundary_value = 0.0;  // computed u at the last grid point
  int iterations = 0;
};

/// Radial solution of F(u) = 0 on [0, R - R/grid_size] with du(0) = 0 and
/// u(last grid point) = J, by bisection on u(0). Throws NoSolutionError if no
/// bracket is found and AdmissibilityError if the spectrum leaves Gamma_k^+.
ShootResult shoot_finite_bvp(int n, int k, double R, double J, int grid_size);

struct BarrierReport {
  double C = 0.0;
  double delta = 0.0;
  std::vector<double> d;
  std::vector<double> ftilde;  // d^{2k} F(phi)
  std::vector<bool> in_cone;
  bool negative_everywhere = true;
  bool in_cone_everywhere = true;
  double max_ftilde = 0.0;
  double min_ftilde = 0.0;
};

/// F(phi) for phi = -log d + C d on d in (0, delta], umbilic geometry only.
BarrierReport barrier_sign(double C, double delta, const BoundaryGeometry& g, int k, int samples = 2000);

}  // namespace sigmak
