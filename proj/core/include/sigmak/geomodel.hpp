#pragma once

#include <optional>
#include <span>
#include <vector>

namespace sigmak {

/// Principal curvatures of the boundary at a point of a domain in R^n, taken
/// with respect to the interior unit normal.
class BoundaryGeometry {
 public:
  /// Requires n >= 3, kappas.size() == n - 1, all finite.
  BoundaryGeometry(int n, std::vector<double> kappas);

  [[nodiscard]] int dimension() const { return n_; }
  [[nodiscard]] std::span<const double> kappas() const { return kappas_; }
  /// All principal curvatures equal (sphere or plane).
  [[nodiscard]] bool is_umbilic() const;
  /// The common curvature; throws UnsupportedGeometry if not umbilic.
  [[nodiscard]] double umbilic_curvature() const;

 private:
  int n_;
  std::vector<double> kappas_;
};

struct GeometryInvariants {
  double mean_curvature;  // H = sum kappa_a
  double pi_sq;           // |Pi|^2
  double pi0_sq;          // |trace-free Pi|^2 = sum (kappa_a - H/(n-1))^2
};

GeometryInvariants derived_invariants(const BoundaryGeometry& g);

/// c_1 = H / (2(n-1)).
double c1_closed_form(const BoundaryGeometry& g);

/// Closed-form second coefficient; affine in k with slope
/// -(n-2)|trace-free Pi|^2 / (12 (n-1)^3). Requires 1 <= k <= n.
double c2_closed_form(const BoundaryGeometry& g, int k);

/// Sphere of radius R (> 0) in R^n: kappa_a = 1/R.
BoundaryGeometry ball_geometry(int n, double R);

/// Boundary expansion u + log d = c_1 d + ... + c_{n-1} d^{n-1} + c_log d^n log d + O(d^n).
struct ExpansionCoeffs {
  int n = 0;
  std::vector<double> c;  // c[j-1] = c_j, j = 1..n-1
  double c_log = 0.0;

  [[nodiscard]] double coefficient(int j) const { return c.at(static_cast<std::size_t>(j - 1)); }
};

}  // namespace sigmak
