#include "sigmak/geomodel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sigmak/errors.hpp"

namespace sigmak {

BoundaryGeometry::BoundaryGeometry(int n, std::vector<double> kappas) : n_(n), kappas_(std::move(kappas)) {
  if (n < 3) {
    throw DomainError("BoundaryGeometry: dimension must be >= 3, got " + std::to_string(n));
  }
  if (kappas_.size() != static_cast<std::size_t>(n - 1)) {
    throw DomainError("BoundaryGeometry: expected " + std::to_string(n - 1) + " principal curvatures, got " +
                      std::to_string(kappas_.size()));
  }
  for (double k : kappas_) {
    if (!std::isfinite(k)) throw DomainError("BoundaryGeometry: non-finite curvature");
  }
}

bool BoundaryGeometry::is_umbilic() const {
  const auto [lo, hi] = std::minmax_element(kappas_.begin(), kappas_.end());
  const double scale = std::max(std::abs(*lo), std::abs(*hi));
  return *hi - *lo <= 1e-12 * scale;
}

double BoundaryGeometry::umbilic_curvature() const {
  if (!is_umbilic()) {
    throw UnsupportedGeometry("geometry is not umbilic");
  }
  double sum = 0.0;
  for (double k : kappas_) sum += k;
  return sum / static_cast<double>(kappas_.size());
}

GeometryInvariants derived_invariants(const BoundaryGeometry& g) {
  const double nm1 = static_cast<double>(g.dimension() - 1);
  GeometryInvariants inv{0.0, 0.0, 0.0};
  for (double k : g.kappas()) {
    inv.mean_curvature += k;
    inv.pi_sq += k * k;
  }
  // The sum-of-squares form keeps |trace-free Pi|^2 >= 0 in floating point;
  // it equals |Pi|^2 - H^2/(n-1).
  const double mean = inv.mean_curvature / nm1;
  for (double k : g.kappas()) inv.pi0_sq += (k - mean) * (k - mean);
  return inv;
}

double c1_closed_form(const BoundaryGeometry& g) {
  return derived_invariants(g).mean_curvature / (2.0 * static_cast<double>(g.dimension() - 1));
}

double c2_closed_form(const BoundaryGeometry& g, int k) {
  const int n = g.dimension();
  if (k < 1 || k > n) {
    throw DomainError("c2_closed_form: k outside [1, n]");
  }
  const auto inv = derived_invariants(g);
  const double nd = n;
  const double nm1 = nd - 1.0;
  const double h_coeff = (-3.0 * nd + 2.0) / (4.0 * nd * nm1 * nm1) -
                         (nd * nd * nd - 3.0 * nd - nd * nd + 4.0) / (2.0 * nd * std::pow(nm1, 4));
  const double pi_coeff = 2.0 / nd + (nd - 2.0) * (nd - 2.0) / (2.0 * nd * std::pow(nm1, 3));
  const double k_independent =
      nd / (6.0 * (nd - 2.0)) * (h_coeff * inv.mean_curvature * inv.mean_curvature + pi_coeff * inv.pi_sq);
  const double k_slope = -(nd - 2.0) / (12.0 * std::pow(nm1, 3)) * inv.pi0_sq;
  return k_independent + static_cast<double>(k) * k_slope;
}

BoundaryGeometry ball_geometry(int n, double R) {
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw DomainError("ball_geometry: radius must be positive and finite");
  }
  if (n < 3) {
    throw DomainError("ball_geometry: dimension must be >= 3");
  }
  return BoundaryGeometry(n, std::vector<double>(static_cast<std::size_t>(n - 1), 1.0 / R));
}

}  // namespace sigmak
