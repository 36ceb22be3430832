#pragma once

// Order-by-order boundary expansion for umbilic (ball / half-space) models.
//
// The ansatz is v = -log d + c_1 d + ... + c_{n-1} d^{n-1} + c_log d^n log d,
// and each unknown is fixed by requiring the matching coefficient of
// Ftilde(v) = d^{2k} F(v) to vanish.

#include <span>
#include <vector>

#include "sigmak/geomodel.hpp"
#include "sigmak/phseries.hpp"

namespace sigmak {

/// Eigenvalue series of d^2 A(v) in the umbilic model.
struct AtildeEigens {
  PHSeries tangential;  // multiplicity n-1
  PHSeries normal;      // multiplicity 1
  int tangential_multiplicity = 0;
};

/// -log d + sum_j plain[j-1] d^j + c_log d^n log d, truncated at `order`.
/// `plain` may extend past n-1 (up to `order`) to carry exact reference data.
PHSeries formal_solution(int n, int order, std::span<const double> plain, double c_log = 0.0);

/// Requires v.leading_log() == 1 and an umbilic geometry (UnsupportedGeometry otherwise).
AtildeEigens assemble_atilde(const PHSeries& v, const BoundaryGeometry& g);

/// Ftilde(v) = sigma_k(d^2 A(v)) - (n-1)^k C(n,k) exp(2k (v + log d)).
PHSeries ftilde(const PHSeries& v, const BoundaryGeometry& g, int k);

struct SolveDiagnostics {
  int truncation = 0;
  /// d(coefficient of d^i)/d(c_i) for i = 1..n-1, then d(coefficient of d^n)/d(c_log).
  std::vector<double> slopes;
  /// Coefficient of d^n log d in Ftilde before c_log is inserted; expected to be 0.
  double log_slot_before = 0.0;
  bool log_slot_vanishes = true;
  /// Ftilde evaluated at the solved ansatz.
  PHSeries residual{0};
};

struct CoefficientSolution {
  ExpansionCoeffs coeffs;
  SolveDiagnostics diagnostics;
};

/// Solves for c_1..c_{n-1} and c_log. `truncation` defaults to n+1 and must lie in [n, 2n-2].
/// The regular c_n slot is left at zero: it is not a local quantity.
CoefficientSolution solve_coefficients_detailed(const BoundaryGeometry& g, int k, int truncation = 0);
ExpansionCoeffs solve_coefficients(const BoundaryGeometry& g, int k, int truncation = 0);

/// Coefficient of d^order in Ftilde for the ansatz with c_1..c_{order-1} = `lower`
/// and c_order = `trial` (all higher coefficients zero). For order == n the
/// trial value is placed in the c_log slot instead.
double ftilde_order_coefficient(const BoundaryGeometry& g, int k, std::span<const double> lower, int order,
                                double trial, int truncation = 0);

}  // namespace sigmak
