#include "sigmak/expand.hpp"

#include <cmath>
#include <string>

#include "sigmak/errors.hpp"
#include "sigmak/symkit.hpp"

namespace sigmak {

namespace {

int resolve_truncation(int n, int truncation) {
  if (truncation == 0) return n + 1;
  if (truncation < n) {
    throw DomainError("truncation order " + std::to_string(truncation) + " is below n = " + std::to_string(n));
  }
  // Beyond 2n-2 the square of the d^n log d term lands inside the truncation.
  if (truncation > 2 * n - 2) {
    throw DomainError("truncation order " + std::to_string(truncation) + " exceeds 2n-2 = " + std::to_string(2 * n - 2));
  }
  return truncation;
}

void require_k(int n, int k) {
  if (k < 1 || k > n) {
    throw DomainError("k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
  }
}

}  // namespace

PHSeries formal_solution(int n, int order, std::span<const double> plain, double c_log) {
  if (static_cast<int>(plain.size()) > order) {
    throw DomainError("formal_solution: more coefficients than the truncation order");
  }
  PHSeries v = PHSeries::minus_log(order);
  for (std::size_t j = 0; j < plain.size(); ++j) {
    v.set_coeff(static_cast<int>(j) + 1, 0, plain[j]);
  }
  if (n <= order) {
    v.set_coeff(n, 1, c_log);
  }
  return v;
}

AtildeEigens assemble_atilde(const PHSeries& v, const BoundaryGeometry& g) {
  if (v.leading_log() != 1) {
    throw DomainError("assemble_atilde: v must carry the -log d prefix");
  }
  const double kappa = g.umbilic_curvature();
  const int n = g.dimension();
  const int N = v.order();
  const double nd = n;

  const PoleSeries v_d = derivative(v);
  const PoleSeries v_dd = derivative(v_d);
  const PHSeries d_vd = v_d.cleared(1);
  const PHSeries d2_vdd = v_dd.cleared(2);

  // kappa d / (1 - kappa d): the factor d/(R - d) with R = 1/kappa.
  const PHSeries curvature_factor =
      times_d_power(scale(geometric_inverse(1.0, PHSeries::monomial(N, 1, -kappa)), kappa), 1);
  // d^2 u_r / r, with u_r = -v_d and r = R - d.
  const PHSeries radial_ratio = scale(mul(d_vd, curvature_factor), -1.0);

  AtildeEigens eig{PHSeries(N), PHSeries(N), n - 1};
  eig.normal = add(scale(d2_vdd, nd - 1.0), scale(radial_ratio, nd - 1.0));
  eig.tangential =
      add(add(d2_vdd, scale(radial_ratio, 2.0 * nd - 3.0)), scale(mul(d_vd, d_vd), nd - 2.0));
  return eig;
}

PHSeries ftilde(const PHSeries& v, const BoundaryGeometry& g, int k) {
  const int n = g.dimension();
  require_k(n, k);
  const AtildeEigens eig = assemble_atilde(v, g);
  const int N = v.order();

  // sigma_k over the multiset {tangential x (n-1), normal}.
  std::vector<PHSeries> e(static_cast<std::size_t>(k) + 1, PHSeries(N));
  e[0] = PHSeries::constant(N, 1.0);
  for (int i = 0; i < n; ++i) {
    const PHSeries& x = (i < n - 1) ? eig.tangential : eig.normal;
    for (int j = std::min(i + 1, k); j >= 1; --j) {
      const auto uj = static_cast<std::size_t>(j);
      e[uj] = add(e[uj], mul(x, e[uj - 1]));
    }
  }

  const double rhs_const = std::pow(static_cast<double>(n - 1), k) * binomial(n, k);
  const PHSeries exponent = scale(v.without_leading_log(), 2.0 * static_cast<double>(k));
  return add(e[static_cast<std::size_t>(k)], scale(exp_series(exponent), -rhs_const));
}

double ftilde_order_coefficient(const BoundaryGeometry& g, int k, std::span<const double> lower, int order,
                                double trial, int truncation) {
  const int n = g.dimension();
  const int N = resolve_truncation(n, truncation);
  if (order < 1 || order > n || static_cast<int>(lower.size()) != order - 1) {
    throw DomainError("ftilde_order_coefficient: inconsistent order / coefficient count");
  }
  std::vector<double> plain(lower.begin(), lower.end());
  double c_log = 0.0;
  if (order < n) {
    plain.push_back(trial);
  } else {
    c_log = trial;
  }
  return ftilde(formal_solution(n, N, plain, c_log), g, k).coeff(order, 0);
}

CoefficientSolution solve_coefficients_detailed(const BoundaryGeometry& g, int k, int truncation) {
  const int n = g.dimension();
  require_k(n, k);
  const int N = resolve_truncation(n, truncation);
  if (!g.is_umbilic()) {
    throw UnsupportedGeometry("solve_coefficients: the full recursion needs an umbilic boundary");
  }

  CoefficientSolution sol;
  sol.coeffs.n = n;
  sol.diagnostics.truncation = N;
  std::vector<double> known;

  // The coefficient of d^i in Ftilde is affine in the order-i unknown, so two
  // evaluations determine it.
  for (int i = 1; i <= n; ++i) {
    const double at0 = ftilde_order_coefficient(g, k, known, i, 0.0, N);
    const double at1 = ftilde_order_coefficient(g, k, known, i, 1.0, N);
    const double slope = at1 - at0;
    sol.diagnostics.slopes.push_back(slope);
    if (!(std::abs(slope) > 1e-12 * std::max(1.0, std::abs(at0)))) {
      throw DegeneracyError("solve_coefficients: vanishing slope at order " + std::to_string(i));
    }
    const double root = -at0 / slope;
    if (i < n) {
      known.push_back(root);
    } else {
      sol.coeffs.c_log = root;
    }
  }
  sol.coeffs.c = known;

  const PHSeries before = ftilde(formal_solution(n, N, known, 0.0), g, k);
  sol.diagnostics.log_slot_before = before.coeff(n, 1);
  sol.diagnostics.residual = ftilde(formal_solution(n, N, known, sol.coeffs.c_log), g, k);
  double scale_ref = 1.0;
  for (int j = 0; j <= N; ++j) scale_ref = std::max(scale_ref, std::abs(sol.diagnostics.residual.coeff(j, 0)));
  sol.diagnostics.log_slot_vanishes = std::abs(sol.diagnostics.log_slot_before) <= 1e-9 * scale_ref;
  return sol;
}

ExpansionCoeffs solve_coefficients(const BoundaryGeometry& g, int k, int truncation) {
  return solve_coefficients_detailed(g, k, truncation).coeffs;
}

}  // namespace sigmak
