#include "sigmak/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sigmak/errors.hpp"

namespace sigmak {

namespace {

void require_nk(int n, int k) {
  if (n < 3) throw DomainError("dimension must be >= 3");
  if (k < 1 || k > n) throw DomainError("k=" + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
}

// sigma_j of {t x m, nu}.
double two_value_sigma(double t, int m, double nu, int j) {
  if (j == 0) return 1.0;
  return binomial(m, j) * std::pow(t, j) + binomial(m, j - 1) * std::pow(t, j - 1) * nu;
}

// The eigenvalues along the line t = a_t s + b_t, nu = a_nu s + b_nu in the
// unknown s = u''. Both slopes are positive.
struct EigenLine {
  double a_t, b_t, a_nu, b_nu;
};

// Solves sigma_k(t(s), nu(s)) = rhs on the branch inside Gamma_k^+. Inside the
// cone sigma_k increases along the line, and outside it the predicate below is
// false, so the admissible root is unique.
double solve_on_line(const EigenLine& line, int n, int k, double rhs, double hint) {
  const int m = n - 1;
  // Overflowing right-hand sides only occur on blow-up trajectories.
  if (!std::isfinite(rhs) || !std::isfinite(line.b_t) || !std::isfinite(line.b_nu)) {
    return std::numeric_limits<double>::infinity();
  }
  auto eval = [&](double s, bool& in_cone, double& g, double& gp) {
    const double t = line.a_t * s + line.b_t;
    const double nu = line.a_nu * s + line.b_nu;
    // sigma_j = C(m,j) t^j + C(m,j-1) t^{j-1} nu, built up in j.
    double c_prev = 1.0;   // C(m, j-1)
    double c_cur = 1.0;    // C(m, j)
    double t_prev = 1.0;   // t^{j-1}
    double t_prev2 = 0.0;  // t^{j-2}
    double sigma = 1.0;
    in_cone = true;
    for (int j = 1; j <= k; ++j) {
      c_cur = std::round(c_prev * (m - j + 1) / j);
      sigma = c_cur * t_prev * t + c_prev * t_prev * nu;
      if (!(sigma > 0.0)) in_cone = false;
      if (j < k) {
        t_prev2 = t_prev;
        t_prev *= t;
        c_prev = c_cur;
      }
    }
    g = sigma - rhs;
    const double dt = c_cur * k * t_prev + (k >= 2 ? c_prev * (k - 1) * t_prev2 * nu : 0.0);
    const double dnu = c_prev * t_prev;
    gp = line.a_t * dt + line.a_nu * dnu;
  };

  const double zero_t = -line.b_t / line.a_t;
  const double zero_nu = -line.b_nu / line.a_nu;
  double lo = std::min(zero_t, zero_nu) - 1.0;
  double hi = std::numeric_limits<double>::quiet_NaN();
  bool in_cone = false;
  double g = 0.0;
  double gp = 0.0;
  // The admissible set is [root, inf), so the hint (the previous u'') either
  // closes the bracket or raises its lower end.
  if (std::isfinite(hint) && hint > lo) {
    eval(hint, in_cone, g, gp);
    if (in_cone && g >= 0.0) {
      hi = hint;
    } else {
      lo = hint;
    }
  }
  if (std::isnan(hi)) {
    const double start = std::max({zero_t, zero_nu, lo});
    double step = std::max(1.0, 1e-3 * std::abs(start));
    for (int i = 0;; ++i) {
      eval(start + step, in_cone, g, gp);
      if (in_cone && g >= 0.0) {
        hi = start + step;
        break;
      }
      if (i > 2000 || !std::isfinite(g)) {
        throw NoSolutionError("radial equation: no admissible second derivative");
      }
      lo = start + step;
      step *= 2.0;
    }
  }

  double x = (hint > lo && hint < hi) ? hint : hi;
  const double g_tol = 1e-15 * std::max(1.0, rhs);
  for (int it = 0; it < 400; ++it) {
    eval(x, in_cone, g, gp);
    if (in_cone && std::abs(g) <= g_tol) return x;
    if (in_cone && g >= 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(hi))) return hi;
    const double candidate = (in_cone && gp > 0.0) ? x - g / gp : std::numeric_limits<double>::quiet_NaN();
    x = (candidate > lo && candidate < hi) ? candidate : 0.5 * (lo + hi);
  }
  return hi;
}

// u'' from F(u) = 0 at radius r given u and u'.
double second_derivative(int n, int k, double r, double u, double du, double hint) {
  const double nd = n;
  EigenLine line{};
  if (r == 0.0) {
    // du/r -> u'' at the center; both eigenvalues become 2(n-1) u''.
    line = {2.0 * (nd - 1.0), 0.0, 2.0 * (nd - 1.0), 0.0};
  } else {
    const double p = du / r;
    line = {1.0, (2.0 * nd - 3.0) * p + (nd - 2.0) * du * du, nd - 1.0, (nd - 1.0) * p};
  }
  return solve_on_line(line, n, k, rhs_value(n, k, u), hint);
}

struct State {
  double u;
  double du;
};

class RadialIntegrator {
 public:
  RadialIntegrator(int n, int k, double R, double cap) : n_(n), k_(k), R_(R), cap_(cap) {}

  // Integrates from the center with u(0) = center over `grid`. Returns false
  // if u exceeds the cap (blow-up) before the last grid point.
  bool run(double center, const std::vector<double>& grid, RadialProfile* out) {
    try {
      return integrate(center, grid, out);
    } catch (const NoSolutionError&) {
      // Overflowing right-hand side on the way to blow-up.
      if (out) *out = RadialProfile{out->R, {}, {}, {}, {}};
      return false;
    }
  }

  [[nodiscard]] double end_value() const { return end_value_; }

 private:
  bool integrate(double center, const std::vector<double>& grid, RadialProfile* out) {
    State y{center, 0.0};
    hint_ = std::exp(2.0 * center) / 2.0;
    double ddu = second_derivative(n_, k_, 0.0, y.u, y.du, hint_);
    if (!std::isfinite(ddu)) return false;
    if (out) record(out, grid[0], y, ddu);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      const double r0 = grid[i];
      const double r1 = grid[i + 1];
      const double h = r1 - r0;
      // Refine near the boundary, where u varies on the scale R - r.
      const int substeps = std::clamp(static_cast<int>(std::ceil(8.0 * h / (R_ - r1))), 1, 64);
      const double hs = h / substeps;
      for (int s = 0; s < substeps; ++s) {
        const double prev = y.u;
        y = rk4_step(r0 + s * hs, y, hs);
        // Radial solutions increase outward; a drop means RK4 has lost the blow-up.
        if (!std::isfinite(y.u) || !std::isfinite(y.du * y.du) || y.u > cap_ || y.u < prev) return false;
      }
      ddu = second_derivative(n_, k_, r1, y.u, y.du, hint_);
      if (!std::isfinite(ddu)) return false;
      hint_ = ddu;
      if (out) record(out, r1, y, ddu);
    }
    end_value_ = y.u;
    return true;
  }

  State rhs(double r, const State& y) {
    const double ddu = second_derivative(n_, k_, r, y.u, y.du, hint_);
    hint_ = ddu;
    return {y.du, ddu};
  }

  State rk4_step(double r, const State& y, double h) {
    const State k1 = rhs(r, y);
    const State k2 = rhs(r + 0.5 * h, {y.u + 0.5 * h * k1.u, y.du + 0.5 * h * k1.du});
    const State k3 = rhs(r + 0.5 * h, {y.u + 0.5 * h * k2.u, y.du + 0.5 * h * k2.du});
    const State k4 = rhs(r + h, {y.u + h * k3.u, y.du + h * k3.du});
    return {y.u + h / 6.0 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u),
            y.du + h / 6.0 * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du)};
  }

  static void record(RadialProfile* out, double r, const State& y, double ddu) {
    out->r.push_back(r);
    out->u.push_back(y.u);
    out->du.push_back(y.du);
    out->ddu.push_back(ddu);
  }

  int n_;
  int k_;
  double R_;
  double cap_;
  double hint_ = 0.0;
  double end_value_ = 0.0;
};

}  // namespace

RadialJet exact_hyperbolic(double R, double r) {
  if (!(R > 0.0)) throw DomainError("exact_hyperbolic: radius must be positive");
  if (!(r >= 0.0 && r < R)) throw DomainError("exact_hyperbolic: r must lie in [0, R)");
  const double s = (R - r) * (R + r);
  return {std::log(2.0 * R) - std::log(s), 2.0 * r / s, 2.0 / s + 4.0 * r * r / (s * s)};
}

RadialJet exact_shifted(double R, double d) {
  if (!(d > 0.0)) throw DomainError("exact_shifted: d must be positive");
  if (std::isinf(R) && R > 0.0) return {0.0, 0.0, 0.0};
  if (!(R > 0.0)) throw DomainError("exact_shifted: radius must be positive");
  if (!(d <= R)) throw DomainError("exact_shifted: d exceeds the radius");
  const double q = 2.0 * R - d;
  return {-std::log1p(-d / (2.0 * R)), 1.0 / q, 1.0 / (q * q)};
}

RadialEigenvalues radial_A_eigenvalues(double du, double ddu, double r, int n) {
  if (r < 0.0) throw DomainError("radial_A_eigenvalues: r must be >= 0");
  const double nd = n;
  const double p = (r == 0.0) ? ddu : du / r;
  return {(nd - 1.0) * (ddu + p), (2.0 * nd - 3.0) * p + ddu + (nd - 2.0) * du * du};
}

RadialEigenvalues umbilic_A_eigenvalues(double v_d, double v_dd, double d, double kappa, int n) {
  if (!(d > 0.0) || !(kappa * d < 1.0)) {
    throw DomainError("umbilic_A_eigenvalues: need d > 0 and kappa d < 1");
  }
  const double nd = n;
  const double p = -v_d * kappa / (1.0 - kappa * d);  // u_r / r
  return {(nd - 1.0) * (v_dd + p), (2.0 * nd - 3.0) * p + v_dd + (nd - 2.0) * v_d * v_d};
}

double radial_sigma_k(const RadialEigenvalues& eig, int n, int k) {
  if (k < 0 || k > n) throw DomainError("radial_sigma_k: k outside [0, n]");
  return two_value_sigma(eig.tangential, n - 1, eig.normal, k);
}

Spectrum radial_spectrum(const RadialEigenvalues& eig, int n) {
  std::vector<double> values(static_cast<std::size_t>(n), eig.tangential);
  values.back() = eig.normal;
  return Spectrum(std::move(values));
}

double rhs_value(int n, int k, double u) {
  return std::pow(static_cast<double>(n - 1), k) * binomial(n, k) * std::exp(2.0 * static_cast<double>(k) * u);
}

RadialProfile exact_profile(double R, int grid_size) {
  if (grid_size < 1) throw DomainError("exact_profile: grid_size must be >= 1");
  RadialProfile p;
  p.R = R;
  const double h = R / grid_size;
  for (int i = 0; i < grid_size; ++i) {
    const double r = i * h;
    const RadialJet jet = exact_hyperbolic(R, r);
    p.r.push_back(r);
    p.u.push_back(jet.u);
    p.du.push_back(jet.du);
    p.ddu.push_back(jet.ddu);
  }
  return p;
}

ResidualReport pde_residual(const RadialProfile& p, int n, int k) {
  require_nk(n, k);
  const std::size_t count = p.r.size();
  if (p.u.size() != count || p.du.size() != count || p.ddu.size() != count) {
    throw DomainError("pde_residual: profile columns have different lengths");
  }
  ResidualReport rep;
  for (std::size_t i = 0; i < count; ++i) {
    const RadialEigenvalues eig = radial_A_eigenvalues(p.du[i], p.ddu[i], p.r[i], n);
    const double rhs = rhs_value(n, k, p.u[i]);
    const double f = radial_sigma_k(eig, n, k) - rhs;
    const double scaled = f / std::max(1.0, rhs);
    const bool cone = gamma_cone_contains(radial_spectrum(eig, n), k);
    rep.residual.push_back(f);
    rep.scaled.push_back(scaled);
    rep.in_cone.push_back(cone);
    rep.max_abs = std::max(rep.max_abs, std::abs(f));
    rep.max_scaled = std::max(rep.max_scaled, std::abs(scaled));
    rep.all_in_cone = rep.all_in_cone && cone;
  }
  return rep;
}

ShootResult shoot_finite_bvp(int n, int k, double R, double J, int grid_size) {
  require_nk(n, k);
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("shoot_finite_bvp: radius must be positive");
  if (!std::isfinite(J)) throw DomainError("shoot_finite_bvp: J must be finite");
  if (grid_size < 100) throw DomainError("shoot_finite_bvp: grid_size must be >= 100");

  std::vector<double> grid(static_cast<std::size_t>(grid_size));
  const double h = R / grid_size;
  for (int i = 0; i < grid_size; ++i) grid[static_cast<std::size_t>(i)] = i * h;

  RadialIntegrator integrator(n, k, R, J + 40.0);
  // +inf when the trajectory blows up before the last grid point.
  auto mismatch = [&](double center) {
    return integrator.run(center, grid, nullptr) ? integrator.end_value() - J
                                                 : std::numeric_limits<double>::infinity();
  };

  // u is increasing in r, so u(0) = J overshoots.
  double hi = J;
  double lo = J - 1.0;
  double step = 1.0;
  int iterations = 0;
  while (!(mismatch(lo) < 0.0)) {
    step *= 2.0;
    lo = J - step;
    if (++iterations > 60) throw NoSolutionError("shoot_finite_bvp: could not bracket the center value");
  }
  // The end value is increasing in the center value (comparison principle).
  for (int it = 0; it < 200; ++it) {
    ++iterations;
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f = mismatch(mid);
    if (f < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (std::abs(f) <= 1e-12 * std::max(1.0, std::abs(J))) {
      lo = hi = mid;
      break;
    }
  }

  ShootResult result;
  result.center_value = 0.5 * (lo + hi);
  result.iterations = iterations;
  result.profile.R = R;
  if (!integrator.run(result.center_value, grid, &result.profile)) {
    throw NoSolutionError("shoot_finite_bvp: final trajectory blew up");
  }
  result.boundary_value = integrator.end_value();
  if (!(std::abs(result.boundary_value - J) <= 1e-6 * std::max(1.0, std::abs(J)))) {
    throw NoSolutionError("shoot_finite_bvp: boundary value " + std::to_string(J) + " not reachable on this grid");
  }
  for (std::size_t i = 0; i < result.profile.r.size(); ++i) {
    const RadialEigenvalues eig =
        radial_A_eigenvalues(result.profile.du[i], result.profile.ddu[i], result.profile.r[i], n);
    if (!gamma_cone_contains(radial_spectrum(eig, n), k)) {
      throw AdmissibilityError("shoot_finite_bvp: spectrum left Gamma_k^+ at r = " +
                               std::to_string(result.profile.r[i]));
    }
  }
  return result;
}

BarrierReport barrier_sign(double C, double delta, const BoundaryGeometry& g, int k, int samples) {
  const int n = g.dimension();
  require_nk(n, k);
  const double kappa = g.umbilic_curvature();
  if (!(delta > 0.0) || !(kappa * delta < 1.0)) {
    throw DomainError("barrier_sign: need delta > 0 and kappa delta < 1");
  }
  if (samples < 2) throw DomainError("barrier_sign: need at least two samples");

  BarrierReport rep;
  rep.C = C;
  rep.delta = delta;
  const double nd = n;
  const double rhs_const = std::pow(nd - 1.0, k) * binomial(n, k);
  const double log_lo = std::log(delta * 1e-6);
  const double log_hi = std::log(delta);
  for (int i = 0; i < samples; ++i) {
    const double d = (i == samples - 1) ? delta : std::exp(log_lo + (log_hi - log_lo) * i / (samples - 1));
    // d^2 A(phi) for phi = -log d + C d, computed without the 1/d^2 scale.
    const double d_vd = -1.0 + C * d;
    const double d2_ratio = -d_vd * kappa * d / (1.0 - kappa * d);
    const RadialEigenvalues scaled{(nd - 1.0) * (1.0 + d2_ratio), (2.0 * nd - 3.0) * d2_ratio + 1.0 + (nd - 2.0) * d_vd * d_vd};
    const double f = radial_sigma_k(scaled, n, k) - rhs_const * std::exp(2.0 * k * C * d);
    const bool cone = gamma_cone_contains(radial_spectrum(scaled, n), k);
    rep.d.push_back(d);
    rep.ftilde.push_back(f);
    rep.in_cone.push_back(cone);
    rep.negative_everywhere = rep.negative_everywhere && f < 0.0;
    rep.in_cone_everywhere = rep.in_cone_everywhere && cone;
    rep.max_ftilde = (i == 0) ? f : std::max(rep.max_ftilde, f);
    rep.min_ftilde = (i == 0) ? f : std::min(rep.min_ftilde, f);
  }
  return rep;
}

}  // namespace sigmak
