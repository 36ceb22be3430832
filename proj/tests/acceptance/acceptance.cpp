// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/bridge.hpp"
#include "sigmak/errors.hpp"
#include "sigmak/expand.hpp"
#include "sigmak/geomodel.hpp"
#include "sigmak/radial.hpp"
#include "sigmak/symkit.hpp"
#include "sigmak/verify.hpp"

using namespace sigmak;

namespace {

// Pinned tolerances.
constexpr double kClosedFormTol = 1e-8;
constexpr double kBallRecursionTol = 1e-8;
constexpr double kBallFitTol = 1e-6;
constexpr double kSlopeMargin = 0.2;
constexpr double kExactResidualTol = 1e-9;
constexpr double kNewtonTol = 1e-10;
constexpr double kNewtonFdTol = 1e-5;
constexpr double kInvarianceTol = 1e-13;
constexpr double kGradientMargin = 0.1;
constexpr double kHessianBound = 0.5;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

Outcome closed_form_agreement() {
  double worst = 0.0;
  for (int n = 3; n <= 8; ++n) {
    for (double kappa : {0.5, 1.0, 2.0}) {
      const BoundaryGeometry g(n, std::vector<double>(static_cast<std::size_t>(n - 1), kappa));
      for (int k = 1; k <= n; ++k) {
        const ExpansionCoeffs c = solve_coefficients(g, k);
        worst = std::max(worst, std::abs(c.coefficient(1) - c1_closed_form(g)));
        worst = std::max(worst, std::abs(c.coefficient(2) - c2_closed_form(g, k)));
      }
    }
  }
  return {worst <= kClosedFormTol, "max |c - closed form| = " + fmt("%.2e", worst)};
}

Outcome ball_oracle() {
  const int n = 3;
  double rec = 0.0;
  for (int k = 1; k <= n; ++k) {
    const ExpansionCoeffs c = solve_coefficients(ball_geometry(n, 1.0), k);
    rec = std::max({rec, std::abs(c.coefficient(1) - 0.5), std::abs(c.coefficient(2) - 0.125), std::abs(c.c_log)});
  }
  const auto samples = exact_ball_samples(1.0, 4, 14, 8);
  const FitReport fit = fit_expansion(samples, n);
  const double fit_err = std::max({std::abs(fit.fitted.coefficient(1) - 0.5),
                                   std::abs(fit.fitted.coefficient(2) - 0.125), std::abs(fit.fitted.c_log)});
  const bool slope_ok = fit.slope_determined && fit.slope >= n - kSlopeMargin;
  return {rec <= kBallRecursionTol && fit_err <= kBallFitTol && slope_ok,
          "recursion err " + fmt("%.2e", rec) + ", fit err " + fmt("%.2e", fit_err) + ", slope " +
              fmt("%.3f", fit.slope)};
}

Outcome exact_residual() {
  double worst_scaled = 0.0;
  double worst_abs = 0.0;
  bool cone = true;
  for (int n = 3; n <= 8; ++n) {
    const RadialProfile p = exact_profile(1.0, 100);
    for (int k = 1; k <= n; ++k) {
      const ResidualReport r = pde_residual(p, n, k);
      worst_scaled = std::max(worst_scaled, r.max_scaled);
      worst_abs = std::max(worst_abs, r.max_abs);
      cone = cone && r.all_in_cone && r.in_cone.size() == 100;
    }
  }
  // F is compared relative to max(1, rhs): rhs reaches 1e11 on this grid.
  return {worst_scaled < kExactResidualTol && cone,
          "max |F|/max(1,rhs) = " + fmt("%.2e", worst_scaled) + " (max |F| = " + fmt("%.2e", worst_abs) +
              "), spectrum in cone: " + (cone ? "yes" : "no")};
}

// d/dt sigma_k(A + tB) at t = 0, exact for the degree-k polynomial by
// interpolation on Chebyshev nodes.
double directional_sigma_derivative(const oracle::Matrix& a, const oracle::Matrix& b, int k) {
  const int m = k + 1;
  std::vector<double> t(static_cast<std::size_t>(m)), f(t.size());
  for (int i = 0; i < m; ++i) {
    t[static_cast<std::size_t>(i)] = std::cos(M_PI * (i + 0.5) / m);
    oracle::Matrix p = a;
    for (std::size_t r = 0; r < a.size(); ++r) {
      for (std::size_t c = 0; c < a.size(); ++c) p[r][c] += t[static_cast<std::size_t>(i)] * b[r][c];
    }
    f[static_cast<std::size_t>(i)] = sigma_k_matrix(oracle::to_sym(p), k);
  }
  // Derivative of the Lagrange basis at 0:
  // L_i'(0) = sum_{j != i} 1/(t_i - t_j) prod_{l != i,j} (0 - t_l)/(t_i - t_l).
  double d = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double dli = 0.0;
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (j == i) continue;
      double term = 1.0 / (t[i] - t[j]);
      for (std::size_t l = 0; l < t.size(); ++l) {
        if (l != i && l != j) term *= (0.0 - t[l]) / (t[i] - t[l]);
      }
      dli += term;
    }
    d += f[i] * dli;
  }
  return d;
}

Outcome newton_identities() {
  std::mt19937_64 rng(oracle::kSeed + 100);
  double worst = 0.0;
  double worst_fd = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 5;
    const auto a = oracle::random_symmetric(n, rng);
    const auto b = oracle::random_symmetric(n, rng);
    const SymMatrix sa = oracle::to_sym(a);
    const Spectrum spec = eigenvalues(sa);
    const std::vector<double> eig(spec.values().begin(), spec.values().end());
    for (int k = 1; k <= n; ++k) {
      const SymMatrix t = newton_transform(sa, k - 1);
      double contraction = 0.0;
      double directional = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          contraction += t(i, j) * sa(i, j);
          directional += t(i, j) * b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
      }
      worst = std::max(worst, std::abs(contraction - k * oracle::sigma_subsets(eig, k)));
      worst = std::max(worst, std::abs(t.trace() - (n - k + 1) * oracle::sigma_subsets(eig, k - 1)));
      worst = std::max(worst, std::abs(directional - directional_sigma_derivative(a, b, k)));
      auto sigma = [k](const oracle::Matrix& m) { return sigma_k_matrix(oracle::to_sym(m), k); };
      worst_fd = std::max(worst_fd, oracle::max_abs_diff(oracle::fd_sigma_gradient(a, sigma, 1e-6), oracle::from_sym(t)));
    }
  }
  return {worst <= kNewtonTol && worst_fd <= kNewtonFdTol,
          "identities " + fmt("%.2e", worst) + ", finite difference " + fmt("%.2e", worst_fd)};
}

Outcome maclaurin() {
  std::mt19937_64 rng(oracle::kSeed + 101);
  int checked = 0;
  int failed = 0;
  for (int n = 2; n <= 6; ++n) {
    for (int k = 1; k <= n; ++k) {
      for (int i = 0; i < 1000; ++i) {
        const Spectrum s(oracle::random_cone_spectrum(n, k, rng));
        ++checked;
        if (!gamma_cone_contains(s, k) || !maclaurin_holds(s, k)) ++failed;
      }
    }
  }
  return {failed == 0, std::to_string(checked) + " spectra, " + std::to_string(failed) + " violations"};
}

Outcome comparison_monotonicity() {
  constexpr int kGrid = 100000;
  const std::vector<double> Js{5.0, 8.0, 11.0};
  std::vector<ShootResult> runs;
  for (double J : Js) runs.push_back(shoot_finite_bvp(3, 1, 1.0, J, kGrid));
  bool ordered = true;
  for (std::size_t s = 1; s < runs.size(); ++s) {
    for (std::size_t i = 0; i < runs[s].profile.u.size(); ++i) {
      ordered = ordered && runs[s].profile.u[i] >= runs[s - 1].profile.u[i];
    }
  }
  // Interior: r <= R/2.
  std::vector<double> dev;
  for (const auto& run : runs) {
    double d = 0.0;
    for (std::size_t i = 0; i < run.profile.r.size() && run.profile.r[i] <= 0.5; ++i) {
      d = std::max(d, std::abs(run.profile.u[i] - exact_hyperbolic(1.0, run.profile.r[i]).u));
    }
    dev.push_back(d);
  }
  const bool decreasing = dev[0] > dev[1] && dev[1] > dev[2];
  return {ordered && decreasing, std::string("pointwise ordered: ") + (ordered ? "yes" : "no") +
                                     ", interior deviation " + fmt("%.3e", dev[0]) + " > " + fmt("%.3e", dev[1]) +
                                     " > " + fmt("%.3e", dev[2])};
}

Outcome barrier() {
  const std::vector<double> Cs{1, 2, 5, 10, 20, 50, 100};
  const std::vector<double> deltas{1e-2, 5e-3, 1e-3};
  std::string detail;
  bool all = true;
  for (int k = 1; k <= 3; ++k) {
    bool found = false;
    for (double C : Cs) {
      for (double delta : deltas) {
        const BarrierReport r = barrier_sign(C, delta, ball_geometry(3, 1.0), k);
        if (r.negative_everywhere && r.in_cone_everywhere) {
          detail += "k=" + std::to_string(k) + ": C=" + fmt("%g", C) + " delta=" + fmt("%g", delta) + "; ";
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found) detail += "k=" + std::to_string(k) + ": none; ";
    all = all && found;
  }
  return {all, detail.substr(0, detail.size() - 2)};
}

Outcome conformal_invariance() {
  std::mt19937_64 rng(oracle::kSeed + 102);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  double worst = 0.0;
  bool all = true;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + trial % 6;
    const int k = 1 + trial % n;
    const BoundaryGeometry g(n, std::vector<double>(static_cast<std::size_t>(n - 1), 0.5 + trial % 3));
    const ExpansionCoeffs ck = solve_coefficients(g, k);
    const ExpansionCoeffs c1 = solve_coefficients(g, 1);
    PHSeries rho(n + 1);
    for (int j = 0; j <= n + 1; ++j) rho.set_coeff(j, 0, u(rng));
    all = all && conformal_invariance_check(ck, c1, rho, kInvarianceTol);
    worst = std::max(worst, invariance_defect(ck, c1, conformal_shift(ck, rho), conformal_shift(c1, rho)));
  }
  return {all && worst <= kInvarianceTol, "50 factors, max defect " + fmt("%.2e", worst)};
}

Outcome decay() {
  bool all = true;
  double min_margin = 1e300;
  double hess = 0.0;
  double lap = 1e300;
  for (int n = 3; n <= 8; ++n) {
    for (int k = 1; k <= n; ++k) {
      const DecayReport gr = gradient_decay_check(1.0, n, k);
      const double margin = gr.identically_zero ? 1e300 : gr.slope - (gr.alpha - kGradientMargin);
      min_margin = std::min(min_margin, margin);
      all = all && gr.passed && margin >= 0.0;
      const HessianReport h = hessian_bound_check(1.0, n, k);
      hess = std::max(hess, h.sup_second_derivative);
      lap = std::min(lap, h.inf_laplacian);
      all = all && h.finite && h.sup_second_derivative <= kHessianBound && std::isfinite(h.inf_laplacian);
    }
  }
  return {all, "min gradient slope margin " + fmt("%.3f", min_margin) + ", hessian sup " + fmt("%.4f", hess) +
                   ", laplacian inf " + fmt("%.4f", lap)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "sigmak_acceptance";
  fs::create_directories(dir);
  const std::string fit_input = std::string(SIGMAK_GOLDEN_DIR) + "/inputs/ball3.csv";
  const std::vector<std::string> configs{
      "coeffs --ball 5 2 --k 3",
      "coeffs --ball 4 1 --k 2 --format csv",
      "ball-verify --ball 3 1 --grid 100",
      "shoot --ball 3 1 --k 2 --J 6 --grid 2000 --format csv",
      "barrier --ball 3 1 --k 3",
      "fit " + fit_input + " --n 3",
      "cone --lambda 1,2,-0.3 --k 2",
  };
  int identical = 0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    std::string outputs[2];
    for (int rep = 0; rep < 2; ++rep) {
      const fs::path out = dir / ("run" + std::to_string(i) + "_" + std::to_string(rep));
      const std::string cmd = std::string("SIGMAK_LOG=quiet \"") + SIGMAK_CLI_PATH + "\" " + configs[i] + " > \"" +
                              out.string() + "\"";
      if (std::system(cmd.c_str()) != 0) return {false, "command failed: " + configs[i]};
      outputs[rep] = slurp(out);
    }
    if (!outputs[0].empty() && outputs[0] == outputs[1]) ++identical;
  }
  fs::remove_all(dir);
  return {identical == static_cast<int>(configs.size()),
          std::to_string(identical) + "/" + std::to_string(configs.size()) + " configs byte-identical"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"closed-form agreement", closed_form_agreement},
      {"ball oracle", ball_oracle},
      {"exact-solution residual", exact_residual},
      {"Newton-transform identities", newton_identities},
      {"Maclaurin inequality", maclaurin},
      {"comparison monotonicity", comparison_monotonicity},
      {"barrier check", barrier},
      {"conformal invariance", conformal_invariance},
      {"decay checks", decay},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
