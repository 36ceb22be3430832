#include "sigmak/verify.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "sigmak/errors.hpp"
#include "sigmak/expand.hpp"
#include "sigmak/radial.hpp"

namespace sigmak {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// d lies in [2^{-m-1}, 2^{-m}).
int band_of(double d) { return static_cast<int>(std::ceil(-std::log2(d))) - 1; }

double band_center(int m) { return 0.75 * std::ldexp(1.0, -m); }

void require_nk(int n, int k) {
  if (n < 3) throw DomainError("dimension must be >= 3");
  if (k < 1 || k > n) throw DomainError("k outside [1, n]");
}

// Bands m = first..last covering (0, upper]; first is the largest band below upper.
std::pair<int, int> bands_below(double upper, int last) {
  int first = 0;
  while (std::ldexp(1.0, -first) > upper) ++first;
  return {first, last};
}

}  // namespace

double loglog_slope(std::span<const BandStat> bands) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (const auto& b : bands) {
    if (!(b.sup > 0.0)) continue;
    const double x = std::log(b.center);
    const double y = std::log(b.sup);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) return std::numeric_limits<double>::quiet_NaN();
  const double denom = count * sxx - sx * sx;
  return (count * sxy - sx * sy) / denom;
}

FitReport fit_expansion(std::span<const Sample> samples, int n, FitOptions options) {
  if (n < 3) throw DomainError("fit_expansion: n must be >= 3");
  if (options.remainder_orders < 0) throw DomainError("fit_expansion: negative remainder order count");
  if (samples.size() < static_cast<std::size_t>(3 * (n + 1))) {
    throw DomainError("fit_expansion: need at least 3(n+1) samples");
  }
  std::map<int, int> band_counts;
  for (const auto& s : samples) {
    if (!(s.d > 0.0 && s.d < 1.0) || !std::isfinite(s.value)) {
      throw DomainError("fit_expansion: samples need d in (0, 1) and finite values");
    }
    ++band_counts[band_of(s.d)];
  }
  if (band_counts.size() < 4) throw DomainError("fit_expansion: samples must span at least 4 dyadic bands");

  const int local_terms = n;  // d..d^{n-1}, d^n log d
  const auto rows = static_cast<Eigen::Index>(samples.size());

  auto basis = [&](double d, int col) {
    const double log_d = std::log(d);
    if (col < n - 1) return std::pow(d, col + 1);
    if (col == n - 1) return std::pow(d, n) * log_d;
    if (col == n) return std::pow(d, n);
    const int e = (col - n + 1) / 2;
    const bool with_log = (col - n) % 2 == 1;
    return std::pow(d, n + e) * (with_log ? log_d : 1.0);
  };

  // Relative residuals, each band carrying equal total weight.
  std::vector<double> weight(samples.size());
  Eigen::VectorXd y(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Sample& s = samples[static_cast<std::size_t>(i)];
    weight[static_cast<std::size_t>(i)] = 1.0 / (s.d * std::sqrt(static_cast<double>(band_counts[band_of(s.d)])));
    y(i) = weight[static_cast<std::size_t>(i)] * s.value;
  }

  std::vector<int> band_index(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) band_index[i] = band_of(samples[i].d);

  // Weighted least squares over the rows with keep(i); empty on rank loss.
  auto solve = [&](int params, auto keep, Eigen::Index* rank_out) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (keep(static_cast<std::size_t>(i))) idx.push_back(i);
    }
    const auto m = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd X(m, params);
    Eigen::VectorXd rhs(m);
    for (Eigen::Index r = 0; r < m; ++r) {
      const auto i = static_cast<std::size_t>(idx[static_cast<std::size_t>(r)]);
      for (int c = 0; c < params; ++c) X(r, c) = weight[i] * basis(samples[i].d, c);
      rhs(r) = y(static_cast<Eigen::Index>(i));
    }
    const Eigen::VectorXd norms = X.colwise().norm();
    for (int c = 0; c < params; ++c) {
      if (!(norms(c) > 0.0)) return Eigen::VectorXd();
      X.col(c) /= norms(c);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-13);
    if (rank_out) *rank_out = qr.rank();
    if (m < params || qr.rank() < params) return Eigen::VectorXd();
    Eigen::VectorXd sol = qr.solve(rhs);
    for (int c = 0; c < params; ++c) sol(c) /= norms(c);
    return sol;
  };

  // Remainder orders 0..max. Extra terms absorb a genuine smooth remainder
  // but only amplify noise, so the order is picked by leave-one-band-out
  // prediction error; more terms must beat fewer by a factor 30.
  std::vector<Eigen::VectorXd> candidates;
  std::vector<double> scores;
  for (int ro = 0; ro <= options.remainder_orders; ++ro) {
    const int params = local_terms + 1 + 2 * ro;
    if (rows < params) break;
    Eigen::Index rank = 0;
    Eigen::VectorXd sol = solve(params, [](std::size_t) { return true; }, &rank);
    if (sol.size() == 0) {
      if (ro == 0) {
        throw IllConditionedFit("fit_expansion: design matrix has rank " + std::to_string(rank) + " < " +
                                std::to_string(params));
      }
      break;
    }
    double score = 0.0;
    bool usable = true;
    for (const auto& [m, count] : band_counts) {
      const int held = m;
      Eigen::VectorXd part = solve(params, [&](std::size_t i) { return band_index[i] != held; }, nullptr);
      if (part.size() == 0) {
        usable = false;
        break;
      }
      for (std::size_t i = 0; i < samples.size(); ++i) {
        if (band_index[i] != held) continue;
        double pred = 0.0;
        for (int c = 0; c < params; ++c) pred += part(c) * basis(samples[i].d, c);
        const double e = weight[i] * (samples[i].value - pred);
        score += e * e;
      }
    }
    if (!usable && ro > 0) break;
    candidates.push_back(std::move(sol));
    scores.push_back(usable ? score : std::numeric_limits<double>::infinity());
  }
  if (candidates.empty()) throw DomainError("fit_expansion: fewer samples than fitted terms");
  const double best = *std::min_element(scores.begin(), scores.end());
  std::size_t chosen = 0;
  while (!(scores[chosen] <= 30.0 * best)) ++chosen;
  const Eigen::VectorXd& coef = candidates[chosen];
  const int used_orders = static_cast<int>(chosen);
  const int params = static_cast<int>(coef.size());

  FitReport rep;
  rep.remainder_orders_used = used_orders;
  rep.fitted.n = n;
  for (int j = 0; j < n - 1; ++j) rep.fitted.c.push_back(coef(j));
  rep.fitted.c_log = coef(n - 1);
  for (int c = n; c < params; ++c) rep.remainder.push_back(coef(c));

  // Residual of the local expansion alone, which the remainder bound controls.
  std::map<int, BandStat> bands;
  std::map<int, double> band_scale;
  for (const auto& s : samples) {
    double local = 0.0;
    for (int c = 0; c < local_terms; ++c) local += coef(c) * basis(s.d, c);
    const int m = band_of(s.d);
    BandStat& b = bands[m];
    b.m = m;
    b.center = band_center(m);
    ++b.count;
    b.sup = std::max(b.sup, std::abs(s.value - local));
    band_scale[m] = std::max(band_scale[m], std::abs(s.value));
  }
  // Bands ordered by decreasing d.
  std::vector<BandStat> resolved;
  for (const auto& [m, b] : bands) {
    rep.bands.push_back(b);
    if (b.sup > 64.0 * kEps * band_scale[m]) resolved.push_back(b);
  }
  rep.slope_determined = resolved.size() >= 3;
  rep.slope = rep.slope_determined ? loglog_slope(resolved) : std::numeric_limits<double>::quiet_NaN();
  return rep;
}

std::vector<Sample> exact_ball_samples(double R, int first_band, int last_band, int per_band) {
  if (first_band > last_band || per_band < 1) throw DomainError("exact_ball_samples: empty band range");
  if (std::ldexp(1.0, -first_band) > R) throw DomainError("exact_ball_samples: bands exceed the radius");
  std::vector<Sample> out;
  for (int m = first_band; m <= last_band; ++m) {
    const double a = std::ldexp(1.0, -m - 1);
    const double b = std::ldexp(1.0, -m);
    for (int i = 0; i < per_band; ++i) {
      const double d = a + (b - a) * (i + 0.5) / per_band;
      out.push_back({d, exact_shifted(R, d).u});
    }
  }
  return out;
}

ExpansionCoeffs conformal_shift(const ExpansionCoeffs& coeffs, const PHSeries& rho) {
  const int n = coeffs.n;
  if (coeffs.c.size() != static_cast<std::size_t>(n - 1)) {
    throw DomainError("conformal_shift: coefficient list does not match n");
  }
  if (rho.has_log_content()) throw DomainError("conformal_shift: rho must be log-free");
  if (rho.order() < n - 1) throw DomainError("conformal_shift: rho is truncated below order n-1");

  const PHSeries w = formal_solution(n, rho.order(), coeffs.c, coeffs.c_log);
  const PHSeries shifted = w - rho;
  ExpansionCoeffs out;
  out.n = n;
  for (int j = 1; j <= n - 1; ++j) out.c.push_back(shifted.coeff(j, 0));
  out.c_log = (n <= rho.order()) ? shifted.coeff(n, 1) : coeffs.c_log;
  return out;
}

double invariance_defect(const ExpansionCoeffs& ck, const ExpansionCoeffs& c1, const ExpansionCoeffs& tk,
                         const ExpansionCoeffs& t1) {
  if (ck.n != c1.n || ck.n != tk.n || ck.n != t1.n || ck.c.size() != c1.c.size() || ck.c.size() != tk.c.size() ||
      ck.c.size() != t1.c.size()) {
    throw DomainError("invariance_defect: coefficient sets have different orders");
  }
  double defect = 0.0;
  for (std::size_t j = 0; j < ck.c.size(); ++j) {
    defect = std::max(defect, std::abs((tk.c[j] - t1.c[j]) - (ck.c[j] - c1.c[j])));
  }
  return defect;
}

bool conformal_invariance_check(const ExpansionCoeffs& coeffs_k, const ExpansionCoeffs& coeffs_1, const PHSeries& rho,
                                double tolerance) {
  if (coeffs_k.n != coeffs_1.n) throw DomainError("conformal_invariance_check: mismatched orders");
  const ExpansionCoeffs tk = conformal_shift(coeffs_k, rho);
  const ExpansionCoeffs t1 = conformal_shift(coeffs_1, rho);
  return invariance_defect(coeffs_k, coeffs_1, tk, t1) <= tolerance;
}

DecayReport gradient_decay_check(double R, int n, int k) {
  require_nk(n, k);
  if (!(R > 0.0)) throw DomainError("gradient_decay_check: radius must be positive");
  DecayReport rep;
  rep.alpha = (n == 3) ? 0.5 : 1.0;
  const double c1 = std::isinf(R) ? 0.0 : c1_closed_form(ball_geometry(n, R));
  const auto [first, last] = bands_below(std::min(0.1, R), 24);
  constexpr int kPerBand = 16;
  for (int m = first; m <= last; ++m) {
    BandStat b{m, band_center(m), 0, 0.0};
    const double a = std::ldexp(1.0, -m - 1);
    const double hi = std::ldexp(1.0, -m);
    for (int i = 0; i < kPerBand; ++i) {
      const double d = a + (hi - a) * (i + 0.5) / kPerBand;
      b.sup = std::max(b.sup, std::abs(exact_shifted(R, d).du - c1));
      ++b.count;
    }
    rep.bands.push_back(b);
  }
  rep.identically_zero = std::all_of(rep.bands.begin(), rep.bands.end(), [](const BandStat& b) { return b.sup == 0.0; });
  if (rep.identically_zero) {
    rep.slope = std::numeric_limits<double>::quiet_NaN();
    rep.passed = true;
  } else {
    rep.slope = loglog_slope(rep.bands);
    rep.passed = rep.slope >= rep.alpha - 0.1;
  }
  return rep;
}

HessianReport hessian_bound_check(double R, int n, int k) {
  require_nk(n, k);
  if (!(R > 0.0)) throw DomainError("hessian_bound_check: radius must be positive");
  HessianReport rep;
  rep.consistency_only = n < 8;
  const bool flat = std::isinf(R);
  const double c1 = flat ? 0.0 : c1_closed_form(ball_geometry(n, R));
  const double upper = std::min(0.1, R);
  constexpr int kSamples = 2000;
  const double log_lo = std::log(upper * 1e-7);
  const double log_hi = std::log(upper);
  rep.inf_laplacian = std::numeric_limits<double>::infinity();
  rep.finite = true;
  for (int i = 0; i < kSamples; ++i) {
    const double d = (i == kSamples - 1) ? upper : std::exp(log_lo + (log_hi - log_lo) * i / (kSamples - 1));
    const RadialJet w = exact_shifted(R, d);
    // w_bar = u + log d - c1 d as a radial function of r = R - d.
    const double dw = w.du - c1;
    const double laplacian = flat ? w.ddu : w.ddu - (n - 1) * dw / (R - d);
    rep.sup_second_derivative = std::max(rep.sup_second_derivative, std::abs(w.ddu));
    rep.inf_laplacian = std::min(rep.inf_laplacian, laplacian);
    rep.finite = rep.finite && std::isfinite(w.ddu) && std::isfinite(laplacian);
  }
  return rep;
}

}  // namespace sigmak
