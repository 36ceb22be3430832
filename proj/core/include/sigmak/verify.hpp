#pragma once

#include <span>
#include <vector>

#include "sigmak/geomodel.hpp"
#include "sigmak/phseries.hpp"

namespace sigmak {

struct Sample {
  double d;
  double value;  // u + log d
};

struct FitOptions {
  /// Largest number of remainder orders fitted as nuisance terms: d^n always,
  /// then (d^{n+e} log d, d^{n+e}) for e = 1..r. The fit picks r in
  /// 0..remainder_orders by leave-one-band-out cross-validation.
  int remainder_orders = 3;
};

/// Dyadic band [2^{-m-1}, 2^{-m}).
struct BandStat {
  int m = 0;
  double center = 0.0;
  int count = 0;
  double sup = 0.0;
};

struct FitReport {
  ExpansionCoeffs fitted;
  std::vector<double> remainder;  // nuisance coefficients, d^n first
  int remainder_orders_used = 0;
  std::vector<BandStat> bands;    // residual_sup of the local expansion per band
  double slope = 0.0;
  bool slope_determined = false;
};

/// Band-weighted least squares of u + log d in the basis {d, ..., d^{n-1}, d^n log d}
/// plus remainder terms. Requires >= 3(n+1) samples over >= 4 dyadic bands.
FitReport fit_expansion(std::span<const Sample> samples, int n, FitOptions options = {});

/// Samples of the exact ball solution: `per_band` points in each band m = first..last.
std::vector<Sample> exact_ball_samples(double R, int first_band, int last_band, int per_band);

/// Least-squares slope of log(sup) against log(center) over bands with sup > 0.
double loglog_slope(std::span<const BandStat> bands);

/// Coefficients of w - rho, where w = -log d + sum c_j d^j, rho log-free.
ExpansionCoeffs conformal_shift(const ExpansionCoeffs& coeffs, const PHSeries& rho);

/// max_j |(tk_j - t1_j) - (ck_j - c1_j)|.
double invariance_defect(const ExpansionCoeffs& ck, const ExpansionCoeffs& c1, const ExpansionCoeffs& tk,
                         const ExpansionCoeffs& t1);

bool conformal_invariance_check(const ExpansionCoeffs& coeffs_k, const ExpansionCoeffs& coeffs_1, const PHSeries& rho,
                                double tolerance = 1e-13);

struct DecayReport {
  double alpha = 0.0;
  std::vector<BandStat> bands;
  double slope = 0.0;
  bool identically_zero = false;
  bool passed = false;
};

/// |d/dd (u + log d - c_1 d)| on dyadic bands for the exact ball solution
/// (R = +inf: half-space). Passes when slope >= alpha - 0.1.
DecayReport gradient_decay_check(double R, int n, int k);

struct HessianReport {
  double sup_second_derivative = 0.0;  // sup |d^2/dd^2 (u + log d - c_1 d)| on (0, 0.1]
  double inf_laplacian = 0.0;          // inf of the radial Laplacian of w on the same band
  bool finite = false;
  bool consistency_only = false;       // n < 8
};

HessianReport hessian_bound_check(double R, int n, int k);

}  // namespace sigmak
