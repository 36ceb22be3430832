#pragma once

// Truncated polyhomogeneous series in the distance variable d:
//
//   s(d) = -m log d + sum_{j=0}^{N} (a_{j,0} d^j + a_{j,1} d^j log d),   m in {0, 1}.
//
// Only one power of log d is carried. Products that would create a log^2 term
// at an order <= N are rejected; everything beyond order N is discarded.

#include <vector>

namespace sigmak {

class PHSeries {
 public:
  /// Zero series truncated at `order` (>= 0).
  explicit PHSeries(int order);

  static PHSeries constant(int order, double value);
  /// coeff * d^power, or coeff * d^power log d when `with_log`.
  static PHSeries monomial(int order, int power, double coeff, bool with_log = false);
  /// The bare -log d prefix.
  static PHSeries minus_log(int order);

  [[nodiscard]] int order() const { return order_; }
  [[nodiscard]] int leading_log() const { return leading_log_; }
  [[nodiscard]] double coeff(int power, int log_power) const;
  void set_coeff(int power, int log_power, double value);
  void set_leading_log(int m);

  /// True if any log slot is nonzero or the -log d prefix is present.
  [[nodiscard]] bool has_log_content() const;
  /// Smallest j with a_{j,1} != 0, or order()+1 if there is none.
  [[nodiscard]] int lowest_log_power() const;
  /// Copy with the -log d prefix removed.
  [[nodiscard]] PHSeries without_leading_log() const;

  /// Termwise sum at d (> 0).
  [[nodiscard]] double evaluate(double d) const;

  friend bool operator==(const PHSeries&, const PHSeries&) = default;

 private:
  [[nodiscard]] std::size_t slot(int power, int log_power) const;

  int order_;
  int leading_log_ = 0;
  std::vector<double> coeffs_;  // 2 * (order + 1): [j][l]
};

/// A PHSeries plus explicit poles: inv_d / d + inv_d2 / d^2 + regular.
struct PoleSeries {
  PHSeries regular;
  double inv_d = 0.0;
  double inv_d2 = 0.0;

  /// d^power times this series as a PHSeries; the poles must be cleared by `power`.
  [[nodiscard]] PHSeries cleared(int power) const;
  [[nodiscard]] double evaluate(double d) const;
};

/// Coefficientwise sum; throws DomainError on unequal orders or when the
/// leading-log counts do not add up to 0 or 1.
PHSeries add(const PHSeries& s, const PHSeries& t);
PHSeries scale(const PHSeries& s, double factor);
/// Truncated product. Throws DomainError when both operands carry a -log d
/// prefix, or a log^2 term would land at an order <= N.
PHSeries mul(const PHSeries& s, const PHSeries& t);
/// d^power * s, truncated.
PHSeries times_d_power(const PHSeries& s, int power);
/// exp(s) = sum_m s^m / m!. Requires zero constant term, no -log d prefix, and
/// log slots only at orders >= ceil(N/2) + 1.
PHSeries exp_series(const PHSeries& s);
/// Termwise d/dd. The order-N slot of the regular part is zero.
PoleSeries derivative(const PHSeries& s);
/// Second differentiation step; requires s.inv_d2 == 0.
PoleSeries derivative(const PoleSeries& s);
/// Series of 1 / (c + s) with s(0) = 0. Throws DomainError when c == 0.
PHSeries geometric_inverse(double c, const PHSeries& s);

inline PHSeries operator+(const PHSeries& s, const PHSeries& t) { return add(s, t); }
inline PHSeries operator-(const PHSeries& s, const PHSeries& t) { return add(s, scale(t, -1.0)); }
inline PHSeries operator*(const PHSeries& s, const PHSeries& t) { return mul(s, t); }
inline PHSeries operator*(double a, const PHSeries& s) { return scale(s, a); }

}  // namespace sigmak
