#include "sigmak/phseries.hpp"

#include <cmath>
#include <string>

#include "sigmak/errors.hpp"

namespace sigmak {

PHSeries::PHSeries(int order) : order_(order) {
  if (order < 0) {
    throw DomainError("PHSeries: truncation order must be >= 0");
  }
  coeffs_.assign(2 * static_cast<std::size_t>(order + 1), 0.0);
}

PHSeries PHSeries::constant(int order, double value) {
  PHSeries s(order);
  s.set_coeff(0, 0, value);
  return s;
}

PHSeries PHSeries::monomial(int order, int power, double coeff, bool with_log) {
  PHSeries s(order);
  if (power < 0) throw DomainError("PHSeries::monomial: negative power");
  if (power <= order) s.set_coeff(power, with_log ? 1 : 0, coeff);
  return s;
}

PHSeries PHSeries::minus_log(int order) {
  PHSeries s(order);
  s.set_leading_log(1);
  return s;
}

std::size_t PHSeries::slot(int power, int log_power) const {
  if (power < 0 || power > order_ || log_power < 0 || log_power > 1) {
    throw DomainError("PHSeries: slot (" + std::to_string(power) + ", " + std::to_string(log_power) +
                      ") outside truncation " + std::to_string(order_));
  }
  return 2 * static_cast<std::size_t>(power) + static_cast<std::size_t>(log_power);
}

double PHSeries::coeff(int power, int log_power) const {
  if (power > order_ && power >= 0 && (log_power == 0 || log_power == 1)) return 0.0;
  return coeffs_[slot(power, log_power)];
}

void PHSeries::set_coeff(int power, int log_power, double value) { coeffs_[slot(power, log_power)] = value; }

void PHSeries::set_leading_log(int m) {
  if (m != 0 && m != 1) {
    throw DomainError("PHSeries: leading log count must be 0 or 1");
  }
  leading_log_ = m;
}

bool PHSeries::has_log_content() const { return leading_log_ != 0 || lowest_log_power() <= order_; }

int PHSeries::lowest_log_power() const {
  for (int j = 0; j <= order_; ++j) {
    if (coeff(j, 1) != 0.0) return j;
  }
  return order_ + 1;
}

PHSeries PHSeries::without_leading_log() const {
  PHSeries s = *this;
  s.leading_log_ = 0;
  return s;
}

double PHSeries::evaluate(double d) const {
  const double log_d = std::log(d);
  double value = -static_cast<double>(leading_log_) * log_d;
  double power = 1.0;
  for (int j = 0; j <= order_; ++j) {
    value += coeff(j, 0) * power + coeff(j, 1) * power * log_d;
    power *= d;
  }
  return value;
}

PHSeries PoleSeries::cleared(int power) const {
  if ((inv_d2 != 0.0 && power < 2) || (inv_d != 0.0 && power < 1)) {
    throw DomainError("PoleSeries::cleared: d^" + std::to_string(power) + " does not clear the poles");
  }
  PHSeries out = times_d_power(regular, power);
  if (inv_d != 0.0 && power - 1 <= out.order()) {
    out.set_coeff(power - 1, 0, out.coeff(power - 1, 0) + inv_d);
  }
  if (inv_d2 != 0.0 && power - 2 <= out.order()) {
    out.set_coeff(power - 2, 0, out.coeff(power - 2, 0) + inv_d2);
  }
  return out;
}

double PoleSeries::evaluate(double d) const { return inv_d2 / (d * d) + inv_d / d + regular.evaluate(d); }

namespace {

void require_same_order(const PHSeries& s, const PHSeries& t, const char* op) {
  if (s.order() != t.order()) {
    throw DomainError(std::string(op) + ": truncation orders differ (" + std::to_string(s.order()) + " vs " +
                      std::to_string(t.order()) + ")");
  }
}

}  // namespace

PHSeries add(const PHSeries& s, const PHSeries& t) {
  require_same_order(s, t, "add");
  const int m = s.leading_log() + t.leading_log();
  if (m > 1) {
    throw DomainError("add: leading log count overflow");
  }
  PHSeries out(s.order());
  out.set_leading_log(m);
  for (int j = 0; j <= s.order(); ++j) {
    for (int l = 0; l <= 1; ++l) out.set_coeff(j, l, s.coeff(j, l) + t.coeff(j, l));
  }
  return out;
}

PHSeries scale(const PHSeries& s, double factor) {
  if (s.leading_log() != 0 && factor != 1.0) {
    throw DomainError("scale: cannot rescale the -log d prefix");
  }
  PHSeries out(s.order());
  out.set_leading_log(s.leading_log());
  for (int j = 0; j <= s.order(); ++j) {
    for (int l = 0; l <= 1; ++l) out.set_coeff(j, l, factor * s.coeff(j, l));
  }
  return out;
}

PHSeries mul(const PHSeries& s, const PHSeries& t) {
  require_same_order(s, t, "mul");
  const int N = s.order();
  if (s.leading_log() != 0 && t.leading_log() != 0) {
    throw DomainError("mul: both operands carry a -log d prefix");
  }
  // -log d times a log slot at order j, or two log slots i + j <= N, is log^2.
  if ((s.leading_log() != 0 && t.lowest_log_power() <= N) || (t.leading_log() != 0 && s.lowest_log_power() <= N) ||
      s.lowest_log_power() + t.lowest_log_power() <= N) {
    throw DomainError("mul: product has a log^2 term within the truncation order");
  }
  PHSeries out(N);
  for (int i = 0; i <= N; ++i) {
    for (int j = 0; i + j <= N; ++j) {
      const int p = i + j;
      out.set_coeff(p, 0, out.coeff(p, 0) + s.coeff(i, 0) * t.coeff(j, 0));
      out.set_coeff(p, 1, out.coeff(p, 1) + s.coeff(i, 0) * t.coeff(j, 1) + s.coeff(i, 1) * t.coeff(j, 0));
    }
  }
  // -log d * t = -sum t_j d^j log d (t has no log slots within the order here).
  if (s.leading_log() != 0) {
    for (int j = 0; j <= N; ++j) out.set_coeff(j, 1, out.coeff(j, 1) - t.coeff(j, 0));
  }
  if (t.leading_log() != 0) {
    for (int j = 0; j <= N; ++j) out.set_coeff(j, 1, out.coeff(j, 1) - s.coeff(j, 0));
  }
  return out;
}

PHSeries times_d_power(const PHSeries& s, int power) {
  if (power < 0) throw DomainError("times_d_power: negative power");
  const int N = s.order();
  PHSeries out(N);
  for (int j = 0; j + power <= N; ++j) {
    out.set_coeff(j + power, 0, s.coeff(j, 0));
    out.set_coeff(j + power, 1, s.coeff(j, 1));
  }
  if (s.leading_log() != 0) {
    if (power == 0) {
      out.set_leading_log(1);
    } else if (power <= N) {
      out.set_coeff(power, 1, out.coeff(power, 1) - 1.0);
    }
  }
  return out;
}

PHSeries exp_series(const PHSeries& s) {
  const int N = s.order();
  if (s.leading_log() != 0) {
    throw DomainError("exp_series: argument carries a -log d prefix");
  }
  if (s.coeff(0, 0) != 0.0 || s.coeff(0, 1) != 0.0) {
    throw DomainError("exp_series: argument must have zero constant term");
  }
  if (s.lowest_log_power() < (N + 1) / 2 + 1) {
    throw DomainError("exp_series: log slot below order ceil(N/2)+1");
  }
  PHSeries result = PHSeries::constant(N, 1.0);
  PHSeries term = PHSeries::constant(N, 1.0);
  for (int m = 1; m <= N; ++m) {
    term = scale(mul(term, s), 1.0 / static_cast<double>(m));
    result = add(result, term);
  }
  return result;
}

PoleSeries derivative(const PHSeries& s) {
  const int N = s.order();
  PoleSeries out{PHSeries(N), 0.0, 0.0};
  out.inv_d = s.coeff(0, 1) - static_cast<double>(s.leading_log());
  for (int j = 1; j <= N; ++j) {
    const double plain = s.coeff(j, 0);
    const double logc = s.coeff(j, 1);
    // d/dd (a d^j + b d^j log d) = (j a + b) d^{j-1} + j b d^{j-1} log d
    out.regular.set_coeff(j - 1, 0, out.regular.coeff(j - 1, 0) + static_cast<double>(j) * plain + logc);
    out.regular.set_coeff(j - 1, 1, out.regular.coeff(j - 1, 1) + static_cast<double>(j) * logc);
  }
  return out;
}

PoleSeries derivative(const PoleSeries& s) {
  if (s.inv_d2 != 0.0) {
    throw DomainError("derivative: third-order poles are not represented");
  }
  PoleSeries out = derivative(s.regular);
  out.inv_d2 = -s.inv_d;
  return out;
}

PHSeries geometric_inverse(double c, const PHSeries& s) {
  if (c == 0.0) {
    throw DomainError("geometric_inverse: c must be nonzero");
  }
  if (s.leading_log() != 0 || s.coeff(0, 0) != 0.0 || s.coeff(0, 1) != 0.0) {
    throw DomainError("geometric_inverse: s must vanish at d = 0");
  }
  const int N = s.order();
  // 1/(c + s) = (1/c) sum_m (-s/c)^m
  const PHSeries ratio = scale(s, -1.0 / c);
  PHSeries result = PHSeries::constant(N, 1.0);
  PHSeries term = PHSeries::constant(N, 1.0);
  for (int m = 1; m <= N; ++m) {
    term = mul(term, ratio);
    result = add(result, term);
  }
  return scale(result, 1.0 / c);
}

}  // namespace sigmak
