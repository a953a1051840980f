#pragma once

#include <complex>
#include <limits>
#include <vector>

namespace hftlab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Reduces an angle to (-pi, pi].
double normalize_phase(double phase);

/// Principal argument in (-pi, pi]; maps the -pi produced by a signed zero
/// imaginary part onto +pi.
double principal_arg(cplx w);

/// Complex number stored as (log|w|, arg w). Zero is log_abs = -inf with phase 0.
class LogComplex {
 public:
  LogComplex() = default;
  LogComplex(double log_abs, double phase);

  static LogComplex zero() { return {}; }
  static LogComplex one() { return {0.0, 0.0}; }
  static LogComplex from_complex(cplx w);
  /// exp(log_value) without forming the (possibly overflowing) value.
  static LogComplex from_log(cplx log_value);

  double log_abs() const { return log_abs_; }
  double phase() const { return phase_; }
  bool is_zero() const { return log_abs_ == kNegInf; }

  /// Plain complex value; overflows to inf for log_abs above ~709.
  cplx to_complex() const;
  /// Value scaled by exp(-shift), i.e. w * e^{-shift}.
  cplx scaled(double shift) const;

  LogComplex operator-() const;
  LogComplex conj() const;
  LogComplex pow(double exponent) const;

  friend LogComplex operator*(const LogComplex& a, const LogComplex& b);
  friend LogComplex operator/(const LogComplex& a, const LogComplex& b);
  friend LogComplex operator+(const LogComplex& a, const LogComplex& b);
  friend LogComplex operator-(const LogComplex& a, const LogComplex& b);

  friend bool operator==(const LogComplex&, const LogComplex&) = default;

 private:
  double log_abs_ = kNegInf;
  double phase_ = 0.0;
};

/// Relative distance |a - b| / max(|a|, |b|), computed without overflow.
double relative_difference(const LogComplex& a, const LogComplex& b);

/// Scaled accumulator: keeps sum * exp(-scale) in ordinary complex form and
/// rescales whenever a term raises the running maximum of log|term|.
class LogSum {
 public:
  void add(const LogComplex& term);
  void add_log(cplx log_term);
  LogComplex value() const;
  /// log of sum |term|; used to measure cancellation.
  double log_abs_total() const;
  bool empty() const { return scale_ == kNegInf; }

 private:
  double scale_ = kNegInf;
  cplx sum_{0.0, 0.0};
  double abs_sum_ = 0.0;
};

LogComplex log_sum(const std::vector<LogComplex>& terms);

/// log n! via lgamma.
double log_factorial(double n);

}  // namespace hftlab
