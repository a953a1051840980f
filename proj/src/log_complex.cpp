#include "hftlab/log_complex.hpp"

#include <algorithm>
#include <cmath>

namespace hftlab {

double normalize_phase(double phase) {
  if (!std::isfinite(phase)) return phase;
  double r = std::remainder(phase, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

double principal_arg(cplx w) {
  double a = std::arg(w);
  return a == -kPi ? kPi : a;
}

LogComplex::LogComplex(double log_abs, double phase)
    : log_abs_(log_abs), phase_(log_abs == kNegInf ? 0.0 : normalize_phase(phase)) {}

LogComplex LogComplex::from_complex(cplx w) {
  if (w == cplx{0.0, 0.0}) return {};
  return {std::log(std::abs(w)), principal_arg(w)};
}

LogComplex LogComplex::from_log(cplx log_value) {
  return {log_value.real(), log_value.imag()};
}

cplx LogComplex::to_complex() const {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(std::exp(log_abs_), phase_);
}

cplx LogComplex::scaled(double shift) const {
  if (is_zero()) return {0.0, 0.0};
  return std::polar(std::exp(log_abs_ - shift), phase_);
}

LogComplex LogComplex::operator-() const {
  if (is_zero()) return {};
  return {log_abs_, phase_ + kPi};
}

LogComplex LogComplex::conj() const { return {log_abs_, -phase_}; }

LogComplex LogComplex::pow(double exponent) const {
  if (is_zero()) return exponent == 0.0 ? one() : LogComplex{};
  return {log_abs_ * exponent, phase_ * exponent};
}

LogComplex operator*(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return {a.log_abs_ + b.log_abs_, a.phase_ + b.phase_};
}

LogComplex operator/(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero()) return {};
  return {a.log_abs_ - b.log_abs_, a.phase_ - b.phase_};
}

LogComplex operator+(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const double m = std::max(a.log_abs_, b.log_abs_);
  const cplx s = a.scaled(m) + b.scaled(m);
  if (s == cplx{0.0, 0.0}) return {};
  return {m + std::log(std::abs(s)), principal_arg(s)};
}

LogComplex operator-(const LogComplex& a, const LogComplex& b) { return a + (-b); }

double relative_difference(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero() && b.is_zero()) return 0.0;
  const double m = std::max(a.log_abs(), b.log_abs());
  return std::abs(a.scaled(m) - b.scaled(m));
}

void LogSum::add(const LogComplex& term) {
  if (term.is_zero()) return;
  if (term.log_abs() > scale_) {
    const double factor = scale_ == kNegInf ? 0.0 : std::exp(scale_ - term.log_abs());
    sum_ *= factor;
    abs_sum_ *= factor;
    scale_ = term.log_abs();
  }
  const cplx v = term.scaled(scale_);
  sum_ += v;
  abs_sum_ += std::abs(v);
}

void LogSum::add_log(cplx log_term) { add(LogComplex::from_log(log_term)); }

LogComplex LogSum::value() const {
  if (scale_ == kNegInf || sum_ == cplx{0.0, 0.0}) return {};
  return {scale_ + std::log(std::abs(sum_)), principal_arg(sum_)};
}

double LogSum::log_abs_total() const {
  if (scale_ == kNegInf) return kNegInf;
  return scale_ + std::log(abs_sum_);
}

LogComplex log_sum(const std::vector<LogComplex>& terms) {
  LogSum acc;
  for (const auto& t : terms) acc.add(t);
  return acc.value();
}

double log_factorial(double n) { return std::lgamma(n + 1.0); }

}  // namespace hftlab
