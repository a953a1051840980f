#pragma once

#include <vector>

#include "hftlab/catalog.hpp"

namespace hftlab {

/// Exact k-th derivative of one catalog atom, written as
///
///   d^k/dt^k atom(t) = e^{i alpha t} * E(s) * sum_i c_i s^{e_i},   s = t + shift
///
/// where E(s) = exp(-s^q) for the radical and power families and
/// E(s) = exp(-sigma s) for PolyExp. The term list is built by the recursion
/// d/ds [s^e E] = e s^{e-1} E - q s^{e+q-1} E, and the modulation enters
/// through Leibniz' rule.
class SymbolicDerivative {
 public:
  struct Term {
    cplx coeff;
    double exponent;
  };

  SymbolicDerivative(const Atom& atom, int order);

  int order() const { return order_; }
  double modulation() const { return alpha_; }
  double shift() const { return shift_; }
  const std::vector<Term>& terms() const { return terms_; }

  /// Most negative exponent among the terms (meaningful near s = 0).
  double min_exponent() const;
  /// True when the derivative is unbounded as t -> 0+.
  bool singular_at_zero() const;

  /// log of the derivative without the e^{i alpha t} factor, at complex t in
  /// the sector where the profile is analytic. Returns -inf real part for 0.
  cplx log_profile(cplx t) const;
  /// The derivative itself (modulation included) at real t >= 0.
  cplx value(double t) const;

 private:
  int order_;
  bool linear_exp_ = false;
  double q_ = 0.5;
  double shift_ = 0.0;
  cplx sigma_{0.0, 0.0};
  double alpha_ = 0.0;
  std::vector<Term> terms_;
};

}  // namespace hftlab
