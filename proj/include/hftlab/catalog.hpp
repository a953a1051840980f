#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hftlab/log_complex.hpp"

namespace hftlab {

// The function families. Each atom is a product of an optional modulation
// e^{i alpha t} and a decaying profile.

/// e^{i alpha t} e^{-sqrt(t)}
struct Chi {
  double alpha = 0.0;
  friend bool operator==(const Chi&, const Chi&) = default;
};

/// e^{i alpha t} e^{-sqrt(t + 1)}
struct Phi {
  double alpha = 0.0;
  friend bool operator==(const Phi&, const Phi&) = default;
};

/// e^{-t^p}, p > 0
struct PsiP {
  double p = 0.5;
  friend bool operator==(const PsiP&, const PsiP&) = default;
};

/// e^{i alpha t} exp(-t^{1/M^2}), M >= 2
struct XAlphaM {
  double alpha = 0.0;
  int M = 2;
  friend bool operator==(const XAlphaM&, const XAlphaM&) = default;
};

/// t^nu e^{-sigma t}, Re sigma > 0
struct PolyExp {
  int nu = 0;
  cplx sigma{1.0, 0.0};
  friend bool operator==(const PolyExp&, const PolyExp&) = default;
};

using Atom = std::variant<Chi, Phi, PsiP, XAlphaM, PolyExp>;

struct Term {
  cplx coeff{1.0, 0.0};
  Atom atom;
  friend bool operator==(const Term&, const Term&) = default;
};

/// Finite linear combination. Always flat, sorted by atom and free of
/// duplicate atoms and zero coefficients once built through HalfLineFunction.
struct Combination {
  std::vector<Term> terms;
  friend bool operator==(const Combination&, const Combination&) = default;
};

class HalfLineFunction {
 public:
  using Variant = std::variant<Chi, Phi, PsiP, XAlphaM, PolyExp, Combination>;

  HalfLineFunction() : HalfLineFunction(Combination{}) {}
  HalfLineFunction(Chi f);
  HalfLineFunction(Phi f);
  HalfLineFunction(PsiP f);
  HalfLineFunction(XAlphaM f);
  HalfLineFunction(PolyExp f);
  /// Normalizes: merges duplicate atoms, drops zero coefficients, sorts.
  HalfLineFunction(Combination f);
  explicit HalfLineFunction(const Atom& atom);

  static HalfLineFunction zero() { return HalfLineFunction(Combination{}); }
  static HalfLineFunction combination(
      const std::vector<std::pair<cplx, HalfLineFunction>>& parts);

  const Variant& variant() const { return v_; }
  bool is_combination() const { return std::holds_alternative<Combination>(v_); }
  bool is_zero() const;
  /// The function as a list of weighted atoms (a bare atom has weight 1).
  std::vector<Term> terms() const;

  friend bool operator==(const HalfLineFunction&, const HalfLineFunction&) = default;

 private:
  Variant v_;
};

HalfLineFunction operator+(const HalfLineFunction& f, const HalfLineFunction& g);
HalfLineFunction operator-(const HalfLineFunction& f, const HalfLineFunction& g);
HalfLineFunction operator*(cplx c, const HalfLineFunction& f);

/// Checks the family invariants; throws Error(precondition) on violation.
void validate(const Atom& atom);

/// Modulation frequency alpha of the atom (0 for PsiP and PolyExp). This is
/// also the point where the closed-form boundary derivatives hold.
double modulation(const Atom& atom);
double distinguished_point(const HalfLineFunction& f);
/// The same atom with alpha set to 0.
Atom demodulate(const Atom& atom);
/// Coefficient of t in the exponential factor e^{-sigma t} (0 unless PolyExp).
cplx linear_rate(const Atom& atom);
std::string family_name(const Atom& atom);

/// Total order used to canonicalize combinations.
bool atom_less(const Atom& a, const Atom& b);

cplx eval(const HalfLineFunction& f, double t);
/// Exact k-th derivative from the symbolic representation.
cplx eval_derivative(const HalfLineFunction& f, int k, double t);

/// Closed-form transform derivative at the atom's distinguished point, when
/// the family admits one (Chi, PsiP, XAlphaM, PolyExp).
std::optional<LogComplex> closed_taylor_coeff(const HalfLineFunction& f, int n);
/// n-th derivative of the rational transform nu!/(sigma + i z)^{nu+1} at any z.
LogComplex polyexp_transform_derivative(const PolyExp& f, int n, cplx z);

struct SmoothnessReport {
  HalfLineFunction function;
  bool schwartz_member = true;
  /// Lowest derivative order that is unbounded at t = 0.
  std::optional<int> first_failing_derivative;
  /// Largest m with f in S^m (nullopt means m = infinity).
  std::optional<int> sm_order() const {
    if (!first_failing_derivative) return std::nullopt;
    return *first_failing_derivative - 1;
  }
};

SmoothnessReport smoothness_report(const HalfLineFunction& f);

}  // namespace hftlab
