#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hftlab/log_complex.hpp"
#include "hftlab/transform.hpp"

namespace hftlab {

/// Points closer than this to the excluded ray are rejected.
inline constexpr double kCutTolerance = 1e-8;

/// Principal branch w^q = exp(q (log|w| + i arg w)), arg in (-pi, pi].
cplx branch_power(cplx w, double q);

/// Distance from z to the ray origin + i[0, inf).
double distance_to_cut(cplx z, double origin);

/// A point of the plane minus origin + i[0, inf).
class CutPlanePoint {
 public:
  /// Throws Error(cut_proximity) within kCutTolerance of the ray.
  CutPlanePoint(cplx z, double origin = 0.0);
  cplx z() const { return z_; }
  double origin() const { return origin_; }

 private:
  cplx z_;
  double origin_;
};

enum class SeriesVariant { printed, oracle_derived };
std::string to_string(SeriesVariant v);

struct SeriesEvaluation {
  LogComplex value;
  int terms_used = 0;
  /// Bound on the absolute value of the omitted tail.
  double truncation_bound = 0.0;
  SeriesVariant variant = SeriesVariant::oracle_derived;
  /// The competing variant at the same point, when it was evaluated.
  std::optional<LogComplex> other_variant;
};

/// One candidate reading of the chi_0 continuation
///   1/mu + s2 (sqrt(pi)/2) mu^{-3/2} e^{1/(4 mu)} + c3 mu^{-2} e^{1/(4 mu)} S(mu),
///   S(mu) = sum (-1)^n / (4^n n! (2n+1) mu^n),   mu = iz.
struct Chi0Variant {
  std::string name;
  double second_sign;
  double third_coeff;
};

/// The four sign/prefactor readings; the first is the printed one.
const std::vector<Chi0Variant>& chi0_variants();
SeriesEvaluation chi0_formula(cplx z, const Chi0Variant& variant, int max_terms = 400);
/// The variant that survived verification against quadrature (computed once).
const Chi0Variant& chi0_frozen_variant();

/// Analytic continuation of chi_0^ to the plane minus i[0, inf).
SeriesEvaluation chi0_continuation(const CutPlanePoint& z);

/// Phi_alpha(z) = e^{i(z-alpha)} [chi_0^(z - alpha) - \int_0^1 e^{-i(z-alpha)u} e^{-sqrt u} du],
/// defined off alpha + i[0, inf).
LogComplex phi_continuation(double alpha, const CutPlanePoint& z);

/// psi_p^ continuation, p in (0, 1). Printed reading:
///   p^2 (iz)^{-p^2} sum (-1)^n/n! Gamma((n+p)p) (iz)^{-np};
/// term-wise integration:
///   sum (-1)^n Gamma(np+1) / (n! (iz)^{np+1}).
SeriesEvaluation psi_series(double p, cplx z, SeriesVariant variant, int max_terms = 400);
/// Evaluates both readings, checks them against quadrature at z = -i (and at
/// z itself when Im z < 0) and returns the one that matches. Throws
/// Error(verification_failed) when neither does.
SeriesEvaluation psi_p_continuation(double p, const CutPlanePoint& z, int max_terms = 400);

struct CauchyCoefficients {
  /// a_n = g^(n)(sigma)/n!, n = 0..n_max.
  std::vector<LogComplex> coefficients;
  int nodes = 0;
  /// Largest n with |a_n| r^n above the rounding floor of the samples; higher
  /// coefficients are noise.
  int reliable_through = 0;
};

/// Taylor coefficients by the trapezoid rule on |w - sigma| = r, doubling the
/// node count until stable. Throws Error(analyticity_suspect) otherwise.
CauchyCoefficients cauchy_derivatives(const std::function<cplx(cplx)>& g, cplx sigma, double r,
                                      int n_max);
/// Default radius: half the distance from sigma to the cut at origin.
double default_cauchy_radius(cplx sigma, double origin);

/// Taylor table of Phi_alpha at a real point sigma != alpha, from Cauchy
/// integrals of phi_continuation on |w - sigma| = r. Entries past
/// reliable_through are flagged. r <= 0 selects default_cauchy_radius.
struct CauchyTable {
  TaylorTable table;
  int reliable_through = 0;
  int nodes = 0;
  double r = 0.0;
};
CauchyTable phi_cauchy_table(double alpha, double sigma, double r, int n_max);

// Constant-verification protocol.

struct LedgerLine {
  std::string formula_id;
  std::string variant;
  std::string grid_point;
  bool pass = false;
  double abs_discrepancy = 0.0;
};

/// Checks every printed closed form against its defining integral on a fixed
/// grid and reports one line per (formula, variant, grid point).
std::vector<LedgerLine> run_verification();
/// Line-oriented ledger text: '#' comment header, then
/// `<formula-id> <variant> <grid-point> <status> <abs-discrepancy>`.
std::string format_ledger(const std::vector<LedgerLine>& lines);

}  // namespace hftlab
