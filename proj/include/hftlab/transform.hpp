#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hftlab/catalog.hpp"
#include "hftlab/log_complex.hpp"

namespace hftlab {

inline constexpr double kDefaultTol = 1e-10;

/// How a transform value was obtained.
enum class Method { closed_form, quadrature, continuation_identity, cauchy_contour };
std::string to_string(Method m);

struct TransformValue {
  LogComplex value;
  Method method = Method::closed_form;
  /// Estimated relative error (0 for closed forms).
  double rel_error = 0.0;
};

/// f^(z) = \int_0^\infty e^{-izt} f(t) dt for Im z <= 0.
LogComplex hft_eval(const HalfLineFunction& f, cplx z, double rel_tol = kDefaultTol);
/// n-th derivative of f^ at z. Closed forms at distinguished points,
/// steepest-descent ray quadrature elsewhere.
LogComplex hft_derivative(const HalfLineFunction& f, int n, cplx z, double rel_tol = kDefaultTol);
TransformValue hft_derivative_detail(const HalfLineFunction& f, int n, cplx z,
                                     double rel_tol = kDefaultTol);
/// Ray quadrature only, never a closed form.
TransformValue hft_derivative_quadrature(const HalfLineFunction& f, int n, cplx z,
                                         double rel_tol = kDefaultTol);

/// phi_0^(n)(0) from \int_1^\infty (1-u)^n e^{-sqrt u} du expanded with the
/// incomplete gamma values Gamma(2m+2, 1).
LogComplex phi_identity_derivative(int n);

struct IbpExpansion {
  /// f^(j)(0)/(iz)^{j+1}, j = 0..k-1.
  std::vector<LogComplex> boundary_terms;
  /// (iz)^{-k} \int_0^\infty e^{-izt} f^(k)(t) dt
  LogComplex remainder;
  LogComplex total() const;
};

IbpExpansion ibp_expansion(const HalfLineFunction& f, int k, cplx z, double rel_tol = kDefaultTol);

enum class TableMethod { automatic, closed, quadrature };

struct TaylorEntry {
  int n = 0;
  LogComplex derivative;
  /// C(f, alpha, n) = (|f^(n)(alpha)|/n!)^{1/n}; |f^(alpha)| for n = 0.
  double C = 0.0;
  Method method = Method::closed_form;
  /// Set when the value could not be certified (precision loss, budget).
  bool flagged = false;
  std::string note;
};

struct TaylorTable {
  HalfLineFunction function;
  double alpha = 0.0;
  int n_max = 0;
  std::vector<TaylorEntry> entries;
};

double coefficient_C(const LogComplex& derivative, int n);

TaylorTable taylor_table(const HalfLineFunction& f, double alpha, int n_max,
                         TableMethod method = TableMethod::automatic, double rel_tol = kDefaultTol);
/// Builds a table from externally computed derivatives (e.g. Cauchy integrals).
TaylorTable table_from_derivatives(const HalfLineFunction& f, double alpha,
                                   const std::vector<LogComplex>& derivatives, Method method,
                                   const std::vector<bool>& flagged = {});
/// Throws Error(verification_failed) if some C does not match its derivative.
void check_table(const TaylorTable& table);

/// True once the family's closed form has matched ray quadrature on a small
/// grid. Computed once per family and cached.
bool closed_form_verified(const Atom& atom);

/// K_M(f, alpha, n) = C(f, alpha, n) / n^M
double coefficient_K(const TaylorTable& table, int M, int n);

enum class RadiusClass { regular, divergent, inconclusive };
std::string to_string(RadiusClass c);

inline constexpr double kDivergentSlope = 0.2;
inline constexpr double kRegularSlope = 0.05;
inline constexpr double kMaxResidual = 0.1;
inline constexpr int kMaxWindow = 5;

struct RadiusEstimate {
  RadiusClass classification = RadiusClass::inconclusive;
  /// Estimated radius; +inf when the coefficients decay faster than geometric.
  double radius_hat = 0.0;
  /// Fitted slope b of log C_n against log n.
  double growth_exponent_hat = 0.0;
  int n_lo = 0;
  int n_hi = 0;
  /// RMS residual of the fit.
  double residual = 0.0;
  /// (n, log C_n) points entering the fit (windowed maxima).
  std::vector<std::pair<int, double>> fit_points;
  /// C_n over the whole window.
  std::vector<double> series_C;
};

/// Least-squares fit of log C_n = b log n + c + e log(n)/n + d/n over the
/// windowed maxima of C_n in [n_lo, n_hi]. When |b| is small the points are
/// refitted with b = 0 and an extra 1/sqrt(n) term (essential singularities)
/// and radius_hat = e^{-c}.
RadiusEstimate estimate_radius(const TaylorTable& table, int n_lo, int n_hi);

/// Predicted slope of log C_n against log n at the distinguished point.
std::optional<double> expected_growth_exponent(const HalfLineFunction& f);

struct SeminormValue {
  double value = 0.0;
  std::optional<double> attained_at;
  bool infinite() const;
};

/// True when (t^weight_power) f^(k)(t) is unbounded as t -> 0+. Decided from
/// the generalized power series of the combination at 0, so singular parts
/// that cancel between terms are recognized.
bool blows_up_at_zero(const HalfLineFunction& f, int k, double weight_power);

/// sup_{t >= 0} w(t) |f^(k)(t)| with w(t) = (shift + t)^power.
SeminormValue weighted_sup(const HalfLineFunction& f, int k, double power, double shift);
/// rho_l(f) = sup {(1+t)^l |f^(k)(t)| : k <= l, t >= 0}
SeminormValue seminorm_rho(const HalfLineFunction& f, int l);
/// rho_{l,k}(f) = sup_t t^l |f^(k)(t)|
SeminormValue seminorm_rho_lk(const HalfLineFunction& f, int l, int k);
/// sum_{l <= L_max} 2^{-l} rho_l(f-g)/(1 + rho_l(f-g)); the omitted tail is
/// at most 2^{-L_max}.
double metric_rho(const HalfLineFunction& f, const HalfLineFunction& g, int L_max);

}  // namespace hftlab
