#pragma once

#include <functional>

#include "hftlab/catalog.hpp"
#include "hftlab/log_complex.hpp"

namespace hftlab {

/// Integration path. A rotated ray is t = r e^{i angle}, r in [0, inf); the
/// signed angle points into the half of the sector where the integrand decays.
struct ContourSpec {
  enum class Kind { real_axis, rotated_ray, finite_segment };
  Kind kind = Kind::real_axis;
  double angle = 0.0;
  double a = 0.0;
  double b = 0.0;

  static ContourSpec real_axis() { return {}; }
  static ContourSpec ray(double angle) { return {Kind::rotated_ray, angle, 0.0, 0.0}; }
  static ContourSpec segment(double a, double b) { return {Kind::finite_segment, 0.0, a, b}; }
};

/// The error estimate is kept on the same log scale as the value:
/// |error| <= exp(log_abs_error). Exact zero error is log_abs_error = -inf.
struct QuadratureResult {
  LogComplex value;
  double log_abs_error = kNegInf;
  int nodes_used = 0;
  ContourSpec contour;
  /// log of sum |node contribution|; the gap to value.log_abs() measures
  /// cancellation.
  double log_abs_mass = kNegInf;

  double relative_error() const;
};

struct QuadratureOptions {
  double rel_tol = 1e-12;
  /// Refinement levels of the double-exponential rule (each halves the step).
  int max_levels = 9;
  /// Subinterval cap for adaptive Gauss-Kronrod.
  int max_subintervals = 4000;
};

/// Safety factor in the refinement contract: one more refinement level never
/// reports an error estimate larger than this factor times the previous one,
/// once the rule has entered its convergent regime.
inline constexpr double kRefinementSafetyFactor = 10.0;

/// Integrand given by its logarithm at complex t (the value is exp of it);
/// -inf real part means zero.
using LogIntegrand = std::function<cplx(cplx t)>;

/// Double-exponential (exp-sinh) rule on the ray t = r e^{i angle}. Tolerates
/// integrable endpoint singularities at 0 and accumulates in the log domain.
QuadratureResult integrate_ray_log(const LogIntegrand& log_integrand, double angle,
                                   const QuadratureOptions& options = {});

/// \int_0^\infty f(t) dt along the real axis.
QuadratureResult integrate_halfline(const std::function<cplx(double)>& integrand, double rel_tol);

/// Adaptive Gauss-Kronrod (7/15) bisection on [a, b].
QuadratureResult integrate_finite(const std::function<cplx(double)>& integrand, double a, double b,
                                  double rel_tol, int max_subintervals = 4000);

/// Derivative transform \int_0^\infty e^{-izt} (-it)^n f(t) dt on a rotated ray.
/// theta in (0, pi/2) is the rotation magnitude; the direction is chosen so
/// that e^{-izt} decays along the ray.
QuadratureResult integrate_rotated(const HalfLineFunction& f, cplx z, int n, double theta,
                                   double rel_tol = 1e-12);

/// Steepest-descent ray direction for the moment integral of one atom at z:
/// the angle that turns e^{-(sigma + i(z - alpha)) t} into pure decay,
/// clamped to the atom's sector of analyticity and decay.
double steepest_angle(const Atom& atom, cplx z);

/// Moment integral \int_0^\infty e^{-izt} (-it)^n atom^{(k)}(t) dt on the ray
/// of the given signed angle, k = f_order. Throws Error(invalid_contour) when
/// the ray leaves the atom's sector or e^{-izt} grows along it.
QuadratureResult integrate_atom_on_ray(const Atom& atom, cplx z, int n, double angle,
                                       double rel_tol = 1e-12, int f_order = 0);

/// \int_0^x e^{-u^2} du. Series for |x| <= 3, continued fraction for the
/// complementary tail beyond.
double erf_integral(double x);

namespace detail {
double erf_integral_series(double x);
double erf_integral_tail(double x);
}  // namespace detail

}  // namespace hftlab
