#include <algorithm>
#include <cmath>

#include "hftlab/error.hpp"
#include "hftlab/quadrature.hpp"
#include "hftlab/symbolic.hpp"

namespace hftlab {
namespace {

constexpr double kMaxRayAngle = 5.0 * kPi / 12.0;

// Exponent q of the exp(-t^q) profile, or 0 for PolyExp.
double profile_power(const Atom& atom) {
  if (const auto* ps = std::get_if<PsiP>(&atom)) return ps->p;
  if (const auto* x = std::get_if<XAlphaM>(&atom)) return 1.0 / (double(x->M) * x->M);
  if (std::holds_alternative<PolyExp>(atom)) return 0.0;
  return 0.5;
}

}  // namespace

double steepest_angle(const Atom& atom, cplx z) {
  const cplx w = linear_rate(atom) + cplx{0.0, 1.0} * (z - modulation(atom));
  if (w == cplx{0.0, 0.0}) return -kPi / 4.0;
  double limit = kMaxRayAngle;
  const double q = profile_power(atom);
  if (q > 0.0) limit = std::min(limit, 0.9 * kPi / (2.0 * q));
  return std::clamp(-principal_arg(w), -limit, limit);
}

QuadratureResult integrate_atom_on_ray(const Atom& atom, cplx z, int n, double angle, double rel_tol,
                                       int f_order) {
  if (z.imag() > 0.0) throw Error(ErrorKind::domain, "transform integrals need Im z <= 0");
  if (n < 0) throw Error(ErrorKind::precondition, "derivative order must be >= 0");
  if (!(std::abs(angle) < kPi / 2.0)) throw Error(ErrorKind::invalid_contour, "ray must stay in Re t > 0");

  const double q = profile_power(atom);
  if (q > 0.0 && !(std::abs(angle) * q < kPi / 2.0)) {
    throw Error(ErrorKind::invalid_contour,
                family_name(atom) + ": ray leaves the sector where exp(-t^q) decays");
  }
  const cplx zs = z - modulation(atom);
  const cplx w = linear_rate(atom) + cplx{0.0, 1.0} * zs;
  const double rate = (w * std::polar(1.0, angle)).real();
  const bool strict = std::holds_alternative<PolyExp>(atom);
  if (strict ? !(rate > 0.0) : rate < -1e-14 * std::abs(w)) {
    throw Error(ErrorKind::invalid_contour, "e^{-izt} grows along the requested ray");
  }

  const SymbolicDerivative profile(atom, f_order);
  const cplx minus_i{0.0, -1.0};
  QuadratureOptions opts;
  opts.rel_tol = rel_tol;
  return integrate_ray_log(
      [&](cplx t) {
        cplx l = minus_i * zs * t + profile.log_profile(t);
        if (n > 0) l += double(n) * std::log(minus_i * t);
        return l;
      },
      angle, opts);
}

QuadratureResult integrate_rotated(const HalfLineFunction& f, cplx z, int n, double theta, double rel_tol) {
  if (!(theta > 0.0 && theta < kPi / 2.0))
    throw Error(ErrorKind::precondition, "rotation angle must lie in (0, pi/2)");
  if (z.imag() > 0.0) throw Error(ErrorKind::domain, "transform integrals need Im z <= 0");

  QuadratureResult total;
  LogSum value, error, mass;
  bool first = true;
  for (const auto& term : f.terms()) {
    const cplx w = linear_rate(term.atom) + cplx{0.0, 1.0} * (z - modulation(term.atom));
    const double angle = w.imag() > 0.0 ? -theta : (w.imag() < 0.0 ? theta : -theta);
    const QuadratureResult r = integrate_atom_on_ray(term.atom, z, n, angle, rel_tol);
    const LogComplex c = LogComplex::from_complex(term.coeff);
    value.add(c * r.value);
    error.add(LogComplex{c.log_abs() + r.log_abs_error, 0.0});
    mass.add(LogComplex{c.log_abs() + r.log_abs_mass, 0.0});
    total.nodes_used += r.nodes_used;
    if (first) total.contour = r.contour;
    first = false;
  }
  total.value = value.value();
  total.log_abs_error = error.empty() ? kNegInf : error.value().log_abs();
  total.log_abs_mass = mass.empty() ? kNegInf : mass.value().log_abs();
  return total;
}

}  // namespace hftlab
