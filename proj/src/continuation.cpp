#include "hftlab/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hftlab/catalog.hpp"
#include "hftlab/error.hpp"
#include "hftlab/function_spec.hpp"
#include "hftlab/quadrature.hpp"

namespace hftlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSeriesRelTol = 1e-17;
const cplx kI{0.0, 1.0};

cplx log_mu(cplx z) {
  const cplx mu = kI * z;
  return {std::log(std::abs(mu)), principal_arg(mu)};
}

// Sums a series given by the log of its n-th term. Stops once the tail bound
// |t_N| / (1 - r_N) with nonincreasing ratios r_N < 1 is negligible.
SeriesEvaluation sum_series(const std::function<cplx(int)>& log_term, int max_terms) {
  LogSum acc;
  SeriesEvaluation out;
  out.truncation_bound = kInf;
  for (int n = 0; n < max_terms; ++n) {
    const cplx lt = log_term(n);
    const double l1 = log_term(n + 1).real(), l2 = log_term(n + 2).real();
    const double r1 = std::exp(l1 - lt.real()), r2 = std::exp(l2 - l1);
    const double total = acc.empty() ? kNegInf : acc.value().log_abs();
    if (n > 0 && r1 < 1.0 && r2 <= r1) {
      const double log_bound = lt.real() - std::log1p(-r1);
      if (log_bound < total + std::log(kSeriesRelTol)) {
        out.truncation_bound = std::exp(log_bound);
        out.terms_used = n;
        out.value = acc.value();
        return out;
      }
    }
    acc.add_log(lt);
    out.terms_used = n + 1;
  }
  out.value = acc.value();
  return out;
}

}  // namespace

cplx branch_power(cplx w, double q) {
  if (w == cplx{0.0, 0.0}) {
    if (q <= 0.0) throw Error(ErrorKind::domain, "0^q is undefined for q <= 0");
    return {0.0, 0.0};
  }
  return std::exp(q * cplx{std::log(std::abs(w)), principal_arg(w)});
}

double distance_to_cut(cplx z, double origin) {
  const double x = z.real() - origin, y = z.imag();
  return y >= 0.0 ? std::abs(x) : std::hypot(x, y);
}

CutPlanePoint::CutPlanePoint(cplx z, double origin) : z_(z), origin_(origin) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || !std::isfinite(origin))
    throw Error(ErrorKind::domain, "point must be finite");
  if (distance_to_cut(z, origin) <= kCutTolerance)
    throw Error(ErrorKind::cut_proximity, "z = " + format_complex(z) + " lies within " +
                                              format_double(kCutTolerance) + " of the cut " +
                                              format_double(origin) + " + i[0, inf)");
}

std::string to_string(SeriesVariant v) {
  return v == SeriesVariant::printed ? "printed" : "oracle_derived";
}

const std::vector<Chi0Variant>& chi0_variants() {
  static const std::vector<Chi0Variant> v = {
      {"printed", 1.0, -std::sqrt(kPi) / 4.0},
      {"minus_second", -1.0, -std::sqrt(kPi) / 4.0},
      {"half_prefactor", 1.0, 0.5},
      {"oracle_derived", -1.0, 0.5},
  };
  return v;
}

SeriesEvaluation chi0_formula(cplx z, const Chi0Variant& variant, int max_terms) {
  if (z == cplx{0.0, 0.0}) throw Error(ErrorKind::domain, "chi_0 continuation is singular at z = 0");
  const cplx lm = log_mu(z);
  const cplx mu = kI * z;
  const cplx le = 0.25 / mu;  // log of e^{1/(4 mu)}
  SeriesEvaluation s = sum_series(
      [&](int n) {
        return cplx{-n * std::log(4.0) - std::lgamma(n + 1.0) - std::log(2.0 * n + 1.0), n % 2 ? kPi : 0.0} -
               double(n) * lm;
      },
      max_terms);
  LogSum acc;
  acc.add(LogComplex::from_log(-lm));
  acc.add(LogComplex::from_complex(variant.second_sign * std::sqrt(kPi) / 2.0) *
          LogComplex::from_log(-1.5 * lm + le));
  const LogComplex third = LogComplex::from_complex(variant.third_coeff) * LogComplex::from_log(-2.0 * lm + le);
  acc.add(third * s.value);
  SeriesEvaluation out;
  out.value = acc.value();
  out.terms_used = s.terms_used;
  out.truncation_bound = std::exp(third.log_abs()) * s.truncation_bound;
  out.variant = variant.name == "printed" ? SeriesVariant::printed : SeriesVariant::oracle_derived;
  return out;
}

const Chi0Variant& chi0_frozen_variant() {
  static const int index = [] {
    const auto& vs = chi0_variants();
    for (std::size_t i = 0; i < vs.size(); ++i) {
      bool ok = true;
      for (double mu : {0.5, 1.0, 2.0, 4.0}) {
        const cplx z{0.0, -mu};
        const LogComplex q = integrate_atom_on_ray(Chi{0.0}, z, 0, 0.0, 1e-12).value;
        if (relative_difference(chi0_formula(z, vs[i]).value, q) > 1e-8) ok = false;
      }
      if (ok) return int(i);
    }
    return -1;
  }();
  if (index < 0)
    throw Error(ErrorKind::verification_failed, "no reading of the chi_0 continuation matches quadrature");
  return chi0_variants()[index];
}

SeriesEvaluation chi0_continuation(const CutPlanePoint& z) {
  if (z.origin() != 0.0) throw Error(ErrorKind::precondition, "chi_0 continuation needs the cut at origin 0");
  return chi0_formula(z.z(), chi0_frozen_variant());
}

LogComplex phi_continuation(double alpha, const CutPlanePoint& z) {
  if (z.origin() != alpha) throw Error(ErrorKind::precondition, "cut origin must equal alpha");
  const cplx w = z.z() - alpha;
  const LogComplex chi = chi0_continuation(CutPlanePoint(w, 0.0)).value;
  // \int_0^1 e^{-iwu} e^{-sqrt u} du with u = s^2 (smooth integrand)
  const QuadratureResult e = integrate_finite(
      [&](double s) { return 2.0 * s * std::exp(-kI * w * s * s - s); }, 0.0, 1.0, 1e-14);
  LogSum diff;
  diff.add(chi);
  diff.add(-e.value);
  return LogComplex::from_log(kI * w) * diff.value();
}

SeriesEvaluation psi_series(double p, cplx z, SeriesVariant variant, int max_terms) {
  if (!(p > 0.0 && p < 1.0)) throw Error(ErrorKind::precondition, "psi continuation needs p in (0, 1)");
  if (max_terms < 10) throw Error(ErrorKind::precondition, "max_terms must be >= 10");
  if (z == cplx{0.0, 0.0}) throw Error(ErrorKind::domain, "psi continuation is singular at z = 0");
  const cplx lm = log_mu(z);
  SeriesEvaluation s;
  if (variant == SeriesVariant::oracle_derived) {
    s = sum_series(
        [&](int n) {
          return cplx{std::lgamma(n * p + 1.0) - std::lgamma(n + 1.0), n % 2 ? kPi : 0.0} - (n * p + 1.0) * lm;
        },
        max_terms);
  } else {
    s = sum_series(
        [&](int n) {
          return cplx{2.0 * std::log(p) + std::lgamma((n + p) * p) - std::lgamma(n + 1.0), n % 2 ? kPi : 0.0} -
                 (n * p + p * p) * lm;
        },
        max_terms);
  }
  s.variant = variant;
  return s;
}

SeriesEvaluation psi_p_continuation(double p, const CutPlanePoint& z, int max_terms) {
  if (z.origin() != 0.0) throw Error(ErrorKind::precondition, "psi continuation needs the cut at origin 0");
  std::vector<cplx> checks = {cplx{0.0, -1.0}};
  if (z.z().imag() < 0.0) checks.push_back(z.z());
  auto matches = [&](SeriesVariant v) {
    for (cplx c : checks) {
      const LogComplex q =
          integrate_atom_on_ray(PsiP{p}, c, 0, steepest_angle(PsiP{p}, c), 1e-12).value;
      const SeriesEvaluation s = psi_series(p, c, v, max_terms);
      if (!(relative_difference(s.value, q) <= 1e-6)) return false;
    }
    return true;
  };
  const bool derived_ok = matches(SeriesVariant::oracle_derived);
  const bool printed_ok = !derived_ok && matches(SeriesVariant::printed);
  if (!derived_ok && !printed_ok)
    throw Error(ErrorKind::verification_failed, "neither psi_p series reading matches quadrature");
  const SeriesVariant chosen = derived_ok ? SeriesVariant::oracle_derived : SeriesVariant::printed;
  const SeriesVariant other = derived_ok ? SeriesVariant::printed : SeriesVariant::oracle_derived;
  SeriesEvaluation out = psi_series(p, z.z(), chosen, max_terms);
  out.other_variant = psi_series(p, z.z(), other, max_terms).value;
  return out;
}

double default_cauchy_radius(cplx sigma, double origin) { return 0.5 * distance_to_cut(sigma, origin); }

CauchyCoefficients cauchy_derivatives(const std::function<cplx(cplx)>& g, cplx sigma, double r, int n_max) {
  if (!(r > 0.0) || !std::isfinite(r)) throw Error(ErrorKind::precondition, "radius must be positive");
  if (n_max < 0) throw Error(ErrorKind::precondition, "n_max must be >= 0");
  constexpr int kMaxNodes = 1 << 16;
  int nodes = 16;
  while (nodes < 2 * (n_max + 1)) nodes *= 2;

  std::vector<cplx> samples;
  auto sample = [&](int count) {
    // samples are kept in the order of the finest grid's indices
    std::vector<cplx> next(count);
    for (int k = 0; k < count; ++k) {
      if (count > 1 && k % 2 == 0 && int(samples.size()) == count / 2) {
        next[k] = samples[k / 2];
      } else {
        next[k] = g(sigma + std::polar(r, 2.0 * kPi * k / count));
      }
    }
    samples = std::move(next);
  };
  auto coefficients = [&](double& scale) {
    const int count = int(samples.size());
    scale = 0.0;
    for (const cplx& s : samples) scale = std::max(scale, std::abs(s));
    std::vector<cplx> a(n_max + 1);
    for (int n = 0; n <= n_max; ++n) {
      cplx sum{0.0, 0.0};
      for (int k = 0; k < count; ++k) sum += samples[k] * std::polar(1.0, -2.0 * kPi * double(n) * k / count);
      a[n] = sum / double(count);  // a_n r^n
    }
    return a;
  };

  sample(nodes);
  double scale = 0.0;
  std::vector<cplx> prev = coefficients(scale);
  while (true) {
    if (2 * nodes > kMaxNodes)
      throw Error(ErrorKind::analyticity_suspect,
                  "Cauchy coefficients did not stabilize; g may not be analytic on the disc");
    nodes *= 2;
    sample(nodes);
    std::vector<cplx> cur = coefficients(scale);
    double diff = 0.0;
    for (int n = 0; n <= n_max; ++n) diff = std::max(diff, std::abs(cur[n] - prev[n]));
    prev = std::move(cur);
    if (diff <= 1e-13 * scale) break;
  }

  CauchyCoefficients out;
  out.nodes = nodes;
  out.reliable_through = -1;
  const double floor = 1e-13 * scale;
  for (int n = 0; n <= n_max; ++n) {
    const LogComplex scaled = LogComplex::from_complex(prev[n]);
    out.coefficients.push_back(LogComplex{scaled.log_abs() - n * std::log(r), scaled.phase()});
    if (out.reliable_through == n - 1 && std::abs(prev[n]) > floor) out.reliable_through = n;
  }
  return out;
}

CauchyTable phi_cauchy_table(double alpha, double sigma, double r, int n_max) {
  if (r <= 0.0) r = default_cauchy_radius(sigma, alpha);
  if (r >= distance_to_cut(sigma, alpha))
    throw Error(ErrorKind::precondition, "the Cauchy circle must stay off the cut");
  const CauchyCoefficients c = cauchy_derivatives(
      [&](cplx w) { return phi_continuation(alpha, CutPlanePoint(w, alpha)).to_complex(); }, sigma, r, n_max);
  std::vector<LogComplex> derivs;
  std::vector<bool> flagged;
  for (int n = 0; n <= n_max; ++n) {
    derivs.push_back(c.coefficients[n] * LogComplex{log_factorial(n), 0.0});
    flagged.push_back(n > c.reliable_through);
  }
  CauchyTable out;
  out.table = table_from_derivatives(Phi{alpha}, sigma, derivs, Method::cauchy_contour, flagged);
  for (auto& e : out.table.entries)
    if (e.flagged) e.note = "below the rounding floor of the contour samples";
  out.reliable_through = c.reliable_through;
  out.nodes = c.nodes;
  out.r = r;
  return out;
}

}  // namespace hftlab
