#include "hftlab/transform.hpp"

#include <cmath>
#include <limits>

#include "hftlab/error.hpp"
#include "hftlab/quadrature.hpp"
#include "hftlab/symbolic.hpp"
#include "overloaded.hpp"

namespace hftlab {
namespace {

constexpr double kEps = 2.220446049250313e-16;

LogComplex log_binomial(int n, int m) {
  return {std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0), 0.0};
}

// log Gamma(s, 1) for integer s >= 1: (s-1)! e^{-1} sum_{k<s} 1/k!
double log_upper_gamma_at_one(int s) {
  double partial = 0.0, term = 1.0;
  for (int k = 0; k < s; ++k) {
    partial += term;
    term /= (k + 1);
  }
  return std::lgamma(double(s)) - 1.0 + std::log(partial);
}

TransformValue atom_quadrature(const Atom& atom, int n, cplx z, double rel_tol) {
  QuadratureResult r;
  try {
    r = integrate_atom_on_ray(atom, z, n, steepest_angle(atom, z), rel_tol);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::invalid_contour) throw;
    r = integrate_atom_on_ray(atom, z, n, 0.0, rel_tol);
  }
  return {r.value, Method::quadrature, r.relative_error()};
}

bool at_distinguished_point(const Atom& atom, cplx z) {
  return z.imag() == 0.0 && z.real() == modulation(atom);
}

std::optional<TransformValue> atom_exact(const Atom& atom, int n, cplx z) {
  if (const auto* pe = std::get_if<PolyExp>(&atom))
    return TransformValue{polyexp_transform_derivative(*pe, n, z), Method::closed_form, 0.0};
  if (!at_distinguished_point(atom, z)) return std::nullopt;
  if (std::holds_alternative<Phi>(atom)) {
    if (!closed_form_verified(atom)) return std::nullopt;
    return TransformValue{phi_identity_derivative(n), Method::continuation_identity, 0.0};
  }
  if (!closed_form_verified(atom)) return std::nullopt;
  const auto c = closed_taylor_coeff(HalfLineFunction(demodulate(atom)), n);
  if (!c) return std::nullopt;
  return TransformValue{*c, Method::closed_form, 0.0};
}

TransformValue atom_value(const Atom& atom, int n, cplx z, double rel_tol, TableMethod how) {
  if (how != TableMethod::quadrature) {
    if (auto v = atom_exact(atom, n, z)) return *v;
    if (how == TableMethod::closed)
      throw Error(ErrorKind::precondition,
                  family_name(atom) + " has no closed form at the requested point");
  }
  return atom_quadrature(atom, n, z, rel_tol);
}

int method_rank(Method m) {
  switch (m) {
    case Method::closed_form: return 0;
    case Method::continuation_identity: return 1;
    case Method::cauchy_contour: return 2;
    case Method::quadrature: return 3;
  }
  return 3;
}

TransformValue combine(const HalfLineFunction& f, int n, cplx z, double rel_tol, TableMethod how) {
  if (z.imag() > 0.0)
    throw Error(ErrorKind::domain, "Im z > 0 is outside the transform's half-plane; use the continuation module");
  if (n < 0) throw Error(ErrorKind::precondition, "derivative order must be >= 0");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw Error(ErrorKind::precondition, "rel_tol must lie in (0, 1)");

  LogSum value, error;
  Method method = Method::closed_form;
  for (const auto& term : f.terms()) {
    const TransformValue v = atom_value(term.atom, n, z, rel_tol, how);
    const LogComplex part = LogComplex::from_complex(term.coeff) * v.value;
    value.add(part);
    if (!part.is_zero()) error.add({part.log_abs() + std::log(v.rel_error + 4.0 * kEps), 0.0});
    if (method_rank(v.method) > method_rank(method)) method = v.method;
  }
  TransformValue out{value.value(), method, 0.0};
  if (!error.empty()) {
    out.rel_error = out.value.is_zero() ? std::numeric_limits<double>::infinity()
                                        : std::exp(error.value().log_abs() - out.value.log_abs());
  }
  if (out.rel_error > 100.0 * rel_tol && f.terms().size() > 1) {
    throw Error(ErrorKind::precision_loss, "cancellation between combination terms exceeds the tolerance",
                out.value);
  }
  return out;
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::quadrature: return "quadrature";
    case Method::continuation_identity: return "continuation_identity";
    case Method::cauchy_contour: return "cauchy_contour";
  }
  return "unknown";
}

LogComplex phi_identity_derivative(int n) {
  if (n < 0) throw Error(ErrorKind::precondition, "derivative order must be >= 0");
  LogSum acc;
  for (int m = 0; m <= n; ++m) {
    const LogComplex term{log_binomial(n, m).log_abs() + std::log(2.0) + log_upper_gamma_at_one(2 * m + 2),
                          m % 2 ? kPi : 0.0};
    acc.add(term);
  }
  return acc.value() * LogComplex{0.0, normalize_phase(n * kPi / 2.0)};
}

TransformValue hft_derivative_detail(const HalfLineFunction& f, int n, cplx z, double rel_tol) {
  return combine(f, n, z, rel_tol, TableMethod::automatic);
}

TransformValue hft_derivative_quadrature(const HalfLineFunction& f, int n, cplx z, double rel_tol) {
  return combine(f, n, z, rel_tol, TableMethod::quadrature);
}

LogComplex hft_derivative(const HalfLineFunction& f, int n, cplx z, double rel_tol) {
  return hft_derivative_detail(f, n, z, rel_tol).value;
}

LogComplex hft_eval(const HalfLineFunction& f, cplx z, double rel_tol) {
  return hft_derivative(f, 0, z, rel_tol);
}

bool closed_form_verified(const Atom& atom) {
  auto check = [](const Atom& probe) {
    for (int n : {0, 1, 3}) {
      const LogComplex quad = integrate_atom_on_ray(probe, {0.0, 0.0}, n,
                                                    steepest_angle(probe, {0.0, 0.0}), 1e-12).value;
      LogComplex closed;
      if (std::holds_alternative<Phi>(probe)) {
        closed = phi_identity_derivative(n);
      } else {
        closed = *closed_taylor_coeff(HalfLineFunction(probe), n);
      }
      if (relative_difference(quad, closed) > 1e-8) return false;
    }
    return true;
  };
  static const bool chi = check(Chi{0.0});
  static const bool phi = check(Phi{0.0});
  static const bool psi = check(PsiP{1.0 / 3.0});
  static const bool x = check(XAlphaM{0.0, 2});
  return std::visit(overloaded{
                        [](const Chi&) { return chi; },
                        [](const Phi&) { return phi; },
                        [](const PsiP&) { return psi; },
                        [](const XAlphaM&) { return x; },
                        [](const PolyExp&) { return true; },
                    },
                    atom);
}

LogComplex IbpExpansion::total() const {
  LogSum acc;
  for (const auto& b : boundary_terms) acc.add(b);
  acc.add(remainder);
  return acc.value();
}

IbpExpansion ibp_expansion(const HalfLineFunction& f, int k, cplx z, double rel_tol) {
  if (k < 1) throw Error(ErrorKind::precondition, "k must be >= 1");
  if (z == cplx{0.0, 0.0}) throw Error(ErrorKind::precondition, "z must be nonzero");
  if (z.imag() > 0.0) throw Error(ErrorKind::domain, "Im z > 0 is outside the transform's half-plane");
  for (int j = 1; j <= k; ++j) {
    if (blows_up_at_zero(f, j, 0.0))
      throw Error(ErrorKind::not_ck, "function is not C^" + std::to_string(j) + " at t = 0");
  }

  const LogComplex iz = LogComplex::from_complex(cplx{0.0, 1.0} * z);
  IbpExpansion out;
  LogComplex iz_pow = iz;
  for (int j = 0; j < k; ++j) {
    out.boundary_terms.push_back(LogComplex::from_complex(eval_derivative(f, j, 0.0)) / iz_pow);
    iz_pow = iz_pow * iz;
  }
  LogSum rem;
  for (const auto& term : f.terms()) {
    QuadratureResult r;
    try {
      r = integrate_atom_on_ray(term.atom, z, 0, steepest_angle(term.atom, z), rel_tol, k);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::invalid_contour) throw;
      r = integrate_atom_on_ray(term.atom, z, 0, 0.0, rel_tol, k);
    }
    rem.add(LogComplex::from_complex(term.coeff) * r.value);
  }
  out.remainder = rem.value() / iz.pow(k);
  return out;
}

double coefficient_C(const LogComplex& derivative, int n) {
  if (n == 0) return std::exp(derivative.log_abs());
  if (derivative.is_zero()) return 0.0;
  return std::exp((derivative.log_abs() - std::lgamma(n + 1.0)) / n);
}

TaylorTable taylor_table(const HalfLineFunction& f, double alpha, int n_max, TableMethod method,
                         double rel_tol) {
  if (n_max < 1) throw Error(ErrorKind::precondition, "n_max must be >= 1");
  if (!std::isfinite(alpha)) throw Error(ErrorKind::precondition, "alpha must be finite");
  TaylorTable table{f, alpha, n_max, {}};
  // Modulation reduction: e^{i beta t} g at alpha is g at alpha - beta.
  const auto terms = f.terms();
  for (int n = 0; n <= n_max; ++n) {
    TaylorEntry entry;
    entry.n = n;
    try {
      LogSum value, error;
      Method m = Method::closed_form;
      for (const auto& term : terms) {
        const cplx z{alpha - modulation(term.atom), 0.0};
        const TransformValue v = atom_value(demodulate(term.atom), n, z, rel_tol, method);
        const LogComplex part = LogComplex::from_complex(term.coeff) * v.value;
        value.add(part);
        if (!part.is_zero()) error.add({part.log_abs() + std::log(v.rel_error + 4.0 * kEps), 0.0});
        if (method_rank(v.method) > method_rank(m)) m = v.method;
      }
      entry.derivative = value.value();
      entry.method = m;
      if (!error.empty() && terms.size() > 1) {
        const double rel = entry.derivative.is_zero()
                               ? std::numeric_limits<double>::infinity()
                               : std::exp(error.value().log_abs() - entry.derivative.log_abs());
        if (rel > 100.0 * rel_tol) {
          entry.flagged = true;
          entry.note = "cancellation between terms";
        }
      }
    } catch (const Error& e) {
      if (e.is_validation()) throw;
      entry.flagged = true;
      entry.note = std::string(to_string(e.kind())) + ": " + e.what();
      entry.method = Method::quadrature;
      if (e.best_estimate()) entry.derivative = *e.best_estimate();
    }
    entry.C = coefficient_C(entry.derivative, n);
    table.entries.push_back(entry);
  }
  check_table(table);
  return table;
}

TaylorTable table_from_derivatives(const HalfLineFunction& f, double alpha,
                                   const std::vector<LogComplex>& derivatives, Method method,
                                   const std::vector<bool>& flagged) {
  if (derivatives.size() < 2) throw Error(ErrorKind::precondition, "need derivatives for n = 0..n_max, n_max >= 1");
  TaylorTable table{f, alpha, int(derivatives.size()) - 1, {}};
  for (std::size_t n = 0; n < derivatives.size(); ++n) {
    TaylorEntry e;
    e.n = int(n);
    e.derivative = derivatives[n];
    e.method = method;
    e.flagged = n < flagged.size() && flagged[n];
    e.C = coefficient_C(e.derivative, e.n);
    table.entries.push_back(e);
  }
  check_table(table);
  return table;
}

void check_table(const TaylorTable& table) {
  if (int(table.entries.size()) != table.n_max + 1)
    throw Error(ErrorKind::verification_failed, "table must hold entries 0..n_max");
  for (int n = 0; n <= table.n_max; ++n) {
    const auto& e = table.entries[n];
    if (e.n != n || e.C != coefficient_C(e.derivative, n) || !(e.C >= 0.0))
      throw Error(ErrorKind::verification_failed, "entry " + std::to_string(n) + " is inconsistent");
  }
}

double coefficient_K(const TaylorTable& table, int M, int n) {
  if (M < 0) throw Error(ErrorKind::precondition, "M must be >= 0");
  if (n < 1 || n > table.n_max) throw Error(ErrorKind::precondition, "n must lie in [1, n_max]");
  const double C = table.entries[n].C;
  if (M == 0) return C;
  return C / std::pow(double(n), M);
}

std::optional<double> expected_growth_exponent(const HalfLineFunction& f) {
  std::optional<double> best;
  for (const auto& term : f.terms()) {
    std::optional<double> g = std::visit(
        overloaded{
            [](const Chi&) -> std::optional<double> { return 1.0; },
            [](const PsiP& p) -> std::optional<double> {
              if (p.p < 1.0) return 1.0 / p.p - 1.0;
              return std::nullopt;
            },
            [](const XAlphaM& x) -> std::optional<double> { return double(x.M) * x.M - 1.0; },
            [](const auto&) -> std::optional<double> { return std::nullopt; },
        },
        term.atom);
    if (g && (!best || *g > *best)) best = g;
  }
  return best;
}

}  // namespace hftlab
