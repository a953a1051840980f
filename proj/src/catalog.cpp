#include "hftlab/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "hftlab/error.hpp"
#include "overloaded.hpp"
#include "hftlab/symbolic.hpp"

namespace hftlab {
namespace {

auto atom_key(const Atom& a) {
  // (family index, four numeric fields) gives a total order on atoms.
  return std::visit(
      overloaded{
          [](const Chi& f) { return std::tuple{0, f.alpha, 0.0, 0.0, 0.0}; },
          [](const Phi& f) { return std::tuple{1, f.alpha, 0.0, 0.0, 0.0}; },
          [](const PsiP& f) { return std::tuple{2, f.p, 0.0, 0.0, 0.0}; },
          [](const XAlphaM& f) { return std::tuple{3, f.alpha, double(f.M), 0.0, 0.0}; },
          [](const PolyExp& f) {
            return std::tuple{4, double(f.nu), f.sigma.real(), f.sigma.imag(), 0.0};
          },
      },
      a);
}

std::vector<Term> normalize_terms(std::vector<Term> terms) {
  for (const auto& t : terms) validate(t.atom);
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& a, const Term& b) { return atom_less(a.atom, b.atom); });
  std::vector<Term> out;
  for (const auto& t : terms) {
    if (!out.empty() && out.back().atom == t.atom) {
      out.back().coeff += t.coeff;
    } else {
      out.push_back(t);
    }
  }
  std::erase_if(out, [](const Term& t) { return t.coeff == cplx{0.0, 0.0}; });
  return out;
}

}  // namespace

void validate(const Atom& atom) {
  std::visit(
      overloaded{
          [](const Chi& f) {
            if (!std::isfinite(f.alpha)) throw Error(ErrorKind::precondition, "chi: alpha must be finite");
          },
          [](const Phi& f) {
            if (!std::isfinite(f.alpha)) throw Error(ErrorKind::precondition, "phi: alpha must be finite");
          },
          [](const PsiP& f) {
            if (!(f.p > 0.0) || !std::isfinite(f.p))
              throw Error(ErrorKind::precondition, "psi: p must be a finite positive number");
          },
          [](const XAlphaM& f) {
            if (!std::isfinite(f.alpha)) throw Error(ErrorKind::precondition, "x: alpha must be finite");
            if (f.M < 2) throw Error(ErrorKind::precondition, "x: M must be >= 2");
          },
          [](const PolyExp& f) {
            if (f.nu < 0) throw Error(ErrorKind::precondition, "polyexp: nu must be >= 0");
            if (!(f.sigma.real() > 0.0) || !std::isfinite(f.sigma.imag()))
              throw Error(ErrorKind::precondition, "polyexp: Re sigma must be > 0");
          },
      },
      atom);
}

bool atom_less(const Atom& a, const Atom& b) { return atom_key(a) < atom_key(b); }

HalfLineFunction::HalfLineFunction(Chi f) : v_(f) { validate(f); }
HalfLineFunction::HalfLineFunction(Phi f) : v_(f) { validate(f); }
HalfLineFunction::HalfLineFunction(PsiP f) : v_(f) { validate(f); }
HalfLineFunction::HalfLineFunction(XAlphaM f) : v_(f) { validate(f); }
HalfLineFunction::HalfLineFunction(PolyExp f) : v_(f) { validate(f); }
HalfLineFunction::HalfLineFunction(Combination f)
    : v_(Combination{normalize_terms(std::move(f.terms))}) {}
HalfLineFunction::HalfLineFunction(const Atom& atom)
    : v_(std::visit([](const auto& a) { return Variant{a}; }, atom)) {
  validate(atom);
}

HalfLineFunction HalfLineFunction::combination(
    const std::vector<std::pair<cplx, HalfLineFunction>>& parts) {
  Combination c;
  for (const auto& [w, f] : parts) {
    for (const auto& t : f.terms()) c.terms.push_back({w * t.coeff, t.atom});
  }
  return HalfLineFunction(std::move(c));
}

bool HalfLineFunction::is_zero() const {
  const auto* c = std::get_if<Combination>(&v_);
  return c != nullptr && c->terms.empty();
}

std::vector<Term> HalfLineFunction::terms() const {
  return std::visit(overloaded{
                        [](const Combination& c) { return c.terms; },
                        [](const auto& a) { return std::vector<Term>{Term{{1.0, 0.0}, Atom{a}}}; },
                    },
                    v_);
}

HalfLineFunction operator+(const HalfLineFunction& f, const HalfLineFunction& g) {
  return HalfLineFunction::combination({{1.0, f}, {1.0, g}});
}
HalfLineFunction operator-(const HalfLineFunction& f, const HalfLineFunction& g) {
  return HalfLineFunction::combination({{1.0, f}, {-1.0, g}});
}
HalfLineFunction operator*(cplx c, const HalfLineFunction& f) {
  return HalfLineFunction::combination({{c, f}});
}

double modulation(const Atom& atom) {
  return std::visit(overloaded{
                        [](const Chi& f) { return f.alpha; },
                        [](const Phi& f) { return f.alpha; },
                        [](const XAlphaM& f) { return f.alpha; },
                        [](const auto&) { return 0.0; },
                    },
                    atom);
}

double distinguished_point(const HalfLineFunction& f) {
  const auto terms = f.terms();
  return terms.empty() ? 0.0 : modulation(terms.front().atom);
}

Atom demodulate(const Atom& atom) {
  return std::visit(overloaded{
                        [](Chi f) { f.alpha = 0.0; return Atom{f}; },
                        [](Phi f) { f.alpha = 0.0; return Atom{f}; },
                        [](XAlphaM f) { f.alpha = 0.0; return Atom{f}; },
                        [](const auto& f) { return Atom{f}; },
                    },
                    atom);
}

cplx linear_rate(const Atom& atom) {
  if (const auto* pe = std::get_if<PolyExp>(&atom)) return pe->sigma;
  return {0.0, 0.0};
}

std::string family_name(const Atom& atom) {
  static const char* names[] = {"chi", "phi", "psi", "x", "polyexp"};
  return names[atom.index()];
}

cplx eval(const HalfLineFunction& f, double t) { return eval_derivative(f, 0, t); }

cplx eval_derivative(const HalfLineFunction& f, int k, double t) {
  if (!(t >= 0.0)) throw Error(ErrorKind::domain, "functions are defined for t >= 0 only");
  cplx sum{0.0, 0.0};
  for (const auto& term : f.terms()) {
    const SymbolicDerivative d(term.atom, k);
    if (t == 0.0 && d.singular_at_zero()) {
      throw Error(ErrorKind::not_ck, family_name(term.atom) + " is not C^" + std::to_string(k) +
                                         " at 0: derivative unbounded as t -> 0+");
    }
    sum += term.coeff * d.value(t);
  }
  return sum;
}

LogComplex polyexp_transform_derivative(const PolyExp& f, int n, cplx z) {
  const cplx base = f.sigma + cplx{0.0, 1.0} * z;
  const LogComplex b = LogComplex::from_complex(base);
  const double order = f.nu + n + 1.0;
  return LogComplex{log_factorial(f.nu + n) - order * b.log_abs(),
                    -n * kPi / 2.0 - order * b.phase()};
}

std::optional<LogComplex> closed_taylor_coeff(const HalfLineFunction& f, int n) {
  if (n < 0) throw Error(ErrorKind::precondition, "n must be >= 0");
  const double phase = -n * kPi / 2.0;  // (-i)^n
  auto atom_closed = [&](const Atom& atom) -> std::optional<LogComplex> {
    return std::visit(
        overloaded{
            [&](const Chi&) -> std::optional<LogComplex> {
              return LogComplex{std::log(2.0) + std::lgamma(2.0 * n + 2.0), phase};
            },
            [&](const PsiP& g) -> std::optional<LogComplex> {
              return LogComplex{-std::log(g.p) + std::lgamma((n + 1.0) / g.p), phase};
            },
            [&](const XAlphaM& g) -> std::optional<LogComplex> {
              const double m2 = double(g.M) * g.M;
              return LogComplex{std::log(m2) + std::lgamma(m2 * n + m2), phase};
            },
            [&](const PolyExp& g) -> std::optional<LogComplex> {
              return polyexp_transform_derivative(g, n, {0.0, 0.0});
            },
            [](const Phi&) -> std::optional<LogComplex> { return std::nullopt; },
        },
        atom);
  };

  const auto terms = f.terms();
  if (terms.empty()) return LogComplex::zero();
  const double alpha0 = modulation(terms.front().atom);
  LogSum acc;
  for (const auto& t : terms) {
    if (modulation(t.atom) != alpha0) return std::nullopt;
    const auto c = atom_closed(t.atom);
    if (!c) return std::nullopt;
    acc.add(LogComplex::from_complex(t.coeff) * *c);
  }
  return acc.value();
}

SmoothnessReport smoothness_report(const HalfLineFunction& f) {
  SmoothnessReport report{f, true, std::nullopt};
  for (const auto& term : f.terms()) {
    if (std::holds_alternative<Phi>(term.atom) || std::holds_alternative<PolyExp>(term.atom)) continue;
    int limit = 64;
    if (const auto* ps = std::get_if<PsiP>(&term.atom)) {
      if (ps->p == std::round(ps->p)) continue;  // e^{-t^p} with integer p is entire in t
      limit = std::max(limit, int(std::ceil(ps->p)) + 2);
    }
    for (int k = 1; k <= limit; ++k) {
      if (SymbolicDerivative(term.atom, k).singular_at_zero()) {
        if (!report.first_failing_derivative || k < *report.first_failing_derivative)
          report.first_failing_derivative = k;
        break;
      }
    }
  }
  report.schwartz_member = !report.first_failing_derivative.has_value();
  return report;
}

}  // namespace hftlab
