#include <cmath>
#include <cstdio>
#include <sstream>

#include "hftlab/catalog.hpp"
#include "hftlab/continuation.hpp"
#include "hftlab/error.hpp"
#include "hftlab/function_spec.hpp"
#include "hftlab/quadrature.hpp"
#include "hftlab/transform.hpp"

namespace hftlab {
namespace {

const cplx kI{0.0, 1.0};

double abs_diff(const LogComplex& a, const LogComplex& b) {
  LogSum d;
  d.add(a);
  d.add(-b);
  return std::exp(d.value().log_abs());
}

LedgerLine line(std::string id, std::string variant, std::string point, const LogComplex& value,
                const LogComplex& oracle, double rel_tol) {
  return {std::move(id), std::move(variant), std::move(point), relative_difference(value, oracle) <= rel_tol,
          abs_diff(value, oracle)};
}

std::string pt(const char* name, double v) { return std::string(name) + "=" + format_double(v); }

LogComplex quad(const Atom& atom, cplx z, int n) {
  return integrate_atom_on_ray(atom, z, n, steepest_angle(atom, z), 1e-12).value;
}

}  // namespace

std::vector<LedgerLine> run_verification() {
  std::vector<LedgerLine> out;
  const double mus[] = {0.5, 1.0, 2.0, 4.0};

  // chi_0: integration-by-parts step 1/mu +- (1/mu) \int e^{-mu s^2 - s} ds
  for (double mu : mus) {
    const LogComplex oracle = quad(Chi{0.0}, {0.0, -mu}, 0);
    const double inner =
        integrate_halfline([&](double s) { return cplx{std::exp(-mu * s * s - s), 0.0}; }, 1e-12).value.to_complex().real();
    for (auto [name, sign] : {std::pair{"printed_plus", 1.0}, std::pair{"minus", -1.0}}) {
      const LogComplex v = LogComplex::from_complex(1.0 / mu + sign * inner / mu);
      out.push_back(line("chi0.ibp_step", name, pt("mu", mu), v, oracle, 1e-8));
    }
  }
  // chi_0 continuation: sign of the second term times prefactor of the series
  for (const auto& variant : chi0_variants()) {
    for (double mu : mus) {
      const cplx z{0.0, -mu};
      out.push_back(line("chi0.continuation", variant.name, pt("mu", mu), chi0_formula(z, variant).value,
                         quad(Chi{0.0}, z, 0), 1e-8));
    }
    const cplx z{-1.0, 0.0};
    out.push_back(line("chi0.continuation", variant.name, "z=" + format_complex(z),
                       chi0_formula(z, variant).value, quad(Chi{0.0}, z, 0), 1e-6));
  }
  // chi_0 derivative law 2(-i)^n (2n+1)!
  for (int n : {0, 1, 4, 9, 15}) {
    out.push_back(line("chi0.derivative_law", "printed", pt("n", n), *closed_taylor_coeff(Chi{0.0}, n),
                       quad(Chi{0.0}, 0.0, n), 1e-8));
  }

  // psi_p substitution t = s^{1/p}: printed p s^{p-1} against (1/p) s^{1/p-1}
  for (double p : {1.0 / 3.0, 0.5}) {
    for (double mu : mus) {
      const LogComplex oracle = quad(PsiP{p}, {0.0, -mu}, 0);
      const LogComplex printed = integrate_halfline(
          [&](double s) { return cplx{p * std::exp(-mu * std::pow(s, 1.0 / p) - s) * std::pow(s, p - 1.0), 0.0}; },
          1e-12).value;
      const LogComplex derived = integrate_halfline(
          [&](double s) {
            return cplx{std::exp(-mu * std::pow(s, 1.0 / p) - s) * std::pow(s, 1.0 / p - 1.0) / p, 0.0};
          },
          1e-12).value;
      const std::string where = pt("p", p) + "," + pt("mu", mu);
      out.push_back(line("psi.substitution", "printed", where, printed, oracle, 1e-8));
      out.push_back(line("psi.substitution", "oracle_derived", where, derived, oracle, 1e-8));
    }
  }
  // psi_p continuation series, both readings
  for (double p : {1.0 / 3.0, 0.5}) {
    for (double mu : mus) {
      const cplx z{0.0, -mu};
      const LogComplex oracle = quad(PsiP{p}, z, 0);
      const std::string where = pt("p", p) + "," + pt("mu", mu);
      for (SeriesVariant v : {SeriesVariant::printed, SeriesVariant::oracle_derived})
        out.push_back(line("psi.continuation", to_string(v), where, psi_series(p, z, v).value, oracle, 1e-6));
    }
  }
  // psi_p derivative law (-i)^n (1/p) Gamma((n+1)/p)
  for (double p : {1.0 / 3.0, 0.5, 0.25}) {
    for (int n : {0, 2, 6, 12}) {
      out.push_back(line("psi.derivative_law", "printed", pt("p", p) + "," + pt("n", n),
                         *closed_taylor_coeff(PsiP{p}, n), quad(PsiP{p}, 0.0, n), 1e-8));
    }
  }
  // X_{alpha,M} derivative law (-i)^n M^2 (M^2 n + M^2 - 1)!
  for (int M : {2, 3}) {
    for (int n : {0, 1, 3}) {
      out.push_back(line("x.derivative_law", "printed", pt("M", M) + "," + pt("n", n),
                         *closed_taylor_coeff(XAlphaM{0.0, M}, n), quad(XAlphaM{0.0, M}, 0.0, n), 1e-8));
    }
  }
  // PolyExp constant: printed (-i)^nu nu!/(z - i sigma)^{nu+1} against (-i)^{nu+1}
  for (int nu : {0, 1, 3}) {
    for (cplx sigma : {cplx{1.0, 0.0}, cplx{2.0, 0.5}}) {
      for (cplx z : {cplx{0.0, 0.0}, cplx{1.0, -0.5}}) {
        const PolyExp f{nu, sigma};
        const LogComplex oracle = quad(f, z, 0);
        const LogComplex base = LogComplex{std::lgamma(nu + 1.0), 0.0} /
                                LogComplex::from_complex(z - kI * sigma).pow(nu + 1.0);
        const std::string where =
            pt("nu", nu) + ",sigma=" + format_complex(sigma) + ",z=" + format_complex(z);
        out.push_back(line("polyexp.constant", "printed", where,
                           LogComplex{0.0, normalize_phase(-nu * kPi / 2.0)} * base, oracle, 1e-10));
        out.push_back(line("polyexp.constant", "oracle_derived", where,
                           LogComplex{0.0, normalize_phase(-(nu + 1) * kPi / 2.0)} * base, oracle, 1e-10));
      }
    }
  }
  // PolyExp derivative law (-i)^n (nu+n)!/(sigma + iz)^{nu+n+1}
  for (int n : {1, 4, 10}) {
    const PolyExp f{2, {1.0, 0.5}};
    out.push_back(line("polyexp.derivative_law", "oracle_derived", pt("n", n),
                       polyexp_transform_derivative(f, n, {0.5, -0.5}), quad(f, {0.5, -0.5}, n), 1e-10));
  }
  // phi_0 derivatives at 0 through the incomplete-gamma identity
  for (int n : {0, 1, 5, 12}) {
    out.push_back(line("phi.identity", "oracle_derived", pt("n", n), phi_identity_derivative(n),
                       quad(Phi{0.0}, 0.0, n), 1e-8));
  }
  // phi_alpha continuation identity in the lower half-plane
  for (double alpha : {0.0, 1.0}) {
    for (cplx z : {cplx{0.0, -1.0}, cplx{0.5, -0.5}, cplx{-1.0, -2.0}}) {
      const cplx zz = z + alpha;
      out.push_back(line("phi.continuation", "oracle_derived", pt("alpha", alpha) + ",z=" + format_complex(zz),
                         phi_continuation(alpha, CutPlanePoint(zz, alpha)), quad(Phi{alpha}, zz, 0), 1e-8));
    }
  }
  return out;
}

std::string format_ledger(const std::vector<LedgerLine>& lines) {
  std::ostringstream os;
  os << "# hftlab provenance ledger\n"
     << "# columns: formula-id variant grid-point status abs-discrepancy\n"
     << "# status is pass when the relative discrepancy against the defining integral\n"
     << "# (ray quadrature) is within the formula's tolerance\n";
  for (const auto& l : lines) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", l.abs_discrepancy);
    os << l.formula_id << ' ' << l.variant << ' ' << l.grid_point << ' ' << (l.pass ? "pass" : "fail") << ' '
       << buf << '\n';
  }
  return os.str();
}

}  // namespace hftlab
