#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hftlab/baire.hpp"
#include "hftlab/continuation.hpp"
#include "hftlab/error.hpp"
#include "hftlab/quadrature.hpp"
#include "hftlab/transform.hpp"

using namespace hftlab;

namespace {

const cplx I{0.0, 1.0};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail << "first failure: " << what << "; ";
      pass = false;
    }
  }
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

void chi0_derivative_law(Outcome& o) {
  double worst_abs = 0.0, worst_phase = 0.0;
  for (int n = 0; n <= 15; ++n) {
    const TransformValue q = hft_derivative_quadrature(Chi{0.0}, n, 0.0);
    const double expected = std::log(2.0) + std::lgamma(2.0 * n + 2.0);
    const double ea = rel(q.value.log_abs(), expected);
    const double ep = std::abs(normalize_phase(q.value.phase() + n * kPi / 2.0));
    worst_abs = std::max(worst_abs, ea);
    worst_phase = std::max(worst_phase, ep);
    o.require(q.method == Method::quadrature, "n=" + std::to_string(n) + " not by quadrature");
    o.require(ea <= 1e-6, "log_abs at n=" + std::to_string(n));
    o.require(ep <= 1e-6, "phase at n=" + std::to_string(n));
  }
  const TaylorTable t = taylor_table(Chi{0.0}, 0.0, 40);
  for (const auto& e : t.entries) o.require(e.method == Method::closed_form, "table entry not closed form");
  o.detail << "max rel log_abs err " << worst_abs << ", max phase err " << worst_phase
           << ", table n<=40 closed form";
}

void psi_derivative_law(Outcome& o) {
  double worst = 0.0;
  for (double p : {0.5, 1.0 / 3.0}) {
    for (int n = 0; n <= 12; ++n) {
      const TransformValue q = hft_derivative_quadrature(PsiP{p}, n, 0.0);
      const double expected = std::log(1.0 / p) + std::lgamma((n + 1.0) / p);
      const double e = rel(q.value.log_abs(), expected);
      worst = std::max(worst, e);
      o.require(e <= 1e-5, "p=" + std::to_string(p) + " n=" + std::to_string(n));
    }
  }
  for (int n = 0; n <= 40; ++n) {
    const LogComplex a = hft_derivative(PsiP{0.5}, n, 0.0);
    const LogComplex b = hft_derivative(Chi{0.0}, n, 0.0);
    o.require(a.log_abs() == b.log_abs() && a.phase() == b.phase(), "p=1/2 closed form differs at n=" + std::to_string(n));
  }
  o.detail << "max rel log_abs err " << worst << ", p=1/2 closed form identical to chi_0 for n<=40";
}

void pole_radius(Outcome& o) {
  double worst = 0.0;
  for (double alpha : {0.0, 1.0, 2.0}) {
    for (double sigma : {1.0, 2.0}) {
      const RadiusEstimate r = estimate_radius(taylor_table(PolyExp{0, {sigma, 0.0}}, alpha, 40), 10, 40);
      const double expected = std::hypot(alpha, sigma);
      const double e = rel(r.radius_hat, expected);
      worst = std::max(worst, e);
      o.require(r.classification == RadiusClass::regular, "not regular");
      o.require(e <= 0.02, "radius off at alpha=" + std::to_string(alpha) + " sigma=" + std::to_string(sigma));
    }
  }
  o.detail << "6 grid points regular, max rel radius err " << worst;
}

void natural_boundary_slopes(Outcome& o) {
  struct Case {
    HalfLineFunction f;
    const char* name;
    double slope, tol;
  };
  const std::vector<Case> cases = {{Chi{0.0}, "Chi(0)", 1.0, 0.05},
                                   {PsiP{0.25}, "PsiP(1/4)", 3.0, 0.1},
                                   {XAlphaM{0.0, 2}, "XAlphaM(0,2)", 3.0, 0.1}};
  for (const auto& c : cases) {
    const RadiusEstimate r = estimate_radius(taylor_table(c.f, 0.0, 40), 10, 40);
    o.require(r.classification == RadiusClass::divergent, std::string(c.name) + " not divergent");
    o.require(std::abs(r.growth_exponent_hat - c.slope) <= c.tol, std::string(c.name) + " slope");
    o.detail << c.name << " slope " << r.growth_exponent_hat << "; ";
  }
}

void continuation_oracle(Outcome& o) {
  double worst_chi = 0.0;
  for (double mu : {0.5, 1.0, 2.0, 4.0}) {
    const SeriesEvaluation s = chi0_continuation(CutPlanePoint(-mu * I));
    const QuadratureResult q =
        integrate_halfline([mu](double t) { return cplx{std::exp(-mu * t - std::sqrt(t)), 0.0}; }, 1e-12);
    const double e = relative_difference(s.value, q.value);
    worst_chi = std::max(worst_chi, e);
    o.require(e <= 1e-8, "chi0 at mu=" + std::to_string(mu));
  }
  const double boundary =
      relative_difference(chi0_continuation(CutPlanePoint(cplx{-1.0, 0.0})).value,
                          hft_derivative_quadrature(Chi{0.0}, 0, cplx{-1.0, 0.0}).value);
  o.require(boundary <= 1e-6, "chi0 at z=-1");

  double worst_psi = 0.0;
  for (double p : {1.0 / 3.0, 0.5}) {
    for (cplx z : {-I, -2.0 * I, 1.0 - I, -0.5 - 0.5 * I}) {
      const SeriesEvaluation s = psi_p_continuation(p, CutPlanePoint(z));
      const double e = relative_difference(s.value, hft_derivative_quadrature(PsiP{p}, 0, z).value);
      worst_psi = std::max(worst_psi, e);
      o.require(s.variant == SeriesVariant::oracle_derived, "psi variant");
      o.require(e <= 1e-6, "psi p=" + std::to_string(p));
    }
  }

  const std::vector<LedgerLine> ledger = run_verification();
  std::map<std::string, std::set<std::string>> seen;
  int plus_pass = 0, plus_fail = 0;
  for (const auto& l : ledger) {
    seen[l.formula_id].insert(l.variant);
    if (l.formula_id == "chi0.continuation" && l.variant == "printed") (l.pass ? plus_pass : plus_fail)++;
  }
  for (const char* id : {"chi0.derivative_law", "chi0.continuation", "chi0.ibp_step", "psi.derivative_law",
                         "psi.substitution", "psi.continuation", "polyexp.constant", "polyexp.derivative_law",
                         "x.derivative_law", "phi.identity", "phi.continuation"})
    o.require(seen.count(id) == 1, std::string("no ledger entry for ") + id);
  o.require(plus_pass + plus_fail > 0, "no ledger entry for the printed + variant");
  o.detail << "chi0 max rel err " << worst_chi << ", z=-1 rel err " << boundary << ", psi max rel err " << worst_psi
           << ", ledger " << ledger.size() << " lines, printed + variant: " << plus_pass << " pass / " << plus_fail
           << " fail";
}

void cauchy_radius(Outcome& o) {
  const CauchyTable c = phi_cauchy_table(0.0, 2.0, 0.5, 60);
  const RadiusEstimate r = estimate_radius(c.table, 3, c.reliable_through);
  o.require(r.classification == RadiusClass::regular, "not regular");
  o.require(std::abs(r.radius_hat - 2.0) <= 0.1, "radius");
  o.detail << "radius_hat " << r.radius_hat << " from n in [3, " << c.reliable_through << "], " << c.nodes
           << " contour nodes";
}

void derivative_bound(Outcome& o) {
  const std::vector<HalfLineFunction> fs = {Phi{0.0}, Phi{1.0}, PolyExp{0, {1.0, 0.0}}, PolyExp{2, {1.0, 0.0}}};
  const std::vector<cplx> grid = {0.0, -I, 1.0, -1.0 - 0.5 * I, 2.5 - 0.1 * I, -3.0};
  int checks = 0, violations = 0;
  for (const auto& f : fs) {
    for (int n = 0; n <= 10; ++n) {
      const double bound = weighted_sup(f, 0, n + 2, 1.0).value;
      for (cplx z : grid) {
        ++checks;
        if (std::exp(hft_derivative(f, n, z).log_abs()) > bound) ++violations;
      }
    }
  }
  o.require(violations == 0, std::to_string(violations) + " violations");
  o.detail << checks << " checks, " << violations << " violations";
}

void witness_suite(Outcome& o) {
  const WitnessReport chi = omega_witness(Chi{0.0}, 0.0, 10.0, 30);
  int brute = 0;
  for (int n = 1; n <= 30 && brute == 0; ++n)
    if ((std::log(2.0) + std::lgamma(2.0 * n + 2.0) - std::lgamma(n + 1.0)) / n > std::log(10.0)) brute = n;
  o.require(chi.status == WitnessStatus::found, "Chi(0) no witness");
  o.require(chi.witness_n && *chi.witness_n == brute, "Chi(0) witness differs from brute force");

  const WitnessReport mixed =
      omega_witness(perturb(PolyExp{0, {1.0, 0.0}}, 0.0, 10, PerturbFamily::phi), 0.0, 10.0, 30);
  o.require(mixed.status == WitnessStatus::found, "perturbed pole no witness");

  const WitnessReport theta = theta_witness(XAlphaM{0.0, 2}, 0.0, 5.0, 2, 40);
  o.require(theta.status == WitnessStatus::found, "theta no witness");

  auto n_of = [](const WitnessReport& r) { return r.witness_n ? std::to_string(*r.witness_n) : std::string("none"); };
  o.detail << "Chi(0) n=" << n_of(chi) << " (brute force " << brute << "), perturbed pole n=" << n_of(mixed)
           << ", theta XAlphaM(0,2) n=" << n_of(theta);
}

void factorial_gap_suite(Outcome& o) {
  int points = 0, vacuous = 0;
  for (int M : {2, 3}) {
    for (double N : {3.0, 10.0}) {
      for (int j : {5, 50}) {
        const int n0 = factorial_gap_n0(M, N, j);
        for (int n = n0; n <= n0 + 50; ++n) o.require(gap_margin(M, N, j, n) >= 0.0, "inequality fails past n0");
        if (n0 > 1)
          o.require(gap_margin(M, N, j, n0 - 1) < 0.0, "inequality holds at n0-1");
        else
          ++vacuous;
        ++points;
      }
    }
  }
  int links = 0;
  for (int M : {2, 3})
    for (int n : {1, 2, 5, 20, 100}) {
      o.require(chain_link_margin(M, n) >= 0.0, "chain link");
      ++links;
    }
  o.detail << points << " (M,N,j) points, " << vacuous << " with n0=1 (no n0-1 to test), " << links
           << " chain links verified";
}

void structural_invariants(Outcome& o) {
  double worst_mod = 0.0;
  for (double alpha : {-1.5, 0.7, 2.0}) {
    for (cplx z : {cplx{0.0}, -I, 1.0 - 0.5 * I, -2.0 - 0.1 * I}) {
      worst_mod = std::max(worst_mod, relative_difference(hft_eval(Chi{alpha}, z), hft_eval(Chi{0.0}, z - alpha)));
      worst_mod = std::max(worst_mod, relative_difference(hft_eval(Phi{alpha}, z), hft_eval(Phi{0.0}, z - alpha)));
    }
  }
  o.require(worst_mod <= 1e-8, "modulation identity");

  double worst_rot = 0.0;
  for (const HalfLineFunction& f : {HalfLineFunction(Chi{0.0}), HalfLineFunction(PsiP{0.3}),
                                    HalfLineFunction(PolyExp{2, {1.0, 0.5}})}) {
    for (cplx z : {-I, 0.3 - I}) {
      for (int n : {0, 3}) {
        const LogComplex a = integrate_rotated(f, z, n, kPi / 6.0, 3e-9).value;
        const LogComplex b = integrate_rotated(f, z, n, kPi / 4.0, 3e-9).value;
        worst_rot = std::max(worst_rot, relative_difference(a, b));
      }
    }
  }
  o.require(worst_rot <= 1e-8, "rotation independence");

  for (int k = 1; k <= 3; ++k) {
    const double r2 = std::exp(ibp_expansion(Phi{0.0}, k, -100.0 * I).remainder.log_abs());
    const double r3 = std::exp(ibp_expansion(Phi{0.0}, k, -1000.0 * I).remainder.log_abs());
    const double exponent = std::log10(r2 / r3);
    o.require(std::abs(exponent - (k + 1)) <= 0.5, "IBP remainder decay at k=" + std::to_string(k));
    o.detail << "IBP k=" << k << " decay " << exponent << "; ";
  }

  const std::vector<HalfLineFunction> fs = {Phi{0.0}, PolyExp{0, {1.0, 0.0}}, PolyExp{2, {1.0, 0.5}},
                                            HalfLineFunction(Phi{1.0}) + cplx{0.5, 0.0} * HalfLineFunction(Chi{0.0})};
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = 0; j < fs.size(); ++j) {
      o.require(metric_rho(fs[i], fs[j], 10) == metric_rho(fs[j], fs[i], 10), "metric symmetry");
      for (std::size_t k = 0; k < fs.size(); ++k)
        o.require(metric_rho(fs[i], fs[j], 10) <= metric_rho(fs[i], fs[k], 10) + metric_rho(fs[k], fs[j], 10) + 1e-12,
                  "triangle inequality");
    }
  double prev = 3.0;
  for (int j : {1, 2, 4, 8, 16}) {
    const double d = metric_rho(perturb(PolyExp{0, {1.0, 0.0}}, 0.0, j, PerturbFamily::phi), PolyExp{0, {1.0, 0.0}}, 20);
    o.require(d < prev, "metric not decreasing in j");
    prev = d;
  }

  const TaylorTable chi = taylor_table(Chi{0.0}, 0.0, 200);
  for (int n = 1; n <= 200; ++n) o.require(coefficient_K(chi, 0, n) == chi.entries[n].C, "K_0 != C");
  const double ratio = remark_equivalence_check(chi, 1, 200);
  o.require(std::abs(ratio - 1.0) <= 0.05, "remark ratio");
  o.detail << "modulation " << worst_mod << ", rotation " << worst_rot << ", remark ratio at n=200 " << ratio;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const std::vector<Criterion> criteria = {
      {"chi_0 derivative law", chi0_derivative_law},
      {"psi_p derivative law", psi_derivative_law},
      {"pole-family radius recovery", pole_radius},
      {"natural-boundary slopes", natural_boundary_slopes},
      {"continuation versus oracle", continuation_oracle},
      {"radius from Cauchy coefficients of Phi_0", cauchy_radius},
      {"derivative bound suite", derivative_bound},
      {"witness suite", witness_suite},
      {"factorial gap", factorial_gap_suite},
      {"structural invariants", structural_invariants},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].run(o);
    } catch (const Error& e) {
      o.pass = false;
      o.detail << "error " << to_string(e.kind()) << ": " << e.what();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2zu %s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, secs,
                o.detail.str().c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
