#include "hftlab/baire.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hftlab/error.hpp"
#include "hftlab/function_spec.hpp"

namespace hftlab {

std::string to_string(PerturbFamily f) { return f == PerturbFamily::phi ? "phi" : "x"; }

std::string to_string(WitnessStatus s) {
  switch (s) {
    case WitnessStatus::found: return "found";
    case WitnessStatus::none: return "none";
    case WitnessStatus::inconclusive: return "inconclusive";
  }
  return "unknown";
}

HalfLineFunction perturb(const HalfLineFunction& f, double alpha, int j, PerturbFamily family, int M) {
  if (j < 1) throw Error(ErrorKind::precondition, "j must be >= 1");
  if (!std::isfinite(alpha)) throw Error(ErrorKind::precondition, "alpha must be finite");
  if (family == PerturbFamily::x && M < 2) throw Error(ErrorKind::precondition, "X perturbation needs M >= 2");
  const HalfLineFunction p = family == PerturbFamily::phi ? HalfLineFunction(Phi{alpha})
                                                          : HalfLineFunction(XAlphaM{alpha, M});
  return f + cplx{1.0 / j, 0.0} * p;
}

WitnessReport witness_from_table(const TaylorTable& table, double N, int M, int n_budget) {
  if (n_budget < 5) throw Error(ErrorKind::precondition, "n_budget must be >= 5");
  if (n_budget > table.n_max) throw Error(ErrorKind::precondition, "table is shorter than the budget");
  if (!(N > 0.0) || !std::isfinite(N)) throw Error(ErrorKind::precondition, "N must be positive");
  if (M < 0) throw Error(ErrorKind::precondition, "M must be >= 0");

  WitnessReport r;
  r.function = table.function;
  r.alpha = table.alpha;
  r.N = N;
  r.M = M;
  r.budget = n_budget;
  r.table = table;
  const double log_n = std::log(N);
  for (int n = 1; n <= n_budget; ++n) {
    const TaylorEntry& e = table.entries[n];
    if (e.flagged) {
      r.status = WitnessStatus::inconclusive;
      r.note = "entry n = " + std::to_string(n) + " is not certified (" + e.note + ")";
      return r;
    }
    const double v = coefficient_K(table, M, n);
    r.values.push_back(v);
    if (v > N) {
      // independent log-domain recheck on the stored derivative
      const double log_v = (e.derivative.log_abs() - std::lgamma(n + 1.0)) / n - M * std::log(double(n));
      if (!(log_v > log_n))
        throw Error(ErrorKind::verification_failed,
                    "witness n = " + std::to_string(n) + " does not survive the log-domain recheck");
      r.status = WitnessStatus::found;
      r.witness_n = n;
      return r;
    }
  }
  r.status = WitnessStatus::none;
  r.note = "no n <= " + std::to_string(n_budget) + " exceeds N";
  return r;
}

WitnessReport omega_witness(const HalfLineFunction& f, double alpha, double N, int n_budget, double rel_tol) {
  return theta_witness(f, alpha, N, 0, n_budget, rel_tol);
}

WitnessReport theta_witness(const HalfLineFunction& f, double alpha, double N, int M, int n_budget,
                            double rel_tol) {
  if (n_budget < 5) throw Error(ErrorKind::precondition, "n_budget must be >= 5");
  return witness_from_table(taylor_table(f, alpha, n_budget, TableMethod::automatic, rel_tol), N, M, n_budget);
}

double gap_margin(int M, double N, int j, int n) {
  const double m2 = double(M) * M;
  return std::log(m2) + std::lgamma(m2 * n + m2) -
         (std::log(2.0 * j) + n * std::log(N) + M * n * std::log(double(n)) + std::lgamma(n + 1.0));
}

double chain_link_margin(int M, int n) {
  const double m2 = double(M) * M;
  return std::lgamma(m2 * n + m2) - std::lgamma(n + 1.0) - (m2 * n + m2 - 1.0 - n) * std::log(double(n));
}

FactorialGap factorial_gap(int M, double N, int j) {
  if (M < 2) throw Error(ErrorKind::precondition, "M must be >= 2");
  if (!(N >= 1.0) || !std::isfinite(N)) throw Error(ErrorKind::precondition, "N must be >= 1");
  if (j < 1) throw Error(ErrorKind::precondition, "j must be >= 1");
  int n = 1;
  while (n <= kGapScanCap) {
    if (gap_margin(M, N, j, n) < 0.0) {
      ++n;
      continue;
    }
    int bad = 0;
    for (int m = n + 1; m <= n + kGapVerifySpan; ++m) {
      if (gap_margin(M, N, j, m) < 0.0) {
        bad = m;
        break;
      }
    }
    if (bad == 0) {
      FactorialGap g;
      g.n0 = n;
      g.verified_through = n + kGapVerifySpan;
      g.margin_at_n0 = gap_margin(M, N, j, n);
      if (n > 1) g.margin_before = gap_margin(M, N, j, n - 1);
      return g;
    }
    n = bad + 1;
  }
  throw Error(ErrorKind::budget_exhausted, "factorial-gap scan reached n = " + std::to_string(kGapScanCap));
}

int factorial_gap_n0(int M, double N, int j) { return factorial_gap(M, N, j).n0; }

double default_epsilon(int k, double alpha) {
  return std::ldexp(1.0, -k) / (1.0 + seminorm_rho(Phi{alpha}, 0).value);
}

DenseGridReport dense_grid_demo(const HalfLineFunction& f, const std::vector<double>& alphas, double N,
                                int n_budget, const EpsilonSchedule& schedule) {
  if (alphas.empty() || alphas.size() > 16) throw Error(ErrorKind::precondition, "need 1 to 16 points");
  if (std::set<double>(alphas.begin(), alphas.end()).size() != alphas.size())
    throw Error(ErrorKind::precondition, "points must be distinct");
  for (double a : alphas)
    if (!std::isfinite(a)) throw Error(ErrorKind::precondition, "points must be finite");

  DenseGridReport out;
  out.alphas = alphas;
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    const double eps = schedule(int(k) + 1, alphas[k]);
    if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(ErrorKind::precondition, "epsilon must be positive");
    out.epsilons.push_back(eps);
  }
  auto build = [&] {
    HalfLineFunction g = f;
    for (std::size_t k = 0; k < alphas.size(); ++k) g = g + cplx{out.epsilons[k], 0.0} * HalfLineFunction(Phi{alphas[k]});
    return g;
  };
  auto scan = [&](const HalfLineFunction& g) {
    std::vector<WitnessReport> reports;
    for (double a : alphas) reports.push_back(omega_witness(g, a, N, n_budget));
    return reports;
  };

  out.function = build();
  out.reports = scan(out.function);
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    if (out.reports[k].status != WitnessStatus::none) continue;
    const HalfLineFunction single = f + cplx{out.epsilons[k], 0.0} * HalfLineFunction(Phi{alphas[k]});
    if (omega_witness(single, alphas[k], N, n_budget).status == WitnessStatus::found) out.retried.push_back(int(k));
  }
  if (!out.retried.empty()) {
    for (int k : out.retried) out.epsilons[k] /= 2.0;
    out.function = build();
    out.reports = scan(out.function);
  }
  return out;
}

double remark_equivalence_check(const TaylorTable& table, int M, int n_probe) {
  if (M < 0) throw Error(ErrorKind::precondition, "M must be >= 0");
  if (n_probe < 1 || n_probe > table.n_max) throw Error(ErrorKind::precondition, "n_probe must lie in [1, n_max]");
  const LogComplex& d = table.entries[n_probe].derivative;
  if (d.is_zero()) throw Error(ErrorKind::domain, "derivative vanishes at n_probe");
  const double n = n_probe;
  const double log_k = std::log(coefficient_K(table, M, n_probe));
  const double log_rhs = 1.0 - (M + 1.0) * std::log(n) + d.log_abs() / n;
  return std::exp(log_k - log_rhs);
}

}  // namespace hftlab
