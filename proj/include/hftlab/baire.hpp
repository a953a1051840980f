#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hftlab/catalog.hpp"
#include "hftlab/transform.hpp"

namespace hftlab {

enum class PerturbFamily { phi, x };
std::string to_string(PerturbFamily f);

/// f + (1/j) Phi(alpha) or f + (1/j) XAlphaM(alpha, M), normalized.
HalfLineFunction perturb(const HalfLineFunction& f, double alpha, int j, PerturbFamily family, int M = 2);

enum class WitnessStatus { found, none, inconclusive };
std::string to_string(WitnessStatus s);

/// Finite-budget membership test for Omega(alpha, N) (M = 0, values are C)
/// or Theta_M(alpha, N) (values are K_M). Every statement holds only for
/// n <= budget.
struct WitnessReport {
  HalfLineFunction function;
  double alpha = 0.0;
  double N = 0.0;
  int M = 0;
  int budget = 0;
  WitnessStatus status = WitnessStatus::none;
  std::optional<int> witness_n;
  /// values[n - 1] is C or K_M at n, for the n inspected (1 .. last).
  std::vector<double> values;
  std::string note;
  TaylorTable table;

  double value_at(int n) const { return values.at(n - 1); }
  int last_inspected() const { return int(values.size()); }
};

WitnessReport omega_witness(const HalfLineFunction& f, double alpha, double N, int n_budget,
                            double rel_tol = kDefaultTol);
WitnessReport theta_witness(const HalfLineFunction& f, double alpha, double N, int M, int n_budget,
                            double rel_tol = kDefaultTol);
/// Same scan on a table that is already built (n_budget <= table.n_max).
WitnessReport witness_from_table(const TaylorTable& table, double N, int M, int n_budget);

/// log of M^2 (M^2 n + M^2 - 1)! - log of 2 j N^n n^{Mn} n!
double gap_margin(int M, double N, int j, int n);
/// log of (M^2 n + M^2 - 1)! - log of n! n^{M^2 n + M^2 - 1 - n}
double chain_link_margin(int M, int n);

inline constexpr int kGapScanCap = 1000000;
inline constexpr int kGapVerifySpan = 50;

struct FactorialGap {
  int n0 = 0;
  /// The inequality holds on [n0, verified_through].
  int verified_through = 0;
  /// Margin at n0 - 1, absent when n0 is the first admissible n (1).
  std::optional<double> margin_before;
  double margin_at_n0 = 0.0;
};

/// Least n0 >= 1 such that the inequality holds at n0 and on the following
/// kGapVerifySpan integers. Throws Error(budget_exhausted) past kGapScanCap.
FactorialGap factorial_gap(int M, double N, int j);
int factorial_gap_n0(int M, double N, int j);

/// Default dense-grid coefficient 2^{-k} / (1 + rho_0(Phi(alpha))), k >= 1.
double default_epsilon(int k, double alpha);
using EpsilonSchedule = std::function<double(int k, double alpha)>;

struct DenseGridReport {
  HalfLineFunction function;
  std::vector<double> alphas;
  std::vector<double> epsilons;
  std::vector<WitnessReport> reports;
  /// Indices whose epsilon was halved after a suspected cancellation.
  std::vector<int> retried;
};

/// g = f + sum_k eps_k Phi(alpha_k) and omega_witness at every alpha_k.
DenseGridReport dense_grid_demo(const HalfLineFunction& f, const std::vector<double>& alphas, double N,
                                int n_budget, const EpsilonSchedule& schedule = default_epsilon);

/// K_M(f, alpha, n) / (e n^{-(M+1)} |f^(n)(alpha)|^{1/n}).
double remark_equivalence_check(const TaylorTable& table, int M, int n_probe);

}  // namespace hftlab
