#include "hftlab/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "hftlab/error.hpp"

namespace hftlab {
namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double snap(double e) {
  const double r = std::round(e);
  return std::abs(e - r) < 1e-12 * std::max(1.0, std::abs(r)) ? r : e;
}

cplx ipow(cplx base, int n) {
  cplx r{1.0, 0.0};
  for (int i = 0; i < n; ++i) r *= base;
  return r;
}

using Key = std::pair<int, int>;  // exponent j*q - m

}  // namespace

SymbolicDerivative::SymbolicDerivative(const Atom& atom, int order) : order_(order) {
  if (order < 0) throw Error(ErrorKind::precondition, "derivative order must be >= 0");
  validate(atom);

  if (const auto* pe = std::get_if<PolyExp>(&atom)) {
    linear_exp_ = true;
    sigma_ = pe->sigma;
    double falling = 1.0;  // nu!/(nu-m)!
    for (int m = 0; m <= std::min(order, pe->nu); ++m) {
      if (m > 0) falling *= (pe->nu - m + 1);
      terms_.push_back({binomial(order, m) * falling * ipow(-sigma_, order - m),
                        static_cast<double>(pe->nu - m)});
    }
    return;
  }

  std::visit(
      [this](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, Chi>) {
          q_ = 0.5; shift_ = 0.0; alpha_ = a.alpha;
        } else if constexpr (std::is_same_v<T, Phi>) {
          q_ = 0.5; shift_ = 1.0; alpha_ = a.alpha;
        } else if constexpr (std::is_same_v<T, PsiP>) {
          q_ = a.p;
        } else if constexpr (std::is_same_v<T, XAlphaM>) {
          q_ = 1.0 / (a.M * a.M); alpha_ = a.alpha;
        }
      },
      atom);

  // Derivatives of the bare profile exp(-s^q), orders 0..order.
  std::vector<std::map<Key, double>> profile(order + 1);
  profile[0][{0, 0}] = 1.0;
  for (int m = 1; m <= order; ++m) {
    for (const auto& [key, a] : profile[m - 1]) {
      const auto [j, mm] = key;
      const double e = snap(j * q_ - mm);
      if (e != 0.0) profile[m][{j, mm + 1}] += a * e;
      profile[m][{j + 1, mm + 1}] += -q_ * a;
    }
  }

  std::map<Key, cplx> combined;
  const cplx ia{0.0, alpha_};
  for (int m = 0; m <= order; ++m) {
    const cplx w = binomial(order, m) * ipow(ia, order - m);
    if (w == cplx{0.0, 0.0}) continue;
    for (const auto& [key, a] : profile[m]) combined[key] += w * a;
  }
  for (const auto& [key, c] : combined) {
    if (c == cplx{0.0, 0.0}) continue;
    terms_.push_back({c, snap(key.first * q_ - key.second)});
  }
}

double SymbolicDerivative::min_exponent() const {
  double e = std::numeric_limits<double>::infinity();
  for (const auto& t : terms_) e = std::min(e, t.exponent);
  return e;
}

bool SymbolicDerivative::singular_at_zero() const {
  return shift_ == 0.0 && !terms_.empty() && min_exponent() < 0.0;
}

cplx SymbolicDerivative::log_profile(cplx t) const {
  const cplx s = t + shift_;
  if (s == cplx{0.0, 0.0}) {
    cplx sum{0.0, 0.0};
    for (const auto& term : terms_) {
      if (term.exponent < 0.0) return {std::numeric_limits<double>::infinity(), 0.0};
      if (term.exponent == 0.0) sum += term.coeff;
    }
    const LogComplex v = LogComplex::from_complex(sum);
    return {v.log_abs(), v.phase()};
  }
  const cplx log_s = std::log(s);
  const cplx log_prefactor = linear_exp_ ? -sigma_ * t : -std::exp(q_ * log_s);
  LogSum acc;
  for (const auto& term : terms_) acc.add_log(std::log(term.coeff) + term.exponent * log_s);
  const LogComplex v = acc.value();
  if (v.is_zero()) return {kNegInf, 0.0};
  return log_prefactor + cplx{v.log_abs(), v.phase()};
}

cplx SymbolicDerivative::value(double t) const {
  const cplx lp = log_profile(cplx{t, 0.0});
  if (lp.real() == kNegInf) return {0.0, 0.0};
  return std::exp(lp + cplx{0.0, alpha_ * t});
}

}  // namespace hftlab
