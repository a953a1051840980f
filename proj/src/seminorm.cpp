#include <cmath>
#include <limits>
#include <map>

#include "hftlab/error.hpp"
#include "hftlab/symbolic.hpp"
#include "hftlab/transform.hpp"

namespace hftlab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kPointsPerDecade = 40;
constexpr double kGridStart = -12.0;  // log10 t
constexpr double kGridEnd = 6.0;
constexpr double kGridCap = 300.0;

// Profile exponent q and modulation for atoms with a t^q singularity at 0.
std::optional<std::pair<double, double>> radical_profile(const Atom& atom) {
  if (const auto* c = std::get_if<Chi>(&atom)) return std::pair{0.5, c->alpha};
  if (const auto* p = std::get_if<PsiP>(&atom)) return std::pair{p->p, 0.0};
  if (const auto* x = std::get_if<XAlphaM>(&atom)) return std::pair{1.0 / (double(x->M) * x->M), x->alpha};
  return std::nullopt;
}

class LogDerivative {
 public:
  LogDerivative(const HalfLineFunction& f, int k) {
    for (const auto& term : f.terms()) {
      parts_.push_back({std::log(term.coeff), SymbolicDerivative(term.atom, k)});
      if (parts_.back().d.singular_at_zero()) singular_ = true;
    }
  }
  bool singular_at_zero() const { return singular_; }
  double operator()(double t) const {
    LogSum acc;
    for (const auto& p : parts_) {
      const cplx lp = p.d.log_profile(cplx{t, 0.0});
      if (lp.real() == kNegInf) continue;
      acc.add_log(p.log_coeff + lp + cplx{0.0, p.d.modulation() * t});
    }
    return acc.value().log_abs();
  }

 private:
  struct Part {
    cplx log_coeff;
    SymbolicDerivative d;
  };
  std::vector<Part> parts_;
  bool singular_ = false;
};

}  // namespace

bool SeminormValue::infinite() const { return std::isinf(value); }

bool blows_up_at_zero(const HalfLineFunction& f, int k, double weight_power) {
  if (k < 0) throw Error(ErrorKind::precondition, "derivative order must be >= 0");
  const double limit = k - weight_power;  // exponents gamma < limit can blow up
  if (limit <= 0.0) return false;
  // Generalized series at 0: c e^{i alpha t} e^{-t^q} = sum c (i alpha)^m/m! (-1)^j/j! t^{m + j q}.
  std::map<long long, std::pair<cplx, double>> series;
  for (const auto& term : f.terms()) {
    const auto prof = radical_profile(term.atom);
    if (!prof) continue;
    const auto [q, alpha] = *prof;
    for (int j = 0; j * q < limit; ++j) {
      for (int m = 0; m + j * q < limit; ++m) {
        const double gamma = m + j * q;
        double falling = 1.0;
        for (int i = 0; i < k; ++i) falling *= (gamma - i);
        if (std::abs(falling) < 1e-12) continue;
        const cplx c = term.coeff * std::pow(cplx{0.0, alpha}, m) *
                       std::exp(-std::lgamma(m + 1.0) - std::lgamma(j + 1.0)) * (j % 2 ? -1.0 : 1.0) * falling;
        if (c == cplx{0.0, 0.0}) continue;
        auto& slot = series[std::llround(gamma * 1e9)];
        slot.first += c;
        slot.second += std::abs(c);
      }
    }
  }
  for (const auto& [key, v] : series) {
    if (std::abs(v.first) > 1e-12 * v.second) return true;
  }
  return false;
}

namespace {

// Supremum search for w(t) |f^(k)(t)| over a log-spaced grid; the grid values
// of log|f^(k)| are cached so several weights can share them.
class SupSearch {
 public:
  SupSearch(const HalfLineFunction& f, int k) : f_(f), k_(k), logd_(f, k) {
    const double dx = 1.0 / kPointsPerDecade;
    for (int i = 0; kGridStart + i * dx <= kGridEnd + 1e-9; ++i) push(kGridStart + i * dx);
  }

  SeminormValue sup(double power, double shift) {
    if (f_.is_zero()) return {0.0, 0.0};
    if (blows_up_at_zero(f_, k_, shift > 0.0 ? 0.0 : power)) return {kInf, 0.0};
    auto weight = [&](double x) {
      return power == 0.0 ? 0.0 : power * std::log(shift + std::pow(10.0, x));
    };
    auto objective = [&](double x) { return weight(x) + logd_(std::pow(10.0, x)); };

    double best = kNegInf, best_t = 0.0;
    if (!logd_.singular_at_zero()) {
      const double lw = power == 0.0 ? 0.0 : power * std::log(shift);
      if (lw != kNegInf) best = lw + logd_(0.0);
    }
    auto argmax = [&] {
      std::size_t b = 0;
      double bv = kNegInf;
      for (std::size_t i = 0; i < xs_.size(); ++i) {
        const double v = weight(xs_[i]) + vals_[i];
        if (v > bv) { bv = v; b = i; }
      }
      return b;
    };
    std::size_t ib = argmax();
    // Slowly decaying profiles (e.g. t^l exp(-t^{1/9})) peak far out.
    while (ib + 1 == xs_.size() && xs_.back() < kGridCap) {
      const double x0 = xs_.back();
      for (int i = 1; i <= kPointsPerDecade; ++i) push(x0 + double(i) / kPointsPerDecade);
      ib = argmax();
    }

    // Golden-section refinement in log t around the best grid point.
    double lo = xs_[ib > 0 ? ib - 1 : 0], hi = xs_[std::min(ib + 1, xs_.size() - 1)];
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = objective(x1), f2 = objective(x2);
    for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
      if (f1 > f2) {
        hi = x2; x2 = x1; f2 = f1;
        x1 = hi - g * (hi - lo);
        f1 = objective(x1);
      } else {
        lo = x1; x1 = x2; f1 = f2;
        x2 = lo + g * (hi - lo);
        f2 = objective(x2);
      }
    }
    const double candidates[] = {weight(xs_[ib]) + vals_[ib], f1, f2};
    const double cx[] = {xs_[ib], x1, x2};
    for (int i = 0; i < 3; ++i) {
      if (candidates[i] > best) {
        best = candidates[i];
        best_t = std::pow(10.0, cx[i]);
      }
    }
    if (best == kNegInf) return {0.0, std::nullopt};
    return {std::exp(best), best_t};
  }

 private:
  void push(double x) {
    xs_.push_back(x);
    vals_.push_back(logd_(std::pow(10.0, x)));
  }

  const HalfLineFunction& f_;
  int k_;
  LogDerivative logd_;
  std::vector<double> xs_, vals_;
};

SeminormValue rho_from(std::vector<SupSearch>& searches, int l) {
  SeminormValue best{0.0, std::nullopt};
  for (int k = 0; k <= l; ++k) {
    const SeminormValue v = searches[k].sup(l, 1.0);
    if (v.value > best.value || !best.attained_at) best = v;
    if (best.infinite()) break;
  }
  return best;
}

}  // namespace

SeminormValue weighted_sup(const HalfLineFunction& f, int k, double power, double shift) {
  if (k < 0 || power < 0.0 || shift < 0.0) throw Error(ErrorKind::precondition, "bad seminorm parameters");
  if (f.is_zero()) return {0.0, 0.0};
  return SupSearch(f, k).sup(power, shift);
}

SeminormValue seminorm_rho(const HalfLineFunction& f, int l) {
  if (l < 0) throw Error(ErrorKind::precondition, "l must be >= 0");
  std::vector<SupSearch> searches;
  for (int k = 0; k <= l; ++k) searches.emplace_back(f, k);
  return rho_from(searches, l);
}

SeminormValue seminorm_rho_lk(const HalfLineFunction& f, int l, int k) {
  if (l < 0) throw Error(ErrorKind::precondition, "l must be >= 0");
  return weighted_sup(f, k, l, 0.0);
}

double metric_rho(const HalfLineFunction& f, const HalfLineFunction& g, int L_max) {
  if (L_max < 0) throw Error(ErrorKind::precondition, "L_max must be >= 0");
  // f - g and g - f are exact negatives; fix one orientation so that the
  // result is bitwise symmetric.
  HalfLineFunction d = f - g;
  if (d.is_zero()) return 0.0;
  const cplx lead = d.terms().front().coeff;
  if (lead.real() < 0.0 || (lead.real() == 0.0 && lead.imag() < 0.0)) d = g - f;
  std::vector<SupSearch> searches;
  for (int k = 0; k <= L_max; ++k) searches.emplace_back(d, k);
  double sum = 0.0;
  for (int l = 0; l <= L_max; ++l) {
    const double r = rho_from(searches, l).value;
    sum += std::ldexp(std::isinf(r) ? 1.0 : r / (1.0 + r), -l);
  }
  return sum;
}

}  // namespace hftlab
