#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "hftlab/error.hpp"
#include "hftlab/transform.hpp"

namespace hftlab {
namespace {

// Householder least squares for a tall matrix given by rows.
std::vector<double> lstsq(std::vector<std::vector<double>> a, std::vector<double> y) {
  const std::size_t m = a.size(), n = a.front().size();
  for (std::size_t j = 0; j < n; ++j) {
    double norm = 0.0;
    for (std::size_t i = j; i < m; ++i) norm += a[i][j] * a[i][j];
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const double alpha = a[j][j] > 0.0 ? -norm : norm;
    std::vector<double> v(m, 0.0);
    for (std::size_t i = j; i < m; ++i) v[i] = a[i][j];
    v[j] -= alpha;
    double vv = 0.0;
    for (std::size_t i = j; i < m; ++i) vv += v[i] * v[i];
    if (vv == 0.0) continue;
    for (std::size_t k = j; k < n; ++k) {
      double s = 0.0;
      for (std::size_t i = j; i < m; ++i) s += v[i] * a[i][k];
      s = 2.0 * s / vv;
      for (std::size_t i = j; i < m; ++i) a[i][k] -= s * v[i];
    }
    double s = 0.0;
    for (std::size_t i = j; i < m; ++i) s += v[i] * y[i];
    s = 2.0 * s / vv;
    for (std::size_t i = j; i < m; ++i) y[i] -= s * v[i];
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t jj = n; jj-- > 0;) {
    double s = y[jj];
    for (std::size_t k = jj + 1; k < n; ++k) s -= a[jj][k] * x[k];
    x[jj] = a[jj][jj] != 0.0 ? s / a[jj][jj] : 0.0;
  }
  return x;
}

struct Fit {
  std::vector<double> coef;
  double rms = 0.0;
};

Fit fit(const std::vector<std::pair<int, double>>& pts,
        const std::vector<double (*)(double)>& basis) {
  std::vector<std::vector<double>> a;
  std::vector<double> y;
  for (const auto& [n, lc] : pts) {
    std::vector<double> row;
    for (auto b : basis) row.push_back(b(double(n)));
    a.push_back(row);
    y.push_back(lc);
  }
  Fit out{lstsq(a, y), 0.0};
  double ss = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double r = y[i];
    for (std::size_t j = 0; j < basis.size(); ++j) r -= out.coef[j] * a[i][j];
    ss += r * r;
  }
  out.rms = std::sqrt(ss / double(a.size()));
  return out;
}

double b_log(double n) { return std::log(n); }
double b_one(double) { return 1.0; }
double b_log_over_n(double n) { return std::log(n) / n; }
double b_inv(double n) { return 1.0 / n; }
double b_inv_sqrt(double n) { return 1.0 / std::sqrt(n); }

}  // namespace

std::string to_string(RadiusClass c) {
  switch (c) {
    case RadiusClass::regular: return "regular";
    case RadiusClass::divergent: return "divergent";
    case RadiusClass::inconclusive: return "inconclusive";
  }
  return "unknown";
}

RadiusEstimate estimate_radius(const TaylorTable& table, int n_lo, int n_hi) {
  if (n_lo < 1 || n_hi > table.n_max || n_hi - n_lo < 8)
    throw Error(ErrorKind::precondition, "fit range must satisfy 1 <= n_lo, n_hi <= n_max, n_hi - n_lo >= 8");
  for (int n = n_lo; n <= n_hi; ++n) {
    if (table.entries[n].flagged)
      throw Error(ErrorKind::precision_loss,
                  "entry n = " + std::to_string(n) + " is flagged; choose a fit range below it");
  }

  RadiusEstimate est;
  est.n_lo = n_lo;
  est.n_hi = n_hi;
  std::vector<double> logc;
  for (int n = n_lo; n <= n_hi; ++n) {
    est.series_C.push_back(table.entries[n].C);
    logc.push_back(table.entries[n].C > 0.0 ? std::log(table.entries[n].C) : kNegInf);
  }

  // Windowed maxima damp the zeros and dips of oscillating coefficients.
  const int count = n_hi - n_lo + 1;
  const int w = std::min(kMaxWindow, count);
  std::set<int> picked;
  for (int i = 0; i + w <= count; ++i) {
    const int best = int(std::max_element(logc.begin() + i, logc.begin() + i + w) - logc.begin());
    if (logc[best] != kNegInf) picked.insert(best);
  }
  for (int i : picked) est.fit_points.emplace_back(n_lo + i, logc[i]);

  if (est.fit_points.empty()) {
    est.classification = RadiusClass::regular;
    est.radius_hat = std::numeric_limits<double>::infinity();
    return est;
  }
  if (est.fit_points.size() < 2) {
    est.classification = RadiusClass::inconclusive;
    return est;
  }

  const bool full = est.fit_points.size() >= 6;
  const Fit f = full ? fit(est.fit_points, {b_log, b_one, b_log_over_n, b_inv})
                     : fit(est.fit_points, {b_log, b_one});
  const double b = f.coef[0];
  est.growth_exponent_hat = b;
  est.residual = f.rms;

  if (std::abs(b) < kRegularSlope) {
    const Fit g = full ? fit(est.fit_points, {b_one, b_inv_sqrt, b_log_over_n, b_inv}) : fit(est.fit_points, {b_one});
    est.classification = RadiusClass::regular;
    est.radius_hat = std::exp(-g.coef[0]);
    est.residual = g.rms;
  } else if (b > kDivergentSlope && f.rms < kMaxResidual) {
    est.classification = RadiusClass::divergent;
  } else if (b <= -kRegularSlope) {
    est.classification = RadiusClass::regular;
    est.radius_hat = std::numeric_limits<double>::infinity();
  } else {
    est.classification = RadiusClass::inconclusive;
  }
  return est;
}

}  // namespace hftlab
