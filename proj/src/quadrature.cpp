#include "hftlab/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "hftlab/error.hpp"
#include "hftlab/function_spec.hpp"

namespace hftlab {
namespace {

constexpr double kEps = 2.220446049250313e-16;
constexpr double kHalfPi = kPi / 2.0;

// exp-sinh map: r = exp(pi/2 sinh u). Beyond |u| = 6.5 the nodes leave the
// double range for any integrand of interest.
constexpr double kUCap = 6.5;
constexpr double kBaseStep = 0.125;
// A node is negligible below exp(-60) of the running maximum.
constexpr double kNegligible = 60.0;

struct RayNodes {
  const LogIntegrand& f;
  double angle;
  int evaluations = 0;

  // log of the weighted contribution at node u (without the step h).
  cplx operator()(double u) {
    const double lx = kHalfPi * std::sinh(u);
    const cplx t = std::polar(std::exp(lx), angle);
    const cplx lf = f(t);
    ++evaluations;
    if (std::isnan(lf.real()) || std::isnan(lf.imag())) {
      if (lf.real() == kNegInf) return {kNegInf, 0.0};
      throw Error(ErrorKind::domain, "integrand evaluation produced NaN");
    }
    if (lf.real() == kNegInf) return {kNegInf, 0.0};
    return lf + cplx{std::log(kHalfPi * std::cosh(u)) + lx, angle};
  }
};

// Walks outward from u = 0 until the contributions are negligible. Returns the
// last index kept (in units of kBaseStep, sign given by dir).
int find_edge(RayNodes& nodes, int dir, double& running_max, LogSum& level0) {
  const int k_cap = static_cast<int>(kUCap / kBaseStep);
  int quiet = 0;
  double prev = kNegInf;
  for (int k = 1; k <= k_cap; ++k) {
    const cplx c = nodes(dir * k * kBaseStep);
    level0.add_log(c);
    running_max = std::max(running_max, c.real());
    const bool negligible = c.real() < running_max - kNegligible && c.real() <= prev;
    quiet = negligible ? quiet + 1 : 0;
    prev = c.real();
    if (quiet >= 3) return k;
  }
  if (prev > running_max - 30.0) {
    throw Error(ErrorKind::divergent_tail,
                dir > 0 ? "integrand does not decay along the contour"
                        : "integrand is not integrable at t = 0");
  }
  return k_cap;
}

}  // namespace

double QuadratureResult::relative_error() const {
  if (log_abs_error == kNegInf) return 0.0;
  if (value.is_zero()) return std::numeric_limits<double>::infinity();
  return std::exp(log_abs_error - value.log_abs());
}

QuadratureResult integrate_ray_log(const LogIntegrand& log_integrand, double angle,
                                   const QuadratureOptions& options) {
  if (!(options.rel_tol > 0.0 && options.rel_tol < 1.0))
    throw Error(ErrorKind::precondition, "rel_tol must lie in (0, 1)");

  RayNodes nodes{log_integrand, angle};
  LogSum all;
  const cplx c0 = nodes(0.0);
  all.add_log(c0);
  double running_max = c0.real();
  const int k_hi = find_edge(nodes, +1, running_max, all);
  const int k_lo = find_edge(nodes, -1, running_max, all);
  const double u_lo = -k_lo * kBaseStep;
  const double u_hi = k_hi * kBaseStep;

  double h = kBaseStep;
  LogComplex previous = all.value() * LogComplex::from_complex(h);
  QuadratureResult result;
  result.contour = angle == 0.0 ? ContourSpec::real_axis() : ContourSpec::ray(angle);

  for (int level = 1; level <= options.max_levels; ++level) {
    h /= 2.0;
    const long new_nodes = std::lround((u_hi - u_lo) / (2.0 * h));
    for (long m = 0; m < new_nodes; ++m) all.add_log(nodes(u_lo + (2.0 * m + 1.0) * h));
    const LogComplex current = all.value() * LogComplex::from_complex(h);
    const LogComplex diff = current - previous;

    result.value = current;
    result.log_abs_error = diff.log_abs();
    result.nodes_used = nodes.evaluations;
    result.log_abs_mass = all.log_abs_total() + std::log(h);

    if (current.is_zero()) {
      if (previous.is_zero()) return result;
    } else {
      const double rel_err = std::exp(result.log_abs_error - current.log_abs());
      const double noise = 64.0 * kEps * std::exp(result.log_abs_mass - current.log_abs());
      if (level >= 2 && rel_err <= std::max(options.rel_tol, noise)) {
        if (noise > options.rel_tol) {
          throw Error(ErrorKind::precision_loss,
                      "cancellation along the contour limits the relative accuracy to " +
                          format_double(noise),
                      current);
        }
        return result;
      }
    }
    previous = current;
  }
  throw Error(ErrorKind::budget_exhausted,
              "double-exponential rule did not converge within the node budget", result.value);
}

QuadratureResult integrate_halfline(const std::function<cplx(double)>& integrand, double rel_tol) {
  QuadratureOptions opts;
  opts.rel_tol = rel_tol;
  return integrate_ray_log(
      [&](cplx t) {
        const LogComplex v = LogComplex::from_complex(integrand(t.real()));
        return cplx{v.log_abs(), v.phase()};
      },
      0.0, opts);
}

namespace {

// Gauss-Kronrod 7/15 nodes and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  cplx value;
  double error;
  double abs_value;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<cplx(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double hl = 0.5 * (b - a);
  const cplx fc = f(c);
  cplx k = fc * kWgk[7];
  cplx g = fc * kWg[3];
  double absk = std::abs(fc) * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = hl * kXgk[j];
    const cplx f1 = f(c - dx);
    const cplx f2 = f(c + dx);
    k += (f1 + f2) * kWgk[j];
    absk += (std::abs(f1) + std::abs(f2)) * kWgk[j];
    if (j % 2 == 1) g += (f1 + f2) * kWg[j / 2];
  }
  return {a, b, k * hl, std::abs((k - g) * hl), absk * std::abs(hl)};
}

}  // namespace

QuadratureResult integrate_finite(const std::function<cplx(double)>& integrand, double a, double b,
                                  double rel_tol, int max_subintervals) {
  if (!(a < b)) throw Error(ErrorKind::precondition, "integrate_finite requires a < b");
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) throw Error(ErrorKind::precondition, "rel_tol must lie in (0, 1)");

  std::priority_queue<Panel> panels;
  panels.push(gk15(integrand, a, b));
  cplx total = panels.top().value;
  double error = panels.top().error;
  double mass = panels.top().abs_value;
  int count = 1;

  auto make_result = [&] {
    QuadratureResult r;
    r.value = LogComplex::from_complex(total);
    r.log_abs_error = error > 0.0 ? std::log(error) : kNegInf;
    r.nodes_used = 15 * (2 * count - 1);
    r.contour = ContourSpec::segment(a, b);
    r.log_abs_mass = mass > 0.0 ? std::log(mass) : kNegInf;
    return r;
  };

  while (error > std::max(rel_tol * std::abs(total), 50.0 * kEps * mass)) {
    if (count >= max_subintervals) {
      throw Error(ErrorKind::budget_exhausted, "adaptive quadrature exceeded its subinterval budget",
                  LogComplex::from_complex(total));
    }
    const Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = gk15(integrand, worst.a, mid);
    const Panel right = gk15(integrand, mid, worst.b);
    total += left.value + right.value - worst.value;
    error = std::max(0.0, error + left.error + right.error - worst.error);
    mass += left.abs_value + right.abs_value - worst.abs_value;
    panels.push(left);
    panels.push(right);
    ++count;
  }
  return make_result();
}

namespace detail {

double erf_integral_series(double x) {
  // e^{-x^2} sum_n 2^n x^{2n+1} / (2n+1)!!, all terms positive.
  const double x2 = x * x;
  double term = x;
  double sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= 2.0 * x2 / (2.0 * n + 1.0);
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return std::exp(-x2) * sum;
}

double erf_integral_tail(double x) {
  // \int_x^inf e^{-u^2} du = (e^{-x^2}/2) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))).
  double d = x;
  for (int k = 80; k >= 1; --k) d = x + 0.5 * k / d;
  return 0.5 * std::exp(-x * x) / d;
}

}  // namespace detail

double erf_integral(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::abs(x);
  double v;
  if (ax <= 3.0) {
    v = detail::erf_integral_series(ax);
  } else {
    v = 0.5 * std::sqrt(kPi) - detail::erf_integral_tail(ax);
  }
  return x < 0.0 ? -v : v;
}

}  // namespace hftlab
