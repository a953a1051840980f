#include <cmath>
#include <random>

#include "doctest.h"
#include "hftlab/error.hpp"
#include "hftlab/quadrature.hpp"
#include "hftlab/transform.hpp"

using namespace hftlab;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::domain;
}

bool close(const LogComplex& v, cplx expected, double tol) {
  return relative_difference(v, LogComplex::from_complex(expected)) <= tol;
}

const cplx I{0.0, 1.0};

}  // namespace

TEST_CASE("transform values") {
  CHECK(close(hft_eval(PolyExp{0, {1.0, 0.0}}, 0.0), 1.0, 1e-15));
  CHECK(close(hft_eval(Chi{0.0}, 0.0), 2.0, 1e-15));
  CHECK(close(hft_eval(PolyExp{1, {1.0, 0.0}}, -I), 0.25, 1e-15));
  CHECK(kind_of([] { hft_eval(Chi{0.0}, cplx{0.0, 0.5}); }) == ErrorKind::domain);

  // Off the distinguished point the value comes from ray quadrature.
  const TransformValue v = hft_derivative_detail(Chi{0.0}, 0, -I);
  CHECK(v.method == Method::quadrature);
  CHECK(close(v.value, 0.4543586392349529, 1e-12));
}

TEST_CASE("derivative laws at the distinguished point") {
  const LogComplex chi7 = hft_derivative(Chi{0.0}, 7, 0.0);
  CHECK(chi7.log_abs() == doctest::Approx(std::log(2.0) + std::lgamma(16.0)).epsilon(1e-14));
  CHECK(chi7.phase() == doctest::Approx(kPi / 2.0));  // (-i)^7 = i

  const LogComplex psi5 = hft_derivative(PsiP{1.0 / 3.0}, 5, 0.0);
  CHECK(psi5.log_abs() == doctest::Approx(std::log(3.0) + std::lgamma(18.0)).epsilon(1e-14));
  CHECK(psi5.phase() == doctest::Approx(-kPi / 2.0));

  const LogComplex pe3 = hft_derivative(PolyExp{0, {1.0, 0.0}}, 3, 0.0);
  CHECK(close(pe3, cplx{0.0, 6.0}, 1e-15));  // (-i)^3 3! = 6i

  for (int n : {0, 1, 5, 12}) {
    const TransformValue q = hft_derivative_quadrature(Chi{0.0}, n, 0.0);
    CHECK(q.method == Method::quadrature);
    CHECK(relative_difference(q.value, hft_derivative(Chi{0.0}, n, 0.0)) < 1e-9);
  }
}

TEST_CASE("phi identity route agrees with quadrature") {
  for (int n = 0; n <= 12; ++n) {
    const LogComplex id = phi_identity_derivative(n);
    const LogComplex q = hft_derivative_quadrature(Phi{0.0}, n, 0.0, 1e-12).value;
    CHECK(relative_difference(id, q) < 1e-9);
  }
  CHECK(close(phi_identity_derivative(0), 4.0 / std::exp(1.0), 1e-15));
  CHECK(hft_derivative_detail(Phi{2.0}, 3, 2.0).method == Method::continuation_identity);
  CHECK(closed_form_verified(Chi{0.0}));
  CHECK(closed_form_verified(PsiP{0.25}));
  CHECK(closed_form_verified(XAlphaM{1.0, 3}));
  CHECK(closed_form_verified(Phi{0.0}));
}

TEST_CASE("modulation shift identity") {
  const std::vector<cplx> grid = {0.0, -I, 1.0 - 0.5 * I, -2.0 - 0.1 * I, 3.0};
  for (double alpha : {-1.5, 0.7, 2.0}) {
    for (cplx z : grid) {
      const LogComplex a = hft_eval(Chi{alpha}, z);
      const LogComplex b = hft_eval(Chi{0.0}, z - alpha);
      CHECK(std::abs(a.log_abs() - b.log_abs()) < 1e-8);
      const LogComplex c = hft_eval(Phi{alpha}, z);
      const LogComplex d = hft_eval(Phi{0.0}, z - alpha);
      CHECK(std::abs(c.log_abs() - d.log_abs()) < 1e-8);
    }
  }
}

TEST_CASE("integration by parts expansion") {
  const auto e = ibp_expansion(Phi{0.0}, 1, -10.0 * I);
  REQUIRE(e.boundary_terms.size() == 1);
  CHECK(close(e.boundary_terms[0], std::exp(-1.0) / 10.0, 1e-14));
  CHECK(relative_difference(e.total(), hft_eval(Phi{0.0}, -10.0 * I)) < 1e-9);

  const auto p = ibp_expansion(PolyExp{3, {1.0, 0.0}}, 3, 2.0 - I);
  for (const auto& b : p.boundary_terms) CHECK(b.is_zero());
  CHECK(relative_difference(p.remainder, hft_eval(PolyExp{3, {1.0, 0.0}}, 2.0 - I)) < 1e-9);

  CHECK(kind_of([] { ibp_expansion(Chi{0.0}, 1, -I); }) == ErrorKind::not_ck);
  CHECK(kind_of([] { ibp_expansion(Phi{0.0}, 1, 0.0); }) == ErrorKind::precondition);

  for (int k = 1; k <= 3; ++k) {
    const double r2 = std::exp(ibp_expansion(Phi{0.0}, k, -100.0 * I).remainder.log_abs()) * std::pow(100.0, k + 1);
    const double r3 = std::exp(ibp_expansion(Phi{0.0}, k, -1000.0 * I).remainder.log_abs()) * std::pow(1000.0, k + 1);
    CHECK(r3 / r2 < 10.0);
    CHECK(r3 / r2 > 0.1);
  }
}

TEST_CASE("taylor tables") {
  const TaylorTable chi = taylor_table(Chi{0.0}, 0.0, 5);
  REQUIRE(chi.entries.size() == 6);
  for (int n = 1; n <= 5; ++n) {
    const double expected = std::exp((std::log(2.0) + std::lgamma(2 * n + 2.0) - std::lgamma(n + 1.0)) / n);
    CHECK(chi.entries[n].C == doctest::Approx(expected).epsilon(1e-13));
    CHECK(chi.entries[n].method == Method::closed_form);
  }
  const TaylorTable pe = taylor_table(PolyExp{0, {1.0, 0.0}}, 0.0, 30);
  for (int n = 1; n <= 30; ++n) CHECK(pe.entries[n].C == doctest::Approx(1.0).epsilon(1e-13));

  const TaylorTable chi3 = taylor_table(Chi{3.0}, 3.0, 20);
  const TaylorTable chi0 = taylor_table(Chi{0.0}, 0.0, 20);
  for (int n = 0; n <= 20; ++n) {
    CHECK(chi3.entries[n].derivative == chi0.entries[n].derivative);
    CHECK(chi3.entries[n].C == chi0.entries[n].C);
  }

  const TaylorTable q = taylor_table(Chi{0.0}, 0.0, 8, TableMethod::quadrature);
  for (int n = 0; n <= 8; ++n) {
    CHECK(q.entries[n].method == Method::quadrature);
    CHECK(!q.entries[n].flagged);
    CHECK(relative_difference(q.entries[n].derivative, chi0.entries[n].derivative) < 1e-9);
  }
  CHECK(kind_of([] { taylor_table(Phi{0.0}, 1.0, 3, TableMethod::closed); }) == ErrorKind::precondition);
  CHECK(kind_of([] { taylor_table(Chi{0.0}, 0.0, 0); }) == ErrorKind::precondition);
}

TEST_CASE("K_M coefficients") {
  const TaylorTable chi = taylor_table(Chi{0.0}, 0.0, 12);
  for (int n = 1; n <= 12; ++n) CHECK(coefficient_K(chi, 0, n) == chi.entries[n].C);
  const double expected = std::exp((std::log(2.0) + std::lgamma(22.0) - std::lgamma(11.0)) / 10.0) / 100.0;
  CHECK(coefficient_K(chi, 2, 10) == doctest::Approx(expected).epsilon(1e-13));
  const TaylorTable pe = taylor_table(PolyExp{0, {1.0, 0.0}}, 0.0, 12);
  CHECK(coefficient_K(pe, 1, 10) == doctest::Approx(0.1).epsilon(1e-13));
  CHECK(kind_of([&] { coefficient_K(pe, 1, 13); }) == ErrorKind::precondition);
}

TEST_CASE("radius estimation") {
  const auto r1 = estimate_radius(taylor_table(PolyExp{0, {1.0, 0.0}}, 0.0, 40), 10, 40);
  CHECK(r1.classification == RadiusClass::regular);
  CHECK(r1.radius_hat == doctest::Approx(1.0).epsilon(1e-6));

  for (double alpha : {0.0, 1.0, 2.0}) {
    for (double sigma : {0.5, 1.0, 2.0}) {
      const auto r = estimate_radius(taylor_table(PolyExp{0, {sigma, 0.0}}, alpha, 40), 10, 40);
      CHECK(r.classification == RadiusClass::regular);
      CHECK(r.radius_hat == doctest::Approx(std::hypot(alpha, sigma)).epsilon(0.02));
    }
  }
  const auto r3 = estimate_radius(taylor_table(PolyExp{2, {1.0, 0.0}}, 1.0, 40), 10, 40);
  CHECK(r3.radius_hat == doctest::Approx(std::sqrt(2.0)).epsilon(0.02));

  const auto chi = estimate_radius(taylor_table(Chi{0.0}, 0.0, 40), 10, 40);
  CHECK(chi.classification == RadiusClass::divergent);
  CHECK(chi.growth_exponent_hat == doctest::Approx(1.0).epsilon(0.05));
  const auto psi = estimate_radius(taylor_table(PsiP{0.25}, 0.0, 40), 10, 40);
  CHECK(psi.classification == RadiusClass::divergent);
  CHECK(psi.growth_exponent_hat == doctest::Approx(3.0).epsilon(0.1 / 3.0));
  const auto x = estimate_radius(taylor_table(XAlphaM{0.0, 2}, 0.0, 40), 10, 40);
  CHECK(x.classification == RadiusClass::divergent);
  CHECK(x.growth_exponent_hat == doctest::Approx(3.0).epsilon(0.1 / 3.0));

  // Entire transform: coefficients decay faster than any geometric rate.
  const auto ent = estimate_radius(taylor_table(PsiP{2.0}, 0.0, 40), 10, 40);
  CHECK(ent.classification == RadiusClass::regular);
  CHECK(std::isinf(ent.radius_hat));

  const auto t = taylor_table(Chi{0.0}, 0.0, 20);
  CHECK(kind_of([&] { estimate_radius(t, 10, 17); }) == ErrorKind::precondition);
  CHECK(kind_of([&] { estimate_radius(t, 10, 21); }) == ErrorKind::precondition);
  auto flagged = t;
  flagged.entries[15].flagged = true;
  CHECK(kind_of([&] { estimate_radius(flagged, 5, 20); }) == ErrorKind::precision_loss);
}

TEST_CASE("expected growth exponents") {
  CHECK(*expected_growth_exponent(PsiP{0.5}) == doctest::Approx(1.0));
  CHECK(*expected_growth_exponent(PsiP{0.25}) == doctest::Approx(3.0));
  CHECK(*expected_growth_exponent(XAlphaM{0.0, 2}) == doctest::Approx(3.0));
  CHECK(*expected_growth_exponent(Chi{1.0}) == doctest::Approx(1.0));
  CHECK(!expected_growth_exponent(Phi{0.0}));
  CHECK(!expected_growth_exponent(PsiP{2.0}));
}

TEST_CASE("seminorms") {
  const auto r0 = seminorm_rho(Phi{0.0}, 0);
  CHECK(r0.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  REQUIRE(r0.attained_at);
  CHECK(*r0.attained_at == 0.0);
  CHECK(seminorm_rho(Chi{0.0}, 1).infinite());
  CHECK(!seminorm_rho(Chi{0.0}, 0).infinite());
  // t/(2 sqrt t) e^{-sqrt t} peaks at t = 1
  CHECK(seminorm_rho_lk(Chi{0.0}, 1, 1).value == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-12));
  CHECK(seminorm_rho_lk(Chi{0.0}, 1, 2).infinite());

  // sup_t t e^{-t} = 1/e at t = 1
  const auto s = seminorm_rho_lk(PolyExp{0, {1.0, 0.0}}, 1, 0);
  CHECK(s.value == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(*s.attained_at == doctest::Approx(1.0).epsilon(1e-5));

  // sup_t t^20 exp(-t^{1/4}) sits at t = 80^4.
  const auto far = seminorm_rho_lk(XAlphaM{0.0, 2}, 20, 0);
  CHECK(*far.attained_at == doctest::Approx(std::pow(80.0, 4)).epsilon(1e-4));
  CHECK(std::log(far.value) == doctest::Approx(80.0 * std::log(80.0) - 80.0).epsilon(1e-10));

  // The singular parts of chi_1 and chi_0 cancel in the first derivative.
  const HalfLineFunction diff = HalfLineFunction(Chi{1.0}) - HalfLineFunction(Chi{0.0});
  CHECK(!blows_up_at_zero(diff, 1, 0.0));
  CHECK(blows_up_at_zero(diff, 2, 0.0));
  CHECK(!seminorm_rho(diff, 1).infinite());
}

TEST_CASE("metric properties") {
  const std::vector<HalfLineFunction> fs = {
      Phi{0.0}, PolyExp{0, {1.0, 0.0}}, PolyExp{2, {1.0, 0.5}},
      HalfLineFunction(Phi{1.0}) + cplx{0.5, 0.0} * HalfLineFunction(PolyExp{1, {2.0, 0.0}}), Chi{0.0}};
  for (const auto& f : fs) CHECK(metric_rho(f, f, 20) == 0.0);
  const std::size_t m = fs.size();
  std::vector<std::vector<double>> d(m, std::vector<double>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) d[i][j] = metric_rho(fs[i], fs[j], 10);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      CHECK(d[i][j] == d[j][i]);
      CHECK(d[i][j] < 2.0);
      for (std::size_t k = 0; k < m; ++k) CHECK(d[i][j] <= d[i][k] + d[k][j] + 1e-12);
    }
  }
  const HalfLineFunction f = PolyExp{0, {1.0, 0.0}};
  double prev = 3.0;
  for (int j : {1, 2, 4, 8, 16}) {
    const double d = metric_rho(f + cplx{1.0 / j, 0.0} * HalfLineFunction(Phi{0.0}), f, 20);
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("continuity bound on derivatives") {
  const std::vector<HalfLineFunction> fs = {Phi{0.0}, Phi{1.0}, PolyExp{0, {1.0, 0.0}}, PolyExp{2, {1.0, 0.0}}};
  const std::vector<cplx> grid = {0.0, -I, 1.0, -1.0 - 0.5 * I, 2.5 - 0.1 * I, -3.0};
  for (const auto& f : fs) {
    for (int n = 0; n <= 10; ++n) {
      const double bound = weighted_sup(f, 0, n + 2, 1.0).value;
      for (cplx z : grid) CHECK(std::exp(hft_derivative(f, n, z).log_abs()) <= bound);
    }
  }
}
