#include <cmath>
#include <random>

#include "doctest.h"
#include "hftlab/log_complex.hpp"

using namespace hftlab;

TEST_CASE("zero and phase conventions") {
  const LogComplex z;
  CHECK(z.is_zero());
  CHECK(z.phase() == 0.0);
  CHECK(LogComplex(kNegInf, 2.0).phase() == 0.0);
  CHECK(LogComplex(0.0, -kPi).phase() == doctest::Approx(kPi));
  CHECK(LogComplex(0.0, 3.0 * kPi).phase() == doctest::Approx(kPi));
  CHECK(LogComplex::from_complex({-1.0, -0.0}).phase() == kPi);
  CHECK(normalize_phase(-5.0 * kPi / 2.0) == doctest::Approx(-kPi / 2.0));
}

TEST_CASE("arithmetic agrees with std::complex on random inputs") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const cplx a{u(rng), u(rng)}, b{u(rng), u(rng)};
    const auto la = LogComplex::from_complex(a), lb = LogComplex::from_complex(b);
    CHECK(std::abs((la * lb).to_complex() - a * b) <= 1e-13 * std::abs(a * b));
    CHECK(std::abs((la / lb).to_complex() - a / b) <= 1e-13 * std::abs(a / b));
    CHECK(std::abs((la + lb).to_complex() - (a + b)) <= 1e-13 * (std::abs(a) + std::abs(b)));
    CHECK(std::abs((la - lb).to_complex() - (a - b)) <= 1e-13 * (std::abs(a) + std::abs(b)));
    CHECK(la.phase() > -kPi);
    CHECK(la.phase() <= kPi);
  }
}

TEST_CASE("sums far outside the double range keep phase cancellation") {
  const LogComplex big(5000.0, 0.3);
  const LogComplex sum = big + (-big);
  CHECK(sum.is_zero());
  const LogComplex two = big + big;
  CHECK(two.log_abs() == doctest::Approx(5000.0 + std::log(2.0)));
  CHECK(two.phase() == doctest::Approx(0.3));

  LogSum acc;
  acc.add(LogComplex(1000.0, 0.0));
  acc.add(LogComplex(1010.0, kPi));
  acc.add(LogComplex(1010.0, 0.0));
  CHECK(acc.value().log_abs() == doctest::Approx(1000.0));
  CHECK(acc.log_abs_total() == doctest::Approx(1010.0 + std::log(2.0)));
}

TEST_CASE("relative difference") {
  const LogComplex a(800.0, 0.1);
  CHECK(relative_difference(a, a) == 0.0);
  CHECK(relative_difference(a, LogComplex(800.0 + 1e-9, 0.1)) == doctest::Approx(1e-9).epsilon(1e-3));
  CHECK(relative_difference(LogComplex{}, LogComplex{}) == 0.0);
}
