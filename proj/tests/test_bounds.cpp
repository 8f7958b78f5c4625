#include <doctest.h>

#include <cmath>

#include <dihsum/bounds.hpp>
#include <dihsum/errors.hpp>

#include "oracles.hpp"

using namespace dihsum;

TEST_CASE("constants") {
  const auto p2 = bound_params(2);
  CHECK(static_cast<double>(p2.cj) == doctest::Approx(0.12026).epsilon(1e-4));
  CHECK(p2.cj >= 0.12L);
  const auto p1 = bound_params(1);
  CHECK(static_cast<double>(p1.cj) == doctest::Approx(0.12283).epsilon(1e-4));
  CHECK(p1.n_min == 2387);
  CHECK(p1.c1 == Rational(7, 1152));
  CHECK_THROWS_AS(bound_params(0), DomainError);
  long double prev = 1;
  for (std::uint64_t j = 1; j <= 100; ++j) {
    const auto p = bound_params(j);
    CHECK(p.cj < prev);
    prev = p.cj;
    CHECK(p.cj_squared * p.c2 == p.c1);
    CHECK(p.cj_squared == Rational(7, 4 * (111 + 5 * j)));
    CHECK(std::abs(p.cj * p.cj - to_long_double(p.cj_squared)) < 1e-15L);
    CHECK(std::abs(p.cj_display - p.cj) <= 1e-4L * p.cj);
    CHECK(mstd_window(p.n_min, 6, j).inside);
    CHECK_FALSE(mstd_window(p.n_min - 1, 6, j).inside);
    CHECK(p.cj * std::sqrt(static_cast<long double>(p.n_min)) >= 6 - 1e-12L);
  }
}

TEST_CASE("proportion condition") {
  const auto six = proportion_condition(6);
  CHECK(six.value() == Rational(41, 64));
  CHECK(six.pass);
  const auto five = proportion_condition(5);
  // k = 3, 4: (10 + 5) / 32
  CHECK(five.value() == Rational(15, 32));
  CHECK_FALSE(five.pass);
  const auto big = proportion_condition(1200);
  CHECK(big.pass);
  CHECK(to_long_double(big.value()) > 0.99L);
  for (std::uint64_t m = 1; m <= 40; ++m) {
    oracle::Big num = 0;
    for (std::uint64_t k = (5 * m + 11) / 12; k <= 11 * m / 12; ++k) num += oracle::pascal(int(m), int(k));
    CHECK(proportion_condition(m).numerator == BigInt(num));
  }
  CHECK_THROWS_AS(proportion_condition(0), DomainError);
}

TEST_CASE("finite mass condition") {
  const auto f = finite_mass_condition(100, 6);
  CHECK(f.limit == Rational(41, 64));
  CHECK(f.mass >= Rational(41, 64));
  CHECK(f.at_least_limit);
  // n = 3, m = 6: only k = 3 is achievable in [3, 5].
  CHECK(finite_mass_condition(3, 6).mass == 1);
  for (std::uint64_t m = 1; m <= 40; ++m)
    for (std::uint64_t n = (m + 1) / 2; n <= 400; n += (n < 60 ? 1 : 17)) {
      if (n == 0) continue;
      CHECK(finite_mass_condition(n, m).at_least_limit);
    }
  CHECK_THROWS_AS(finite_mass_condition(2, 5), DomainError);
}

TEST_CASE("dominance window") {
  CHECK(mstd_window(2400, 6, 1).inside);
  CHECK(static_cast<double>(mstd_window(2400, 6, 1).cj_sqrt_n) == doctest::Approx(6.02).epsilon(1e-3));
  CHECK_FALSE(mstd_window(2000, 6, 1).inside);
  CHECK_FALSE(mstd_window(2311, 6, 1).inside);
  CHECK(mstd_window(2387, 6, 1).inside);
  CHECK_FALSE(mstd_window(2386, 6, 1).inside);
  CHECK_FALSE(mstd_window(1'000'000, 5, 1).inside);
}
