#include "dihsum/bounds.hpp"

#include <cmath>

#include "dihsum/errors.hpp"

namespace dihsum {

namespace {

std::uint64_t k_low(std::uint64_t m) { return (5 * m + 11) / 12; }
std::uint64_t k_high(std::uint64_t m) { return 11 * m / 12; }

}  // namespace

BoundParams bound_params(std::uint64_t j) {
  if (j < 1) throw DomainError("j must be >= 1");
  BoundParams p;
  p.j = j;
  p.c1 = Rational(7, 1152);
  p.c2 = Rational(111 + 5 * j, 288);
  p.cj_squared = p.c1 / p.c2;
  const auto d = static_cast<long double>(111 + 5 * j);
  p.cj = std::sqrt(7.0L / (4.0L * d));
  p.cj_display = 1.3229L / std::sqrt(d);
  // 36 / cj^2 = 144(111+5j)/7
  p.n_min = (144 * (111 + 5 * j) + 6) / 7;
  return p;
}

Rational ProportionResult::value() const { return Rational(numerator, BigInt(1) << static_cast<unsigned>(m)); }

ProportionResult proportion_condition(std::uint64_t m) {
  if (m < 1) throw DomainError("m must be >= 1");
  ProportionResult r;
  r.m = m;
  const std::uint64_t lo = k_low(m), hi = k_high(m);
  if (lo <= hi) {
    BigInt c = binom(static_cast<std::int64_t>(m), static_cast<std::int64_t>(lo));
    for (std::uint64_t k = lo;; ++k) {
      r.numerator += c;
      if (k == hi) break;
      c = c * (m - k) / (k + 1);
    }
  }
  r.pass = 5 * r.numerator > 3 * (BigInt(1) << static_cast<unsigned>(m));
  return r;
}

FiniteMass finite_mass_condition(std::uint64_t n, std::uint64_t m) {
  if (m < 1 || m > 2 * n) throw DomainError("need 1 <= m <= 2n");
  const auto ni = static_cast<std::int64_t>(n), mi = static_cast<std::int64_t>(m);
  BigInt count = 0;
  for (std::uint64_t k = k_low(m); k <= k_high(m); ++k) {
    const auto ki = static_cast<std::int64_t>(k);
    count += binom(ni, ki) * binom(ni, mi - ki);
  }
  FiniteMass f;
  f.mass = Rational(count, binom(2 * ni, mi));
  f.limit = proportion_condition(m).value();
  f.at_least_limit = f.mass >= f.limit;
  return f;
}

WindowVerdict mstd_window(std::uint64_t n, std::uint64_t m, std::uint64_t j) {
  const BoundParams p = bound_params(j);
  WindowVerdict v;
  v.n = n;
  v.m = m;
  v.j = j;
  v.cj_sqrt_n = p.cj * std::sqrt(static_cast<long double>(n));
  // m <= cj sqrt(n)  <=>  4(111+5j) m^2 <= 7n
  v.inside = m >= 6 && BigInt(4) * (111 + 5 * j) * m * m <= BigInt(7) * n;
  v.conclusion = v.inside ? "MSTD sets outnumber MDTS sets among m-subsets"
                          : "outside the window; no prediction";
  return v;
}

}  // namespace dihsum
