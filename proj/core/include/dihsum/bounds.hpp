#pragma once

#include <cstdint>

#include "dihsum/exact.hpp"

namespace dihsum {

struct BoundParams {
  std::uint64_t j = 1;
  Rational c1;          // 7/1152
  Rational c2;          // (111+5j)/288
  Rational cj_squared;  // c1/c2 = 7/(4(111+5j))
  long double cj = 0;
  long double cj_display = 0;  // 1.3229 / sqrt(111+5j)
  std::uint64_t n_min = 0;     // smallest n with cj sqrt(n) >= 6
};

BoundParams bound_params(std::uint64_t j);

/// Mass of Binomial(m, 1/2) on [ceil(5m/12), floor(11m/12)], held as
/// numerator / 2^m so that large m stays cheap.
struct ProportionResult {
  std::uint64_t m = 0;
  BigInt numerator;
  bool pass = false;  // value > 3/5

  Rational value() const;
};

ProportionResult proportion_condition(std::uint64_t m);

/// Flip-count mass of a uniform m-subset of Dih(G), |G| = n, on the same
/// k-range, next to its n -> infinity limit.
struct FiniteMass {
  Rational mass;
  Rational limit;
  bool at_least_limit = false;
};

FiniteMass finite_mass_condition(std::uint64_t n, std::uint64_t m);

struct WindowVerdict {
  std::uint64_t n = 0, m = 0, j = 0;
  bool inside = false;  // 6 <= m <= cj sqrt(n), decided exactly
  long double cj_sqrt_n = 0;
  const char* conclusion = "";
};

WindowVerdict mstd_window(std::uint64_t n, std::uint64_t m, std::uint64_t j);

}  // namespace dihsum
