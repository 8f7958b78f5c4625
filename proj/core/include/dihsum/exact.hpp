#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace dihsum {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Binomial coefficients use the combinatorial convention throughout:
// C(a, b) = 0 whenever a < 0, b < 0 or b > a.
BigInt binom(std::int64_t a, std::int64_t b);

/// Word-sized binomial; saturates to UINT64_MAX on overflow.
std::uint64_t binom_u64(std::int64_t a, std::int64_t b);

/// Same convention, as a double (for size estimates only).
double binom_estimate(std::int64_t a, std::int64_t b);

/// Factorials 0!..max! cached as big integers.
class FactorialTable {
public:
  explicit FactorialTable(std::int64_t max);
  const BigInt& operator[](std::int64_t i) const { return table_.at(static_cast<std::size_t>(i)); }
  BigInt binom(std::int64_t a, std::int64_t b) const;
  std::int64_t max() const { return static_cast<std::int64_t>(table_.size()) - 1; }

private:
  std::vector<BigInt> table_;
};

/// log(i!) for i in [0, max], accumulated with Kahan compensation in long double.
class LogFactorialTable {
public:
  explicit LogFactorialTable(std::int64_t max);
  long double operator[](std::int64_t i) const { return table_.at(static_cast<std::size_t>(i)); }
  /// log C(a, b); -infinity when the coefficient is zero.
  long double log_binom(std::int64_t a, std::int64_t b) const;
  std::int64_t max() const { return static_cast<std::int64_t>(table_.size()) - 1; }

private:
  std::vector<long double> table_;
};

/// Natural log of a positive big integer / rational, accurate to long double precision.
long double log_of(const BigInt& v);
long double log_of(const Rational& v);
long double to_long_double(const Rational& v);

std::string to_string(const Rational& v);

}  // namespace dihsum
