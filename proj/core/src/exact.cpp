#include "dihsum/exact.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace dihsum {

namespace mp = boost::multiprecision;

BigInt binom(std::int64_t a, std::int64_t b) {
  if (a < 0 || b < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  BigInt r = 1;
  for (std::int64_t i = 1; i <= b; ++i) {
    r *= (a - b + i);
    r /= i;
  }
  return r;
}

std::uint64_t binom_u64(std::int64_t a, std::int64_t b) {
  if (a < 0 || b < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  unsigned __int128 r = 1;
  for (std::int64_t i = 1; i <= b; ++i) {
    r = r * static_cast<unsigned __int128>(a - b + i) / static_cast<unsigned __int128>(i);
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

double binom_estimate(std::int64_t a, std::int64_t b) {
  if (a < 0 || b < 0 || b > a) return 0.0;
  return std::exp(std::lgamma(double(a) + 1) - std::lgamma(double(b) + 1) - std::lgamma(double(a - b) + 1));
}

FactorialTable::FactorialTable(std::int64_t max) {
  table_.reserve(static_cast<std::size_t>(max) + 1);
  table_.emplace_back(1);
  for (std::int64_t i = 1; i <= max; ++i) table_.push_back(table_.back() * i);
}

BigInt FactorialTable::binom(std::int64_t a, std::int64_t b) const {
  if (a < 0 || b < 0 || b > a) return 0;
  return (*this)[a] / ((*this)[b] * (*this)[a - b]);
}

LogFactorialTable::LogFactorialTable(std::int64_t max) {
  table_.reserve(static_cast<std::size_t>(max) + 1);
  table_.push_back(0.0L);
  long double sum = 0.0L, carry = 0.0L;
  for (std::int64_t i = 1; i <= max; ++i) {
    const long double y = std::log(static_cast<long double>(i)) - carry;
    const long double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
    table_.push_back(sum);
  }
}

long double LogFactorialTable::log_binom(std::int64_t a, std::int64_t b) const {
  if (a < 0 || b < 0 || b > a) return -std::numeric_limits<long double>::infinity();
  return (*this)[a] - (*this)[b] - (*this)[a - b];
}

long double log_of(const BigInt& v) {
  if (v <= 0) return -std::numeric_limits<long double>::infinity();
  const auto bits = static_cast<std::int64_t>(mp::msb(v));
  if (bits < 1000) return std::log(v.convert_to<long double>());
  const std::int64_t shift = bits - 96;
  const BigInt top = v >> static_cast<unsigned>(shift);
  return std::log(top.convert_to<long double>()) + static_cast<long double>(shift) * std::log(2.0L);
}

long double log_of(const Rational& v) {
  return log_of(BigInt(mp::numerator(v))) - log_of(BigInt(mp::denominator(v)));
}

long double to_long_double(const Rational& v) {
  if (v == 0) return 0.0L;
  const BigInt num = mp::numerator(v);
  const BigInt den = mp::denominator(v);
  const BigInt anum = num < 0 ? BigInt(-num) : num;
  if (mp::msb(anum) < 10000 && mp::msb(den) < 10000)
    return num.convert_to<long double>() / den.convert_to<long double>();
  const long double mag = std::exp(log_of(anum) - log_of(den));
  return num < 0 ? -mag : mag;
}

std::string to_string(const Rational& v) {
  std::ostringstream os;
  os << mp::numerator(v);
  if (mp::denominator(v) != 1) os << '/' << mp::denominator(v);
  return os.str();
}

}  // namespace dihsum
