#pragma once

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace dihsum {

/// Malformed input: arity mismatch, bad literal, bad group string.
class StructuralError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the domain an operation is defined on.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Work estimates in messages, e.g. "1.399e+12".
inline std::string format_estimate(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

/// Work estimate exceeds the configured budget. `estimate()` is the number of
/// units (classified sets, triples, quadruples) the call would have needed.
class BudgetExceeded : public std::runtime_error {
public:
  BudgetExceeded(const std::string& what, double estimate, std::uint64_t budget)
      : std::runtime_error(what), estimate_(estimate), budget_(budget) {}

  double estimate() const noexcept { return estimate_; }
  std::uint64_t budget() const noexcept { return budget_; }

private:
  double estimate_;
  std::uint64_t budget_;
};

}  // namespace dihsum
