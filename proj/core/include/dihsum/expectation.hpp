#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dihsum/exact.hpp"

// Missing-element probabilities and E|A-A| for subsets of the classical
// dihedral group Dih(Z_n). Rotation i has index i, flip i has index n + i.

namespace dihsum {

enum class EvalMode { Rational, Log, MonteCarlo };

std::string_view mode_name(EvalMode mode);

struct ProbabilityValue {
  std::optional<Rational> exact;
  long double log_value = 0;  // -inf for probability 0
  EvalMode mode = EvalMode::Rational;
  std::optional<long double> std_error;  // Monte Carlo only

  long double value() const;
  static ProbabilityValue from_rational(const Rational& p);
};

/// k-subsets of an N-cycle with no two cyclically adjacent members.
BigInt g_nonadjacent(std::int64_t N, std::int64_t k);

/// P[i not in S+S] for a uniform t-subset S of Z_n.
ProbabilityValue prob_missing_sum_cyclic(std::int64_t n, std::int64_t i, std::int64_t t);

/// P[i not in S-S] for a uniform k-subset S of Z_n. For i = 0 this is 1 when
/// k = 0 and 0 otherwise.
ProbabilityValue prob_missing_diff_cyclic(std::int64_t n, std::int64_t i, std::int64_t k);

/// P[i not in S1+S2] for independent uniform S1 (size mk) and S2 (size k) in Z_n.
ProbabilityValue prob_missing_cross_sum(std::int64_t n, std::int64_t k, std::int64_t mk);

/// P[a uniform m-subset of Dih(Z_n) has exactly k flips].
ProbabilityValue prob_k_flips(std::int64_t n, std::int64_t m, std::int64_t k);

/// P[i not in S1+S2 and i not in S2-S1] for S1 of size mk and S2 of size k,
/// by enumerating S2. Throws BudgetExceeded when C(n,k) > budget.
Rational prob_joint_flip_term(std::int64_t n, std::int64_t i, std::int64_t k, std::int64_t mk,
                              std::uint64_t budget = 10'000'000);

enum class MissingFrom { Sum, Diff };

struct ElementMissingOptions {
  std::uint64_t enumeration_budget = 10'000'000;
  bool monte_carlo_fallback = true;
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 0;
};

/// P[element not in A+A] or P[element not in A-A] for a uniform m-subset A of
/// Dih(Z_n). Flips missing from A+A need the joint term; when its enumeration
/// is over budget the whole probability is estimated by sampling A, or
/// BudgetExceeded is thrown if the fallback is off.
ProbabilityValue prob_element_missing(std::int64_t n, std::int64_t m, std::uint32_t element, MissingFrom which,
                                      const ElementMissingOptions& options = {});

struct ExpectedSize {
  std::optional<Rational> exact;
  long double value = 0;
  EvalMode mode = EvalMode::Rational;
};

enum class ModeRequest { Auto, Rational, Log };

/// Largest n evaluated in rationals under ModeRequest::Auto.
inline constexpr std::int64_t kRationalLimit = 200;

bool is_prime(std::int64_t n);

/// E|A-A| for a uniform m-subset A of Dih(Z_n), n prime, 1 <= m <= 2n.
/// Throws DomainError for composite n.
ExpectedSize expected_diffset_size(std::int64_t n, std::int64_t m, ModeRequest mode = ModeRequest::Auto);

/// Log-space evaluation against a shared table covering 2n.
long double expected_diffset_size_log(std::int64_t n, std::int64_t m, const LogFactorialTable& table);

struct CurvePoint {
  std::int64_t m = 0;
  long double expected = 0;
};

struct ExpectationCurve {
  std::int64_t n = 0;
  EvalMode mode = EvalMode::Log;
  std::vector<CurvePoint> points;
  std::optional<std::int64_t> crossing;  // smallest m with E >= n
};

/// Points m = 2, 2+step, ... up to m_max (m_max itself always included).
ExpectationCurve expectation_curve(std::int64_t n, std::int64_t m_max, std::int64_t step = 1,
                                   ModeRequest mode = ModeRequest::Auto, unsigned threads = 1);

/// sum_k C(n,k) C(n-k,m-k) == 2^m C(n,m), in exact integers.
bool binomial_identity_check(std::int64_t n, std::int64_t m);

}  // namespace dihsum
