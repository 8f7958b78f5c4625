#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>
#include <span>
#include <string>
#include <string_view>

#include "dihsum/exact.hpp"
#include "dihsum/group.hpp"
#include "dihsum/setops.hpp"

namespace dihsum {

using Quadruple = std::array<std::uint32_t, 4>;

/// An exact count of halves. X_A is half a count of quadruples, so it is
/// carried as `twice` rather than rounded.
struct Halves {
  std::uint64_t twice = 0;
  Rational value() const { return Rational(twice) / 2; }
  double as_double() const { return static_cast<double>(twice) / 2.0; }
  bool operator==(const Halves&) const = default;
};

enum class RedundancyKind { None, SamePair, RotationSwap, AllFlips };

/// (a,b,a,b) first, then rotation swaps (a,b,b,a), then all-flip quadruples.
RedundancyKind redundancy_kind(const Dihedral& group, const Quadruple& q) noexcept;
bool is_redundant_quadruple(const Dihedral& group, const Quadruple& q) noexcept;
bool is_redundant_quadruple(const std::array<DihElement, 4>& q, const GroupSpec& spec);

/// (a, b, c) is redundant when (a, b, c, c^{-1}ab) is.
bool is_redundant_triple(const Dihedral& group, std::uint32_t a, std::uint32_t b, std::uint32_t c) noexcept;

/// Conditions for A to be guaranteed MSTD from its flip count k and X_A.
struct MstdInterval {
  std::size_t m = 0;
  std::size_t k = 0;
  bool zero_collision_criterion = false;  // m/3 <= k < m
  bool interval_nonempty = false;         // m^2 >= 6 X_A
  long double low = 0;                    // (2m - sqrt(m^2 - 6X_A)) / 3
  long double high = 0;                   // (2m + sqrt(m^2 - 6X_A)) / 3
  bool k_in_interval = false;             // 3k^2 - 4mk + m^2 + 2X_A <= 0 and k < m, exact
};

MstdInterval naive_mstd_interval(std::size_t m, std::size_t k, Halves xa);

struct CollisionReport {
  Halves xa;
  std::uint64_t nonredundant_quadruples = 0;  // colliding quadruples in A^4
  std::uint64_t nonredundant_triples = 0;     // sum of chi over A^3 cap T
  std::uint64_t redundant_same_pair = 0;
  std::uint64_t redundant_rotation_swap = 0;
  std::uint64_t redundant_all_flips = 0;
  std::uint64_t naive_sum = 0;   // 2(m-k)k + C(m-k,2) + (m-k), F+F left out
  std::uint64_t naive_diff = 0;  // (m-k)k + 2C(m-k,2)
  std::size_t actual_sum = 0;
  std::size_t actual_diff = 0;
  MstdInterval interval;
};

/// X_A by both the quadruple and the triple route; throws std::logic_error
/// if they disagree.
CollisionReport count_xa(const SubsetD& a);

/// Triple route only, for hot loops. Returns 2 X_A. `scratch` must hold
/// group.size() zeroed bytes and is left zeroed.
std::uint64_t twice_xa(const Dihedral& group, std::span<const std::uint32_t> members, std::vector<char>& scratch);

struct TripleClassCounts {
  std::uint64_t n = 0;
  std::uint64_t j = 0;
  std::array<std::uint64_t, 8> t{};  // t[1]..t[7]; t[0] unused
  std::uint64_t redundant = 0;

  std::uint64_t nonredundant() const noexcept;
  /// |T1| <= 7n^3, |T2..T5| <= 4n^2, |T6| <= 2nj, |T7| <= 3nj.
  bool within_bounds() const noexcept;
};

/// Brute force over D^3. Throws BudgetExceeded when (2n)^3 > budget.
TripleClassCounts triple_class_counts(const GroupSpec& spec, std::uint64_t budget = 1'000'000'000);

struct XABound {
  Rational bound;                    // (7/32 + 1/m + 5j/(8m^2)) m^4 / n
  std::optional<Rational> c2_form;  // (111+5j)/288 m^4 / n, for m >= 6
};

XABound expected_xa_bound(std::uint64_t n, std::uint64_t j, std::uint64_t m);
inline XABound expected_xa_bound(const GroupSpec& spec, std::uint64_t m) {
  return expected_xa_bound(spec.order(), spec.involutions(), m);
}

struct ExactMeanXA {
  Rational subset_major;  // average of X_A over all m-subsets
  Rational triple_major;  // 1/(2 C(2n,m)) sum over T of #{A containing a,b,c,d}
};

/// Throws BudgetExceeded when C(2n,m) m^3 or (2n)^3 exceeds `budget`.
ExactMeanXA mean_xa_exhaustive(const GroupSpec& spec, std::uint32_t m, std::uint64_t budget = 1'000'000'000);

struct SampledMeanXA {
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  double mean = 0;
  double stderr_ = 0;
};

SampledMeanXA mean_xa_sampled(const GroupSpec& spec, std::uint32_t m, std::uint64_t trials, std::uint64_t seed,
                              unsigned threads = 1);

enum class CollisionVerdict { Equal, ProductMore, CyclicMore };

std::string_view verdict_name(CollisionVerdict v);

/// Dih(Z_n x Z_n) against Dih(Z_{n^2}).
struct CrossGroupReport {
  std::uint64_t n = 0;
  std::uint64_t product_total = 0;  // Dih(Z_n^2)
  std::uint64_t cyclic_total = 0;   // Dih(Z_{n^2})
  std::uint64_t product_raw = 0;    // every ordered quadruple, = |D|^3
  std::uint64_t cyclic_raw = 0;
  CollisionVerdict verdict = CollisionVerdict::Equal;
  std::string convention;
};

/// Ordered quadruples (a,b,c,d) with ab = cd, counting a product of two
/// rotations once per unordered pair. Brute force over D^4, cross-checked
/// against per-target pair tallies.
CrossGroupReport cross_group_collision_totals(std::uint64_t n, std::uint64_t budget = 100'000'000);

/// Same total for an arbitrary group, by per-target tallies only.
std::uint64_t collision_total(const Dihedral& group);
std::uint64_t collision_total_brute(const Dihedral& group);

enum class PairCase { DiffProduct, DiffCyclic, SumProduct, SumCyclic };

/// "pairdiff" (product form), "pairdiff-cyclic", "pairsumtwo", "pairsumsquare".
PairCase parse_pair_case(std::string_view tag);

/// Pairs summing / differencing to (x, y) in Z_n^2, or to xn + y in Z_{n^2}.
/// Differences count ordered pairs, sums unordered ones.
std::uint64_t pair_count_formula(PairCase c, std::uint64_t n, std::uint64_t x, std::uint64_t y);
std::uint64_t pair_count_brute(PairCase c, std::uint64_t n, std::uint64_t x, std::uint64_t y);

}  // namespace dihsum
