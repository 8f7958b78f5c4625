#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dihsum/group.hpp"
#include "dihsum/sampling.hpp"
#include "dihsum/setops.hpp"

namespace dihsum {

enum class CensusMode { Exhaustive, Sampled };

struct CensusRow {
  std::uint32_t k = 0;  // number of flips; ignored on the aggregate row
  std::uint64_t total = 0;
  std::uint64_t mstd = 0;
  std::uint64_t mdts = 0;
  std::uint64_t balanced = 0;
  std::optional<Interval> mstd_ci;  // sampled mode only
  std::optional<Interval> mdts_ci;

  CensusRow& operator+=(const CensusRow& o) {
    total += o.total;
    mstd += o.mstd;
    mdts += o.mdts;
    balanced += o.balanced;
    return *this;
  }
};

struct KRange {
  std::uint32_t lo = 0;
  std::uint32_t hi = 0;
};

struct CensusOptions {
  std::uint64_t budget = 1'000'000'000;  // classified sets
  unsigned threads = 1;                  // 0 = hardware concurrency
};

struct CensusReport {
  GroupSpec spec;
  std::uint32_t m = 0;
  std::vector<CensusRow> rows;  // one per feasible k, ascending
  CensusRow aggregate;
  CensusMode mode = CensusMode::Exhaustive;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  const CensusRow* row(std::uint32_t k) const;
};

/// Sum over k in range of C(n, k) C(n, m - k); saturates at UINT64_MAX.
std::uint64_t exhaustive_size(const GroupSpec& spec, std::uint32_t m, std::optional<KRange> k_range = std::nullopt);

/// Classifies every m-subset (or every subset with k in `k_range` flips).
/// Throws BudgetExceeded when the count is above `options.budget`.
CensusReport census_exhaustive(const GroupSpec& spec, std::uint32_t m, std::optional<KRange> k_range = std::nullopt,
                               const CensusOptions& options = {});

/// `trials` uniform m-subsets; trial t draws from CounterRng(seed, t).
CensusReport census_sampled(const GroupSpec& spec, std::uint32_t m, std::uint64_t trials, std::uint64_t seed,
                            const CensusOptions& options = {});

struct StructuralReport {
  bool large_part = false;      // max(|R|, |F|) > n/2
  bool more_than_n = false;     // m > n
  bool rotations_in_sum = false;
  bool rotations_in_diff = false;
  bool sum_is_group = false;
  bool diff_is_group = false;
  ClassLabel label = ClassLabel::BALANCED;

  /// Every conclusion whose hypothesis holds is satisfied.
  bool ok() const noexcept {
    const bool large_ok = !large_part || (rotations_in_sum && rotations_in_diff && label != ClassLabel::MDTS);
    const bool full_ok = !more_than_n || (sum_is_group && diff_is_group);
    return large_ok && full_ok;
  }
};

StructuralReport verify_structural(const SubsetD& a);

/// MSTD count among 3-subsets of D_{2n} with exactly two flips.
std::uint64_t two_flip_triple_formula(std::uint64_t n);

struct TwoFlipTripleCounts {
  std::uint64_t n = 0;
  std::uint64_t closed_form = 0;
  std::uint64_t exhaustive = 0;
  bool match() const noexcept { return closed_form == exhaustive; }
};

TwoFlipTripleCounts two_flip_triple_counts(std::uint64_t n, const CensusOptions& options = {});

}  // namespace dihsum
