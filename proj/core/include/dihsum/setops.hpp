#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dihsum/group.hpp"

namespace dihsum {

using GroupPtr = std::shared_ptr<const Dihedral>;

inline GroupPtr make_group(GroupSpec spec) { return std::make_shared<const Dihedral>(std::move(spec)); }
inline GroupPtr make_group(std::string_view text) { return make_group(GroupSpec::parse(text)); }

/// Membership bitmask over the 2n elements of D.
class PairSet {
public:
  explicit PairSet(std::uint32_t n = 0) : n_(n), words_((2 * std::size_t{n} + 63) / 64, 0) {}

  std::uint32_t n() const noexcept { return n_; }
  void insert(std::uint32_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void erase(std::uint32_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool contains(std::uint32_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1; }
  void clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }

  std::size_t size() const noexcept;
  std::size_t rotation_count() const noexcept;
  std::size_t flip_count() const noexcept { return size() - rotation_count(); }
  std::vector<std::uint32_t> elements() const;

  PairSet& operator|=(const PairSet& other);
  bool subset_of(const PairSet& other) const;
  bool operator==(const PairSet&) const = default;

private:
  std::uint32_t n_;
  std::vector<std::uint64_t> words_;
};

enum class ClassLabel { MSTD, MDTS, BALANCED };

std::string_view label_name(ClassLabel label);

/// A subset A of D. Members are sorted element indices. For cyclic G with
/// n <= 64 the rotation and flip parts are mirrored as n-bit masks.
class SubsetD {
public:
  SubsetD(GroupPtr group, std::vector<std::uint32_t> members);

  /// Literal `r:0,1,4;f:2,3` (G-indices of rotations, then of flips). Either
  /// part may be omitted; the empty string is the empty set.
  static SubsetD parse(GroupPtr group, std::string_view literal);
  static SubsetD from_parts(GroupPtr group, std::span<const std::uint32_t> rotations,
                            std::span<const std::uint32_t> flips);

  const Dihedral& group() const noexcept { return *group_; }
  const GroupPtr& group_ptr() const noexcept { return group_; }
  const std::vector<std::uint32_t>& members() const noexcept { return members_; }
  std::size_t m() const noexcept { return members_.size(); }
  std::size_t k() const noexcept { return k_; }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(std::uint32_t i) const;

  std::optional<std::uint64_t> rot_mask() const noexcept { return rot_mask_; }
  std::optional<std::uint64_t> flip_mask() const noexcept { return flip_mask_; }

  std::string to_string() const;

private:
  GroupPtr group_;
  std::vector<std::uint32_t> members_;
  std::size_t k_ = 0;
  std::optional<std::uint64_t> rot_mask_;
  std::optional<std::uint64_t> flip_mask_;
};

/// {x * y : x in X, y in Y} (or x * y^{-1} when `invert_second`).
PairSet product_set(const Dihedral& group, std::span<const std::uint32_t> xs, std::span<const std::uint32_t> ys,
                    bool invert_second);

PairSet sumset(const SubsetD& a);
PairSet diffset(const SubsetD& a);

/// Plain double loop, never the mask kernel.
PairSet naive_sumset(const SubsetD& a);
PairSet naive_diffset(const SubsetD& a);

ClassLabel classify(const SubsetD& a);
ClassLabel classify_sizes(std::size_t sum_size, std::size_t diff_size) noexcept;

struct Decomposition {
  SubsetD rotations;
  SubsetD flips;
  PairSet r_plus_r;       // R R
  PairSet f_plus_f;       // F F  (= F F^{-1})
  PairSet r_plus_f;       // R F  (= R F^{-1} = F R^{-1})
  PairSet neg_r_plus_f;   // F R  (the flips {f - r})
  PairSet r_minus_r;      // R R^{-1}
};

Decomposition decompose(const SubsetD& a);

struct SumDiffSizes {
  std::uint32_t sum = 0;
  std::uint32_t diff = 0;
};

struct CyclicMasks {
  std::uint64_t sum_rot = 0, sum_flip = 0, diff_rot = 0, diff_flip = 0;
};

/// Shift-OR kernel for G = Z_n, n <= 64.
CyclicMasks cyclic_mask_kernel(std::uint32_t n, std::uint64_t rot, std::uint64_t flip) noexcept;
SumDiffSizes cyclic_mask_sizes(std::uint32_t n, std::uint64_t rot, std::uint64_t flip) noexcept;

/// Reusable scratch for classifying many subsets of one group. Not
/// thread-safe; use one per worker.
class Classifier {
public:
  explicit Classifier(const Dihedral& group);
  SumDiffSizes sizes(std::span<const std::uint32_t> members);

private:
  const Dihedral& group_;
  PairSet sums_;
  PairSet diffs_;
  std::vector<std::uint32_t> inverses_;
};

}  // namespace dihsum
