#include "dihsum/setops.hpp"

#include <bit>
#include <charconv>

#include "dihsum/errors.hpp"

namespace dihsum {

std::size_t PairSet::size() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t PairSet::rotation_count() const noexcept {
  std::size_t c = 0;
  const std::size_t full = n_ / 64;
  for (std::size_t i = 0; i < full; ++i) c += static_cast<std::size_t>(std::popcount(words_[i]));
  if (n_ % 64) c += static_cast<std::size_t>(std::popcount(words_[full] & ((std::uint64_t{1} << (n_ % 64)) - 1)));
  return c;
}

std::vector<std::uint32_t> PairSet::elements() const {
  std::vector<std::uint32_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      out.push_back(static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

PairSet& PairSet::operator|=(const PairSet& other) {
  if (other.n_ != n_) throw StructuralError("pair sets over different groups");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

bool PairSet::subset_of(const PairSet& other) const {
  if (other.n_ != n_) throw StructuralError("pair sets over different groups");
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

std::string_view label_name(ClassLabel label) {
  switch (label) {
    case ClassLabel::MSTD: return "MSTD";
    case ClassLabel::MDTS: return "MDTS";
    case ClassLabel::BALANCED: return "BALANCED";
  }
  return "?";
}

SubsetD::SubsetD(GroupPtr group, std::vector<std::uint32_t> members)
    : group_(std::move(group)), members_(std::move(members)) {
  if (!group_) throw StructuralError("subset without a group");
  std::sort(members_.begin(), members_.end());
  if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    throw StructuralError("duplicate subset member");
  if (!members_.empty() && members_.back() >= group_->size()) throw DomainError("subset member out of range");
  const std::uint32_t n = group_->n();
  k_ = static_cast<std::size_t>(members_.end() - std::lower_bound(members_.begin(), members_.end(), n));
  if (group_->cyclic() && n <= 64) {
    std::uint64_t r = 0, f = 0;
    for (auto x : members_) (x < n ? r : f) |= std::uint64_t{1} << (x < n ? x : x - n);
    rot_mask_ = r;
    flip_mask_ = f;
  }
}

namespace {

void parse_index_list(std::string_view s, std::uint32_t offset, std::uint32_t n, std::vector<std::uint32_t>& out) {
  if (s.empty()) return;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = s.find(',', pos);
    const std::string_view tok = s.substr(pos, comma == std::string_view::npos ? s.size() - pos : comma - pos);
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
      throw StructuralError("bad subset literal index '" + std::string(tok) + "'");
    if (v >= n) throw DomainError("subset literal index out of range");
    out.push_back(v + offset);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
}

}  // namespace

SubsetD SubsetD::parse(GroupPtr group, std::string_view literal) {
  std::vector<std::uint32_t> members;
  const std::uint32_t n = group->n();
  bool seen_r = false, seen_f = false;
  std::size_t pos = 0;
  while (pos < literal.size()) {
    const std::size_t semi = literal.find(';', pos);
    const std::string_view part =
        literal.substr(pos, semi == std::string_view::npos ? literal.size() - pos : semi - pos);
    if (part.size() < 2 || part[1] != ':') throw StructuralError("bad subset literal '" + std::string(literal) + "'");
    if (part[0] == 'r' && !seen_r) {
      seen_r = true;
      parse_index_list(part.substr(2), 0, n, members);
    } else if (part[0] == 'f' && !seen_f) {
      seen_f = true;
      parse_index_list(part.substr(2), n, n, members);
    } else {
      throw StructuralError("bad subset literal '" + std::string(literal) + "'");
    }
    if (semi == std::string_view::npos) break;
    pos = semi + 1;
  }
  return SubsetD(std::move(group), std::move(members));
}

SubsetD SubsetD::from_parts(GroupPtr group, std::span<const std::uint32_t> rotations,
                            std::span<const std::uint32_t> flips) {
  std::vector<std::uint32_t> members(rotations.begin(), rotations.end());
  const std::uint32_t n = group->n();
  for (auto f : flips) {
    if (f >= n) throw DomainError("flip index out of range");
    members.push_back(f + n);
  }
  for (auto r : rotations)
    if (r >= n) throw DomainError("rotation index out of range");
  return SubsetD(std::move(group), std::move(members));
}

bool SubsetD::contains(std::uint32_t i) const { return std::binary_search(members_.begin(), members_.end(), i); }

std::string SubsetD::to_string() const {
  const std::uint32_t n = group_->n();
  std::string r = "r:", f = "f:";
  bool fr = true, ff = true;
  for (auto x : members_) {
    std::string& s = x < n ? r : f;
    bool& first = x < n ? fr : ff;
    if (!first) s += ',';
    s += std::to_string(x < n ? x : x - n);
    first = false;
  }
  return r + ";" + f;
}

PairSet product_set(const Dihedral& group, std::span<const std::uint32_t> xs, std::span<const std::uint32_t> ys,
                    bool invert_second) {
  PairSet out(group.n());
  for (auto x : xs)
    for (auto y : ys) out.insert(group.mul(x, invert_second ? group.inv(y) : y));
  return out;
}

PairSet naive_sumset(const SubsetD& a) { return product_set(a.group(), a.members(), a.members(), false); }
PairSet naive_diffset(const SubsetD& a) { return product_set(a.group(), a.members(), a.members(), true); }

namespace {

inline std::uint64_t full_mask(std::uint32_t n) noexcept {
  return n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

inline std::uint64_t rotl_n(std::uint64_t x, std::uint32_t s, std::uint32_t n, std::uint64_t full) noexcept {
  if (s == 0) return x;
  return ((x << s) | (x >> (n - s))) & full;
}

inline std::uint64_t negate_mask(std::uint64_t x, std::uint32_t n) noexcept {
  std::uint64_t out = 0;
  while (x) {
    const auto i = static_cast<std::uint32_t>(std::countr_zero(x));
    out |= std::uint64_t{1} << (i == 0 ? 0 : n - i);
    x &= x - 1;
  }
  return out;
}

// OR over set bits s of `shifts` of rotl(base, s).
inline std::uint64_t shift_or(std::uint64_t base, std::uint64_t shifts, std::uint32_t n, std::uint64_t full) noexcept {
  std::uint64_t out = 0;
  while (shifts) {
    out |= rotl_n(base, static_cast<std::uint32_t>(std::countr_zero(shifts)), n, full);
    shifts &= shifts - 1;
  }
  return out;
}

PairSet masks_to_pairset(std::uint32_t n, std::uint64_t rot, std::uint64_t flip) {
  PairSet out(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    if ((rot >> i) & 1) out.insert(i);
    if ((flip >> i) & 1) out.insert(n + i);
  }
  return out;
}

}  // namespace

CyclicMasks cyclic_mask_kernel(std::uint32_t n, std::uint64_t rot, std::uint64_t flip) noexcept {
  const std::uint64_t full = full_mask(n);
  const std::uint64_t neg_rot = negate_mask(rot, n);
  const std::uint64_t neg_flip = negate_mask(flip, n);
  const std::uint64_t rr = shift_or(rot, rot, n, full);           // {a + b}
  const std::uint64_t r_minus_r = shift_or(neg_rot, rot, n, full); // {a - b}
  const std::uint64_t ff = shift_or(neg_flip, flip, n, full);     // {f - g}
  const std::uint64_t rf = shift_or(flip, rot, n, full);          // {r + f}
  const std::uint64_t fr = shift_or(neg_rot, flip, n, full);      // {f - r}
  return CyclicMasks{rr | ff, rf | fr, r_minus_r | ff, rf};
}

SumDiffSizes cyclic_mask_sizes(std::uint32_t n, std::uint64_t rot, std::uint64_t flip) noexcept {
  const CyclicMasks k = cyclic_mask_kernel(n, rot, flip);
  return SumDiffSizes{static_cast<std::uint32_t>(std::popcount(k.sum_rot) + std::popcount(k.sum_flip)),
                      static_cast<std::uint32_t>(std::popcount(k.diff_rot) + std::popcount(k.diff_flip))};
}

PairSet sumset(const SubsetD& a) {
  if (a.rot_mask()) {
    const CyclicMasks k = cyclic_mask_kernel(a.group().n(), *a.rot_mask(), *a.flip_mask());
    return masks_to_pairset(a.group().n(), k.sum_rot, k.sum_flip);
  }
  return naive_sumset(a);
}

PairSet diffset(const SubsetD& a) {
  if (a.rot_mask()) {
    const CyclicMasks k = cyclic_mask_kernel(a.group().n(), *a.rot_mask(), *a.flip_mask());
    return masks_to_pairset(a.group().n(), k.diff_rot, k.diff_flip);
  }
  return naive_diffset(a);
}

ClassLabel classify_sizes(std::size_t sum_size, std::size_t diff_size) noexcept {
  if (sum_size > diff_size) return ClassLabel::MSTD;
  if (sum_size < diff_size) return ClassLabel::MDTS;
  return ClassLabel::BALANCED;
}

ClassLabel classify(const SubsetD& a) {
  if (a.rot_mask()) {
    const SumDiffSizes s = cyclic_mask_sizes(a.group().n(), *a.rot_mask(), *a.flip_mask());
    return classify_sizes(s.sum, s.diff);
  }
  return classify_sizes(naive_sumset(a).size(), naive_diffset(a).size());
}

Decomposition decompose(const SubsetD& a) {
  const auto& ms = a.members();
  const auto split = ms.end() - static_cast<std::ptrdiff_t>(a.k());
  std::vector<std::uint32_t> rot(ms.begin(), split), flip(split, ms.end());
  const Dihedral& g = a.group();
  Decomposition d{SubsetD(a.group_ptr(), rot),
                  SubsetD(a.group_ptr(), flip),
                  product_set(g, rot, rot, false),
                  product_set(g, flip, flip, false),
                  product_set(g, rot, flip, false),
                  product_set(g, flip, rot, false),
                  product_set(g, rot, rot, true)};
  return d;
}

Classifier::Classifier(const Dihedral& group) : group_(group), sums_(group.n()), diffs_(group.n()) {}

SumDiffSizes Classifier::sizes(std::span<const std::uint32_t> members) {
  inverses_.resize(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) inverses_[i] = group_.inv(members[i]);
  SumDiffSizes out;
  for (auto x : members) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      const std::uint32_t s = group_.mul(x, members[i]);
      if (!sums_.contains(s)) {
        sums_.insert(s);
        ++out.sum;
      }
      const std::uint32_t d = group_.mul(x, inverses_[i]);
      if (!diffs_.contains(d)) {
        diffs_.insert(d);
        ++out.diff;
      }
    }
  }
  if (members.size() * members.size() < group_.size() / 16) {
    for (auto x : members)
      for (std::size_t i = 0; i < members.size(); ++i) {
        sums_.erase(group_.mul(x, members[i]));
        diffs_.erase(group_.mul(x, inverses_[i]));
      }
  } else {
    sums_.clear();
    diffs_.clear();
  }
  return out;
}

}  // namespace dihsum
