#include "dihsum/census.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "dihsum/errors.hpp"
#include "dihsum/exact.hpp"

namespace dihsum {

namespace {

// Colex successor over r-combinations of [0, n); false after the last one.
bool next_combination(std::vector<std::uint32_t>& c, std::uint32_t n) {
  const std::size_t r = c.size();
  for (std::size_t i = 0; i < r; ++i) {
    const std::uint32_t limit = i + 1 < r ? c[i + 1] : n;
    if (c[i] + 1 < limit) {
      ++c[i];
      for (std::size_t j = 0; j < i; ++j) c[j] = static_cast<std::uint32_t>(j);
      return true;
    }
  }
  return false;
}

std::vector<std::uint32_t> colex_unrank(std::uint64_t rank, std::uint32_t r) {
  std::vector<std::uint32_t> c(r);
  for (std::uint32_t i = r; i-- > 0;) {
    std::uint32_t x = i;
    while (binom_u64(x + 1, i + 1) <= rank) ++x;
    c[i] = x;
    rank -= binom_u64(x, i + 1);
  }
  return c;
}

std::uint64_t mask_of(const std::vector<std::uint32_t>& c) {
  std::uint64_t m = 0;
  for (auto x : c) m |= std::uint64_t{1} << x;
  return m;
}

void tally(CensusRow& row, ClassLabel label) {
  ++row.total;
  switch (label) {
    case ClassLabel::MSTD: ++row.mstd; break;
    case ClassLabel::MDTS: ++row.mdts; break;
    case ClassLabel::BALANCED: ++row.balanced; break;
  }
}

std::vector<std::uint32_t> feasible_ks(const GroupSpec& spec, std::uint32_t m, std::optional<KRange> k_range) {
  const std::uint64_t n = spec.order();
  std::vector<std::uint32_t> ks;
  for (std::uint32_t k = 0; k <= m; ++k) {
    if (k > n || m - k > n) continue;
    if (k_range && (k < k_range->lo || k > k_range->hi)) continue;
    ks.push_back(k);
  }
  return ks;
}

CensusRow census_k_row(const Dihedral& group, std::uint32_t m, std::uint32_t k, unsigned threads) {
  const std::uint32_t n = group.n();
  const std::uint32_t r = m - k;
  const std::uint64_t outer = binom_u64(n, r);
  const bool use_masks = group.cyclic() && n <= 64;
  std::vector<CensusRow> partial(std::max(1u, threads));

  parallel_chunks(outer, threads, [&](std::uint64_t begin, std::uint64_t end, unsigned worker) {
    CensusRow& row = partial[worker];
    if (begin >= end) return;
    Classifier classifier(group);
    std::vector<std::uint32_t> rot = colex_unrank(begin, r);
    std::vector<std::uint32_t> members;
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      std::vector<std::uint32_t> flip(k);
      for (std::uint32_t i = 0; i < k; ++i) flip[i] = i;
      const std::uint64_t rmask = use_masks ? mask_of(rot) : 0;
      do {
        if (use_masks) {
          const SumDiffSizes s = cyclic_mask_sizes(n, rmask, mask_of(flip));
          tally(row, classify_sizes(s.sum, s.diff));
        } else {
          members.assign(rot.begin(), rot.end());
          for (auto f : flip) members.push_back(f + n);
          const SumDiffSizes s = classifier.sizes(members);
          tally(row, classify_sizes(s.sum, s.diff));
        }
      } while (next_combination(flip, n));
      next_combination(rot, n);
    }
  });

  CensusRow out;
  out.k = k;
  for (const auto& p : partial) out += p;
  return out;
}

}  // namespace

const CensusRow* CensusReport::row(std::uint32_t k) const {
  for (const auto& r : rows)
    if (r.k == k) return &r;
  return nullptr;
}

std::uint64_t exhaustive_size(const GroupSpec& spec, std::uint32_t m, std::optional<KRange> k_range) {
  const auto n = static_cast<std::int64_t>(spec.order());
  std::uint64_t total = 0;
  for (auto k : feasible_ks(spec, m, k_range)) {
    const std::uint64_t a = binom_u64(n, k), b = binom_u64(n, m - k);
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t t = a * b;
    if (total > std::numeric_limits<std::uint64_t>::max() - t) return std::numeric_limits<std::uint64_t>::max();
    total += t;
  }
  return total;
}

CensusReport census_exhaustive(const GroupSpec& spec, std::uint32_t m, std::optional<KRange> k_range,
                               const CensusOptions& options) {
  if (m > 2 * spec.order()) throw DomainError("m exceeds |D| = 2n");
  const std::uint64_t size = exhaustive_size(spec, m, k_range);
  if (size > options.budget) {
    double estimate = 0;
    for (auto k : feasible_ks(spec, m, k_range))
      estimate += binom_estimate(static_cast<std::int64_t>(spec.order()), k) *
                  binom_estimate(static_cast<std::int64_t>(spec.order()), m - k);
    throw BudgetExceeded("exhaustive census needs ~" + format_estimate(estimate) + " classified sets",
                         estimate, options.budget);
  }
  const Dihedral group(spec);
  const unsigned threads = resolve_threads(options.threads);
  CensusReport report;
  report.spec = spec;
  report.m = m;
  report.mode = CensusMode::Exhaustive;
  for (auto k : feasible_ks(spec, m, k_range)) {
    report.rows.push_back(census_k_row(group, m, k, threads));
    report.aggregate += report.rows.back();
  }
  return report;
}

CensusReport census_sampled(const GroupSpec& spec, std::uint32_t m, std::uint64_t trials, std::uint64_t seed,
                            const CensusOptions& options) {
  if (trials < 1) throw DomainError("trials must be >= 1");
  if (m > 2 * spec.order()) throw DomainError("m exceeds |D| = 2n");
  const Dihedral group(spec);
  const std::uint32_t n = group.n();
  const unsigned threads = resolve_threads(options.threads);
  const std::vector<std::uint32_t> ks = feasible_ks(spec, m, std::nullopt);
  std::vector<std::vector<CensusRow>> partial(std::max(1u, threads), std::vector<CensusRow>(m + 1));

  parallel_chunks(trials, threads, [&](std::uint64_t begin, std::uint64_t end, unsigned worker) {
    auto& rows = partial[worker];
    Classifier classifier(group);
    SubsetSampler sampler(group.size());
    const bool use_masks = group.cyclic() && n <= 64;
    for (std::uint64_t t = begin; t < end; ++t) {
      CounterRng rng(seed, t);
      const auto& members = sampler.draw(rng, m);
      const auto k = static_cast<std::uint32_t>(members.end() - std::lower_bound(members.begin(), members.end(), n));
      SumDiffSizes s;
      if (use_masks) {
        std::uint64_t rm = 0, fm = 0;
        for (auto x : members) (x < n ? rm : fm) |= std::uint64_t{1} << (x < n ? x : x - n);
        s = cyclic_mask_sizes(n, rm, fm);
      } else {
        s = classifier.sizes(members);
      }
      tally(rows[k], classify_sizes(s.sum, s.diff));
    }
  });

  CensusReport report;
  report.spec = spec;
  report.m = m;
  report.mode = CensusMode::Sampled;
  report.trials = trials;
  report.seed = seed;
  for (auto k : ks) {
    CensusRow row;
    row.k = k;
    for (const auto& p : partial) row += p[k];
    row.mstd_ci = wilson_interval(row.mstd, row.total);
    row.mdts_ci = wilson_interval(row.mdts, row.total);
    report.aggregate += row;
    report.rows.push_back(row);
  }
  report.aggregate.mstd_ci = wilson_interval(report.aggregate.mstd, report.aggregate.total);
  report.aggregate.mdts_ci = wilson_interval(report.aggregate.mdts, report.aggregate.total);
  return report;
}

StructuralReport verify_structural(const SubsetD& a) {
  const std::uint64_t n = a.group().n();
  const std::size_t rot = a.m() - a.k();
  StructuralReport r;
  r.large_part = 2 * std::max<std::uint64_t>(rot, a.k()) > n;
  r.more_than_n = a.m() > n;
  const PairSet sums = sumset(a);
  const PairSet diffs = diffset(a);
  r.rotations_in_sum = sums.rotation_count() == n;
  r.rotations_in_diff = diffs.rotation_count() == n;
  r.sum_is_group = sums.size() == 2 * n;
  r.diff_is_group = diffs.size() == 2 * n;
  r.label = classify_sizes(sums.size(), diffs.size());
  return r;
}

std::uint64_t two_flip_triple_formula(std::uint64_t n) {
  if (n < 3) throw DomainError("two-flip triple counts need n >= 3");
  // n C(n,2) sets in all; the rotation r^i with i = -i makes the set balanced
  // (one such i for odd n, two for even n), and for 4 | n so do i = n/4, 3n/4
  // with k - j = n/2.
  const std::uint64_t total = n * n * (n - 1) / 2;
  const std::uint64_t pairs = n * (n - 1) / 2;
  if (n % 2 == 1) return total - pairs;
  if (n % 4 == 2) return total - 2 * pairs;
  return total - 2 * pairs - n;
}

TwoFlipTripleCounts two_flip_triple_counts(std::uint64_t n, const CensusOptions& options) {
  TwoFlipTripleCounts c;
  c.n = n;
  c.closed_form = two_flip_triple_formula(n);
  const CensusReport rep = census_exhaustive(GroupSpec::cyclic(n), 3, KRange{2, 2}, options);
  c.exhaustive = rep.aggregate.mstd;
  return c;
}

}  // namespace dihsum
