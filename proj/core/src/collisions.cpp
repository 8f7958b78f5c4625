#include "dihsum/collisions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "dihsum/errors.hpp"
#include "dihsum/sampling.hpp"

namespace dihsum {

RedundancyKind redundancy_kind(const Dihedral& group, const Quadruple& q) noexcept {
  const auto [a, b, c, d] = q;
  if (a == c && b == d) return RedundancyKind::SamePair;
  if (a == d && b == c && !group.is_flip(a) && !group.is_flip(b)) return RedundancyKind::RotationSwap;
  if (group.is_flip(a) && group.is_flip(b) && group.is_flip(c) && group.is_flip(d)) return RedundancyKind::AllFlips;
  return RedundancyKind::None;
}

bool is_redundant_quadruple(const Dihedral& group, const Quadruple& q) noexcept {
  return redundancy_kind(group, q) != RedundancyKind::None;
}

bool is_redundant_quadruple(const std::array<DihElement, 4>& q, const GroupSpec& spec) {
  const Dihedral group(spec);
  Quadruple idx{};
  for (std::size_t i = 0; i < 4; ++i) idx[i] = static_cast<std::uint32_t>(element_index(q[i], spec));
  return is_redundant_quadruple(group, idx);
}

bool is_redundant_triple(const Dihedral& group, std::uint32_t a, std::uint32_t b, std::uint32_t c) noexcept {
  if (a == c) return true;
  if (group.is_flip(a) && group.is_flip(b) && group.is_flip(c)) return true;
  return b == c && !group.is_flip(a) && !group.is_flip(b);
}

MstdInterval naive_mstd_interval(std::size_t m, std::size_t k, Halves xa) {
  if (k > m) throw DomainError("k must not exceed m");
  MstdInterval r;
  r.m = m;
  r.k = k;
  r.zero_collision_criterion = 3 * k >= m && k < m;
  const auto mm = static_cast<long double>(m);
  const long double disc = mm * mm - 3.0L * static_cast<long double>(xa.twice);
  // m^2 >= 6 X_A  <=>  m^2 >= 3 * (2 X_A)
  r.interval_nonempty = static_cast<unsigned __int128>(m) * m >= static_cast<unsigned __int128>(3) * xa.twice;
  if (r.interval_nonempty) {
    const long double root = std::sqrt(std::max(0.0L, disc));
    r.low = (2 * mm - root) / 3;
    r.high = (2 * mm + root) / 3;
  }
  const auto km = static_cast<__int128>(k), mi = static_cast<__int128>(m);
  const __int128 quad = 3 * km * km - 4 * mi * km + mi * mi + static_cast<__int128>(xa.twice);
  r.k_in_interval = quad <= 0 && k < m;
  return r;
}

CollisionReport count_xa(const SubsetD& a) {
  const Dihedral& g = a.group();
  const auto& A = a.members();
  CollisionReport r;
  for (auto p : A)
    for (auto q : A) {
      const std::uint32_t pq = g.mul(p, q);
      for (auto s : A)
        for (auto t : A) {
          if (g.mul(s, t) != pq) continue;
          switch (redundancy_kind(g, {p, q, s, t})) {
            case RedundancyKind::None: ++r.nonredundant_quadruples; break;
            case RedundancyKind::SamePair: ++r.redundant_same_pair; break;
            case RedundancyKind::RotationSwap: ++r.redundant_rotation_swap; break;
            case RedundancyKind::AllFlips: ++r.redundant_all_flips; break;
          }
        }
    }
  for (auto p : A)
    for (auto q : A)
      for (auto s : A) {
        if (is_redundant_triple(g, p, q, s)) continue;
        if (a.contains(g.mul(g.inv(s), g.mul(p, q)))) ++r.nonredundant_triples;
      }
  if (r.nonredundant_quadruples != r.nonredundant_triples)
    throw std::logic_error("quadruple and triple routes disagree on X_A");
  r.xa.twice = r.nonredundant_quadruples;

  const std::uint64_t m = a.m(), k = a.k(), rot = m - k;
  const std::uint64_t pairs = rot * (rot - (rot > 0 ? 1 : 0)) / 2;
  r.naive_sum = 2 * rot * k + pairs + rot;
  r.naive_diff = rot * k + 2 * pairs;
  r.actual_sum = sumset(a).size();
  r.actual_diff = diffset(a).size();
  r.interval = naive_mstd_interval(m, k, r.xa);
  return r;
}

std::uint64_t twice_xa(const Dihedral& group, std::span<const std::uint32_t> members, std::vector<char>& scratch) {
  for (auto x : members) scratch[x] = 1;
  std::uint64_t count = 0;
  for (auto p : members)
    for (auto q : members) {
      const std::uint32_t pq = group.mul(p, q);
      for (auto s : members) {
        if (is_redundant_triple(group, p, q, s)) continue;
        if (scratch[group.mul(group.inv(s), pq)]) ++count;
      }
    }
  for (auto x : members) scratch[x] = 0;
  return count;
}

std::uint64_t TripleClassCounts::nonredundant() const noexcept {
  std::uint64_t s = 0;
  for (std::size_t i = 1; i <= 7; ++i) s += t[i];
  return s;
}

bool TripleClassCounts::within_bounds() const noexcept {
  if (t[1] > 7 * n * n * n) return false;
  for (std::size_t i = 2; i <= 5; ++i)
    if (t[i] > 4 * n * n) return false;
  return t[6] <= 2 * n * j && t[7] <= 3 * n * j;
}

TripleClassCounts triple_class_counts(const GroupSpec& spec, std::uint64_t budget) {
  const std::uint64_t size = 2 * spec.order();
  if (size > 2'000'000 || size * size * size > budget)
    throw BudgetExceeded("triple census needs " + format_estimate(double(size) * double(size) * double(size)) +
                             " triples",
                         double(size) * double(size) * double(size), budget);
  const Dihedral g(spec);
  TripleClassCounts out;
  out.n = spec.order();
  out.j = spec.involutions();
  const auto sz = g.size();
  for (std::uint32_t a = 0; a < sz; ++a)
    for (std::uint32_t b = 0; b < sz; ++b) {
      const std::uint32_t ab = g.mul(a, b);
      for (std::uint32_t c = 0; c < sz; ++c) {
        if (is_redundant_triple(g, a, b, c)) {
          ++out.redundant;
          continue;
        }
        const std::uint32_t d = g.mul(g.inv(c), ab);
        const bool ab_eq = a == b, bc_eq = b == c, ad_eq = a == d, cd_eq = c == d;
        std::size_t cls;
        if (bc_eq && ad_eq) cls = 6;
        else if (ab_eq && cd_eq) cls = 7;
        else if (ab_eq) cls = 2;
        else if (bc_eq) cls = 3;
        else if (ad_eq) cls = 4;
        else if (cd_eq) cls = 5;
        else cls = 1;
        ++out.t[cls];
      }
    }
  return out;
}

XABound expected_xa_bound(std::uint64_t n, std::uint64_t j, std::uint64_t m) {
  if (m < 1) throw DomainError("m must be >= 1");
  if (n < 1) throw DomainError("n must be >= 1");
  const Rational mm(m);
  const Rational m4 = mm * mm * mm * mm;
  XABound b;
  b.bound = (Rational(7, 32) + Rational(1) / mm + Rational(5 * j) / (8 * mm * mm)) * m4 / Rational(n);
  if (m >= 6) {
    b.c2_form = Rational(111 + 5 * j, 288) * m4 / Rational(n);
    if (b.bound > *b.c2_form) throw std::logic_error("X_A bound exceeds its c2 form");
  }
  return b;
}

ExactMeanXA mean_xa_exhaustive(const GroupSpec& spec, std::uint32_t m, std::uint64_t budget) {
  const std::uint64_t size = 2 * spec.order();
  if (m > size) throw DomainError("m exceeds |D|");
  const double subsets = binom_estimate(static_cast<std::int64_t>(size), m);
  const double work = subsets * double(m) * m * m;
  const double cube = double(size) * double(size) * double(size);
  if (work > double(budget) || cube > double(budget))
    throw BudgetExceeded("exact mean X_A needs ~" + format_estimate(std::max(work, cube)) + " steps",
                         std::max(work, cube), budget);
  const Dihedral g(spec);
  const auto sz = static_cast<std::uint32_t>(size);
  const BigInt total_sets = binom(static_cast<std::int64_t>(size), m);

  BigInt twice_sum = 0;
  std::vector<char> scratch(sz, 0);
  std::vector<std::uint32_t> c(m);
  for (std::uint32_t i = 0; i < m; ++i) c[i] = i;
  while (true) {
    twice_sum += twice_xa(g, c, scratch);
    std::size_t i = 0;
    for (; i < m; ++i) {
      const std::uint32_t limit = i + 1 < m ? c[i + 1] : sz;
      if (c[i] + 1 < limit) {
        ++c[i];
        for (std::size_t t = 0; t < i; ++t) c[t] = static_cast<std::uint32_t>(t);
        break;
      }
    }
    if (i == m) break;
  }

  // Weight of a non-redundant triple: number of m-sets containing its s distinct elements.
  std::array<BigInt, 5> weight;
  for (std::int64_t s = 0; s <= 4; ++s) weight[s] = binom(static_cast<std::int64_t>(size) - s, std::int64_t{m} - s);
  BigInt triple_sum = 0;
  std::array<std::uint64_t, 5> by_distinct{};
  for (std::uint32_t a = 0; a < sz; ++a)
    for (std::uint32_t b = 0; b < sz; ++b) {
      const std::uint32_t ab = g.mul(a, b);
      for (std::uint32_t cc = 0; cc < sz; ++cc) {
        if (is_redundant_triple(g, a, b, cc)) continue;
        std::array<std::uint32_t, 4> q{a, b, cc, g.mul(g.inv(cc), ab)};
        std::sort(q.begin(), q.end());
        ++by_distinct[static_cast<std::size_t>(std::unique(q.begin(), q.end()) - q.begin())];
      }
    }
  for (std::size_t s = 1; s <= 4; ++s) triple_sum += weight[s] * by_distinct[s];

  ExactMeanXA out;
  out.subset_major = Rational(twice_sum) / Rational(2 * total_sets);
  out.triple_major = Rational(triple_sum) / Rational(2 * total_sets);
  return out;
}

SampledMeanXA mean_xa_sampled(const GroupSpec& spec, std::uint32_t m, std::uint64_t trials, std::uint64_t seed,
                              unsigned threads) {
  if (trials < 2) throw DomainError("sampled mean needs at least 2 trials");
  if (m > 2 * spec.order()) throw DomainError("m exceeds |D|");
  const Dihedral g(spec);
  threads = resolve_threads(threads);
  struct Acc {
    unsigned __int128 sum = 0, sumsq = 0;
  };
  std::vector<Acc> acc(std::max(1u, threads));
  parallel_chunks(trials, threads, [&](std::uint64_t begin, std::uint64_t end, unsigned w) {
    SubsetSampler sampler(g.size());
    std::vector<char> scratch(g.size(), 0);
    for (std::uint64_t t = begin; t < end; ++t) {
      CounterRng rng(seed, t);
      const std::uint64_t x = twice_xa(g, sampler.draw(rng, m), scratch);
      acc[w].sum += x;
      acc[w].sumsq += static_cast<unsigned __int128>(x) * x;
    }
  });
  unsigned __int128 sum = 0, sumsq = 0;
  for (const auto& a : acc) {
    sum += a.sum;
    sumsq += a.sumsq;
  }
  const long double n = static_cast<long double>(trials);
  const long double mean2 = static_cast<long double>(sum) / n;  // mean of 2 X_A
  const long double var2 =
      (static_cast<long double>(sumsq) - n * mean2 * mean2) / (n - 1);
  SampledMeanXA out;
  out.trials = trials;
  out.seed = seed;
  out.mean = static_cast<double>(mean2 / 2);
  out.stderr_ = static_cast<double>(std::sqrt(std::max(0.0L, var2) / n) / 2);
  return out;
}

std::string_view verdict_name(CollisionVerdict v) {
  switch (v) {
    case CollisionVerdict::Equal: return "equal";
    case CollisionVerdict::ProductMore: return "product-more";
    case CollisionVerdict::CyclicMore: return "cyclic-more";
  }
  return "?";
}

namespace {

inline bool canonical_pair(const Dihedral& g, std::uint32_t a, std::uint32_t b) noexcept {
  return g.is_flip(a) || g.is_flip(b) || a <= b;
}

}  // namespace

std::uint64_t collision_total(const Dihedral& g) {
  std::vector<std::uint64_t> reps(g.size(), 0);
  for (std::uint32_t a = 0; a < g.size(); ++a)
    for (std::uint32_t b = 0; b < g.size(); ++b)
      if (canonical_pair(g, a, b)) ++reps[g.mul(a, b)];
  std::uint64_t total = 0;
  for (auto r : reps) total += r * r;
  return total;
}

std::uint64_t collision_total_brute(const Dihedral& g) {
  std::uint64_t total = 0;
  const auto sz = g.size();
  for (std::uint32_t a = 0; a < sz; ++a)
    for (std::uint32_t b = 0; b < sz; ++b) {
      if (!canonical_pair(g, a, b)) continue;
      const std::uint32_t ab = g.mul(a, b);
      for (std::uint32_t c = 0; c < sz; ++c)
        for (std::uint32_t d = 0; d < sz; ++d)
          if (canonical_pair(g, c, d) && g.mul(c, d) == ab) ++total;
    }
  return total;
}

CrossGroupReport cross_group_collision_totals(std::uint64_t n, std::uint64_t budget) {
  if (n < 2) throw DomainError("cross-group comparison needs n >= 2");
  const double size = 2.0 * double(n) * double(n);
  const double work = size * size * size * size;
  if (work > double(budget))
    throw BudgetExceeded("cross-group brute force needs ~" + format_estimate(work) + " quadruples per group", work,
                         budget);
  const Dihedral product(GroupSpec::product({n, n}));
  const Dihedral cyclic(GroupSpec::cyclic(n * n));
  CrossGroupReport r;
  r.n = n;
  r.product_total = collision_total_brute(product);
  r.cyclic_total = collision_total_brute(cyclic);
  if (r.product_total != collision_total(product) || r.cyclic_total != collision_total(cyclic))
    throw std::logic_error("brute-force and tally collision totals disagree");
  const std::uint64_t s = product.size();
  r.product_raw = s * s * s;
  r.cyclic_raw = s * s * s;
  r.verdict = r.product_total == r.cyclic_total ? CollisionVerdict::Equal
              : r.product_total > r.cyclic_total ? CollisionVerdict::ProductMore
                                                 : CollisionVerdict::CyclicMore;
  r.convention = "ordered quadruples (a,b,c,d) with ab=cd; rotation-rotation pairs counted once per unordered pair";
  return r;
}

PairCase parse_pair_case(std::string_view tag) {
  if (tag == "pairdiff") return PairCase::DiffProduct;
  if (tag == "pairdiff-cyclic") return PairCase::DiffCyclic;
  if (tag == "pairsumtwo") return PairCase::SumProduct;
  if (tag == "pairsumsquare") return PairCase::SumCyclic;
  throw StructuralError("unknown pair-count case '" + std::string(tag) + "'");
}

std::uint64_t pair_count_formula(PairCase c, std::uint64_t n, std::uint64_t x, std::uint64_t y) {
  if (n < 2) throw DomainError("pair counts need n >= 2");
  if (x >= n || y >= n) throw DomainError("target coordinates must lie in [0, n)");
  const std::uint64_t n2 = n * n;
  switch (c) {
    case PairCase::DiffProduct:
    case PairCase::DiffCyclic: return n2;
    case PairCase::SumProduct:
      if (n % 2 == 1) return (n2 + 1) / 2;
      if (x % 2 == 1 || y % 2 == 1) return n2 / 2;
      return (n2 + 4) / 2;
    case PairCase::SumCyclic:
      if (n % 2 == 1) return (n2 + 1) / 2;
      if (y % 2 == 1) return n2 / 2;
      return (n2 + 2) / 2;
  }
  throw StructuralError("invalid pair case");
}

std::uint64_t pair_count_brute(PairCase c, std::uint64_t n, std::uint64_t x, std::uint64_t y) {
  if (n < 2) throw DomainError("pair counts need n >= 2");
  const std::uint64_t n2 = n * n;
  const bool cyclic = c == PairCase::DiffCyclic || c == PairCase::SumCyclic;
  const bool sum = c == PairCase::SumProduct || c == PairCase::SumCyclic;
  // Elements encoded as u = u1*n + u2 in both groups.
  auto combine = [&](std::uint64_t u, std::uint64_t v) -> std::uint64_t {
    if (cyclic) return sum ? (u + v) % n2 : (u + n2 - v) % n2;
    const std::uint64_t u1 = u / n, u2 = u % n, v1 = v / n, v2 = v % n;
    const std::uint64_t r1 = sum ? (u1 + v1) % n : (u1 + n - v1) % n;
    const std::uint64_t r2 = sum ? (u2 + v2) % n : (u2 + n - v2) % n;
    return r1 * n + r2;
  };
  const std::uint64_t target = x * n + y;
  std::uint64_t count = 0;
  for (std::uint64_t u = 0; u < n2; ++u)
    for (std::uint64_t v = sum ? u : 0; v < n2; ++v)
      if (combine(u, v) == target) ++count;
  return count;
}

}  // namespace dihsum
