// Runs each acceptance criterion at its stated tolerance and prints one
// PASS/FAIL line per criterion. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <dihsum/dihsum.hpp>

#include "oracles.hpp"

using namespace dihsum;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double seconds_limit;
  std::function<Outcome()> run;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome two_flip_counts() {
  Outcome o{true, ""};
  const std::pair<std::uint64_t, std::uint64_t> targets[] = {{5, 50}, {6, 60}, {8, 160}};
  for (auto [n, target] : targets) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto c = two_flip_triple_counts(n);
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = c.exhaustive == target && c.closed_form == target && s < 1.0;
    o.pass &= ok;
    o.detail += fmt("n=%llu exhaustive=%llu closed=%llu target=%llu%s; ", (unsigned long long)n,
                    (unsigned long long)c.exhaustive, (unsigned long long)c.closed_form, (unsigned long long)target,
                    ok ? "" : " MISMATCH");
  }
  return o;
}

Outcome small_m_dominance() {
  Outcome o{true, ""};
  std::uint64_t worst_margin = UINT64_MAX;
  for (std::uint32_t n = 3; n <= 12; ++n)
    for (std::uint32_t m : {2u, 3u}) {
      const auto r = census_exhaustive(GroupSpec::cyclic(n), m);
      if (r.aggregate.mstd <= r.aggregate.mdts) {
        o.pass = false;
        o.detail += fmt("n=%u m=%u mstd=%llu mdts=%llu; ", n, m, (unsigned long long)r.aggregate.mstd,
                        (unsigned long long)r.aggregate.mdts);
      } else {
        worst_margin = std::min<std::uint64_t>(worst_margin, r.aggregate.mstd - r.aggregate.mdts);
      }
    }
  o.detail += fmt("20 censuses, smallest MSTD-MDTS margin %llu", (unsigned long long)worst_margin);
  return o;
}

Outcome large_m_saturation() {
  std::uint64_t checked = 0, violations = 0, sampled_cases = 0;
  for (std::uint32_t n = 3; n <= 8; ++n) {
    auto g = make_group(GroupSpec::cyclic(n));
    Classifier cls(*g);
    for (std::uint32_t m = n + 1; m <= 2 * n; ++m) {
      auto check = [&](std::span<const std::uint32_t> a) {
        const auto s = cls.sizes(a);
        ++checked;
        if (s.sum != 2 * n || s.diff != 2 * n) ++violations;
      };
      if (binom_u64(2 * n, m) <= 10'000'000) {
        oracle::for_each_subset(static_cast<int>(2 * n), static_cast<int>(m), [&](const std::vector<int>& A) {
          const std::vector<std::uint32_t> a(A.begin(), A.end());
          check(a);
        });
      } else {
        ++sampled_cases;
        SubsetSampler sampler(2 * n);
        for (std::uint64_t t = 0; t < 10'000; ++t) {
          CounterRng rng(1, t);
          check(sampler.draw(rng, m));
        }
      }
    }
  }
  return {violations == 0, fmt("%llu sets checked (%llu sampled cases), %llu violations", (unsigned long long)checked,
                               (unsigned long long)sampled_cases, (unsigned long long)violations)};
}

Outcome exact_expectation() {
  Outcome o{true, ""};
  int cases = 0;
  for (int n : {3, 5, 7}) {
    const oracle::Group G{{n}};
    for (int m = 1; m <= 2 * n; ++m) {
      std::uint64_t sum = 0, count = 0;
      oracle::for_each_subset(2 * n, m, [&](const std::vector<int>& A) {
        sum += oracle::diffset(G, A).size();
        ++count;
      });
      const auto e = expected_diffset_size(n, m, ModeRequest::Rational);
      ++cases;
      if (!e.exact || *e.exact != Rational(sum, count)) {
        o.pass = false;
        o.detail += fmt("mismatch at n=%d m=%d; ", n, m);
      }
    }
  }
  const auto a = *expected_diffset_size(3, 2, ModeRequest::Rational).exact;
  const auto b = *expected_diffset_size(5, 2, ModeRequest::Rational).exact;
  o.pass &= a == Rational(12, 5) && b == Rational(22, 9);
  o.detail += fmt("%d (n,m) pairs exact; E(3,2)=%s E(5,2)=%s", cases, to_string(a).c_str(), to_string(b).c_str());
  return o;
}

Outcome curve_crossing() {
  const std::int64_t n = 10007;
  const auto curve = expectation_curve(n, 300, 1, ModeRequest::Log);
  const auto at1000 = expected_diffset_size(n, 1000, ModeRequest::Log);
  bool monotone = true;
  for (std::size_t i = 1; i < curve.points.size(); ++i) monotone &= curve.points[i].expected >= curve.points[i - 1].expected;
  const bool crossing_ok = curve.crossing && *curve.crossing >= 138 && *curve.crossing <= 140;
  const bool tail_ok = at1000.value >= 2.0L * n - 0.5L;
  return {crossing_ok && tail_ok && curve.mode == EvalMode::Log,
          fmt("m*=%lld vs 1.3875*sqrt(n)=%.2f; E(1000)=%.6Lf (2n-0.5=%.1f); grid monotone: %s",
              (long long)curve.crossing.value_or(-1), 1.3875 * std::sqrt(double(n)), at1000.value, 2.0 * n - 0.5,
              monotone ? "yes" : "no")};
}

Outcome mean_xa_bound() {
  Outcome o{true, ""};
  for (std::uint64_t n : {5u, 7u}) {
    const auto spec = GroupSpec::cyclic(n);
    for (std::uint32_t m = 1; m <= 3; ++m) {
      const auto e = mean_xa_exhaustive(spec, m);
      const auto b = expected_xa_bound(spec, m);
      if (e.subset_major != e.triple_major || e.subset_major > b.bound) {
        o.pass = false;
        o.detail += fmt("Z%llu m=%u fails; ", (unsigned long long)n, m);
      }
    }
  }
  const auto spec = GroupSpec::cyclic(101);
  const auto s = mean_xa_sampled(spec, 6, 100'000, 20260101);
  const double bound = static_cast<double>(to_long_double(expected_xa_bound(spec, 6).bound));
  const double gap = (bound - s.mean) / s.stderr_;
  o.pass &= gap >= 3.0;
  o.detail += fmt("6 exact instances within bound; Z101 m=6: mean %.5f +- %.5f vs bound %.4f (%.1f SE below)", s.mean,
                  s.stderr_, bound, gap);
  return o;
}

Outcome triple_bounds() {
  Outcome o{true, ""};
  std::vector<GroupSpec> groups;
  for (std::uint64_t a = 1; a <= 10; ++a) groups.push_back(GroupSpec::cyclic(a));
  for (std::uint64_t a = 2; a <= 10; ++a)
    for (std::uint64_t b = a; a * b <= 10; ++b) groups.push_back(GroupSpec::product({a, b}));
  for (const auto& spec : groups) {
    const auto c = triple_class_counts(spec);
    const std::uint64_t size = 2 * spec.order();
    if (!c.within_bounds() || c.nonredundant() + c.redundant != size * size * size) {
      o.pass = false;
      o.detail += "violation in " + spec.to_string() + "; ";
    }
  }
  o.detail += fmt("%zu groups, all classes within bounds and partitioning D^3", groups.size());
  return o;
}

Outcome cross_group() {
  Outcome o{true, ""};
  for (std::uint64_t n = 2; n <= 5; ++n) {
    const auto r = cross_group_collision_totals(n);
    const auto want = n % 2 == 1 ? CollisionVerdict::Equal : CollisionVerdict::ProductMore;
    o.pass &= r.verdict == want;
    o.detail += fmt("n=%llu %llu vs %llu (%s); ", (unsigned long long)n, (unsigned long long)r.product_total,
                    (unsigned long long)r.cyclic_total, std::string(verdict_name(r.verdict)).c_str());
  }
  return o;
}

Outcome proportion_threshold() {
  const auto six = proportion_condition(6);
  bool all = true;
  std::uint64_t first_fail = 0;
  for (std::uint64_t m = 6; m <= 2000; ++m)
    if (!proportion_condition(m).pass) {
      all = false;
      if (!first_fail) first_fail = m;
    }
  return {six.value() == Rational(41, 64) && six.pass && all,
          fmt("value(6)=%s; m=6..2000 %s", to_string(six.value()).c_str(),
              all ? "all pass" : fmt("first failure at m=%llu", (unsigned long long)first_fail).c_str())};
}

Outcome sampled_majority() {
  const std::uint64_t n = 2311, m = 6, trials = 100'000, seed = 20240617;
  const auto rep = census_sampled(GroupSpec::cyclic(n), m, trials, seed);
  const auto& agg = rep.aggregate;
  const auto win = mstd_window(n, m, 1);
  const Interval among = wilson_interval(agg.mstd, agg.mstd + agg.mdts);
  const bool separated = agg.mstd_ci->low > agg.mdts_ci->high;
  const bool overall_half = agg.mstd_ci->low > 0.5;
  const bool among_half = among.low > 0.5;
  return {separated && (overall_half || among_half),
          fmt("MSTD %.4f [%.4f, %.4f], MDTS %.4f [%.4f, %.4f]; MSTD among unbalanced [%.4f, %.4f]; "
              "window check cj*sqrt(n)=%.3f: %s",
              double(agg.mstd) / trials, agg.mstd_ci->low, agg.mstd_ci->high, double(agg.mdts) / trials,
              agg.mdts_ci->low, agg.mdts_ci->high, among.low, among.high, double(win.cj_sqrt_n),
              win.inside ? "inside" : "outside")};
}

std::uint32_t rotl(std::uint32_t x, int s, int n) {
  const std::uint32_t mask = (1u << n) - 1;
  s %= n;
  return s == 0 ? x : ((x << s) | (x >> (n - s))) & mask;
}

Outcome kernels() {
  std::uint64_t checks = 0, failures = 0;
  auto expect = [&](const Rational& got, std::uint64_t num, const oracle::Big& den) {
    ++checks;
    if (got != Rational(BigInt(num), BigInt(den))) ++failures;
  };
  for (int n = 1; n <= 10; ++n) {
    for (int i = 0; i < n; ++i)
      for (int t = 0; t <= n; ++t) {
        const auto den = oracle::pascal(n, t);
        expect(*prob_missing_sum_cyclic(n, i, t).exact,
               oracle::count_masks(n, t, [&](unsigned S) { return !oracle::in_sum(n, S, S, i); }), den);
        expect(*prob_missing_diff_cyclic(n, i, t).exact,
               oracle::count_masks(n, t, [&](unsigned S) { return !oracle::in_diff(n, S, S, i); }), den);
      }
    for (int k = 0; k <= n; ++k) {
      ++checks;
      if (n >= 2 && g_nonadjacent(n, k) != oracle::nonadjacent(n, k)) ++failures;
    }
    // S1 + S2 as a mask: OR of S1 rotated by each member of S2.
    for (int k = 0; k <= n; ++k)
      for (int mk = 0; mk <= n; ++mk) {
        std::vector<std::uint64_t> avoid(n, 0);
        std::uint64_t pairs = 0;
        for (std::uint32_t s1 = 0; s1 < (1u << n); ++s1) {
          if (__builtin_popcount(s1) != mk) continue;
          for (std::uint32_t s2 = 0; s2 < (1u << n); ++s2) {
            if (__builtin_popcount(s2) != k) continue;
            ++pairs;
            std::uint32_t sums = 0;
            for (int y = 0; y < n; ++y)
              if (s2 >> y & 1) sums |= rotl(s1, y, n);
            for (int i = 0; i < n; ++i) avoid[i] += !(sums >> i & 1);
          }
        }
        const auto got = *prob_missing_cross_sum(n, k, mk).exact;
        for (int i = 0; i < n; ++i) expect(got, avoid[i], oracle::Big(pairs));
      }
  }
  return {failures == 0, fmt("%llu kernel values compared for n <= 10, %llu mismatches", (unsigned long long)checks,
                             (unsigned long long)failures)};
}

Outcome binomial_identity() {
  std::uint64_t checks = 0, failures = 0;
  for (int n = 0; n <= 60; ++n)
    for (int m = 0; m <= n; ++m) {
      oracle::Big lhs = 0;
      for (int k = 0; k <= m; ++k) lhs += oracle::pascal(n, k) * oracle::pascal(n - k, m - k);
      const bool independent = lhs == (oracle::Big(1) << m) * oracle::pascal(n, m);
      ++checks;
      if (!binomial_identity_check(n, m) || !independent) ++failures;
    }
  return {failures == 0, fmt("%llu (n,m) pairs, %llu failures", (unsigned long long)checks, (unsigned long long)failures)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "three-element two-flip MSTD counts", 3.0, two_flip_counts},
      {2, "MSTD outnumber MDTS at m = 2, 3", 10.0, small_m_dominance},
      {3, "m > n forces A+A = A-A = D", 60.0, large_m_saturation},
      {4, "exact E|A-A| equals enumeration", 30.0, exact_expectation},
      {5, "E|A-A| crossing for n = 10007", 60.0, curve_crossing},
      {6, "mean X_A below its bound", 120.0, mean_xa_bound},
      {7, "triple-class sizes within bounds", 60.0, triple_bounds},
      {8, "cross-group collision dichotomy", 60.0, cross_group},
      {9, "binomial proportion threshold", 10.0, proportion_threshold},
      {10, "sampled MSTD majority, n = 2311, m = 6", 120.0, sampled_majority},
      {11, "probability kernels equal enumeration", 30.0, kernels},
      {12, "binomial convolution identity", 5.0, binomial_identity},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s < c.seconds_limit;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("[%s] %2d. %s (%.2f s, limit %.0f s%s): %s\n", pass ? "PASS" : "FAIL", c.id, c.name, s,
                c.seconds_limit, in_time ? "" : ", OVER TIME", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
