#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <dihsum/errors.hpp>
#include <dihsum/expectation.hpp>

#include "oracles.hpp"

using namespace dihsum;

namespace {

Rational ratio(std::uint64_t num, const oracle::Big& den) { return Rational(BigInt(num), BigInt(den)); }

// Mean |A-A| over all m-subsets of Dih(Z_n), by enumeration.
Rational brute_mean_diff(int n, int m) {
  const oracle::Group G{{n}};
  std::uint64_t sum = 0, count = 0;
  oracle::for_each_subset(2 * n, m, [&](const std::vector<int>& A) {
    sum += oracle::diffset(G, A).size();
    ++count;
  });
  return Rational(sum, count);
}

}  // namespace

TEST_CASE("non-adjacent subsets of a cycle") {
  CHECK(g_nonadjacent(7, 0) == 1);
  CHECK(g_nonadjacent(5, 2) == 5);
  CHECK(g_nonadjacent(9, 1) == 9);
  for (int N = 2; N <= 14; ++N)
    for (int k = 0; k <= N; ++k) CHECK(g_nonadjacent(N, k) == oracle::nonadjacent(N, k));
}

TEST_CASE("kernel examples") {
  CHECK(*prob_missing_sum_cyclic(4, 2, 1).exact == Rational(1, 2));
  CHECK(*prob_missing_sum_cyclic(4, 1, 2).exact == Rational(2, 3));
  CHECK(*prob_missing_sum_cyclic(5, 0, 2).exact == Rational(2, 5));
  CHECK(*prob_missing_diff_cyclic(5, 1, 2).exact == Rational(1, 2));
  CHECK(*prob_missing_diff_cyclic(7, 3, 0).exact == 1);
  CHECK(*prob_missing_diff_cyclic(7, 0, 0).exact == 1);
  CHECK(*prob_missing_diff_cyclic(7, 0, 2).exact == 0);
  CHECK(*prob_missing_cross_sum(5, 1, 2).exact == Rational(3, 5));
  CHECK(*prob_missing_cross_sum(6, 0, 4).exact == 1);
  CHECK(*prob_missing_cross_sum(6, 6, 1).exact == 0);
  CHECK(*prob_k_flips(3, 2, 1).exact == Rational(3, 5));
  CHECK(*prob_k_flips(3, 5, 4).exact == 0);
  Rational total = 0;
  for (int k = 0; k <= 5; ++k) total += *prob_k_flips(7, 5, k).exact;
  CHECK(total == 1);
}

TEST_CASE("kernels equal enumeration for n <= 10") {
  for (int n = 1; n <= 10; ++n)
    for (int i = 0; i < n; ++i)
      for (int t = 0; t <= n; ++t) {
        const auto subsets = oracle::pascal(n, t);
        const auto sum_avoid = oracle::count_masks(n, t, [&](unsigned S) { return !oracle::in_sum(n, S, S, i); });
        const auto diff_avoid = oracle::count_masks(n, t, [&](unsigned S) { return !oracle::in_diff(n, S, S, i); });
        INFO("n=" << n << " i=" << i << " t=" << t);
        CHECK(*prob_missing_sum_cyclic(n, i, t).exact == ratio(sum_avoid, subsets));
        CHECK(*prob_missing_diff_cyclic(n, i, t).exact == ratio(diff_avoid, subsets));
      }
}

TEST_CASE("cross-sum kernel equals enumeration and ignores the target") {
  for (int n = 1; n <= 7; ++n)
    for (int k = 0; k <= n; ++k)
      for (int mk = 0; mk <= n; ++mk) {
        const auto expect = *prob_missing_cross_sum(n, k, mk).exact;
        for (int i = 0; i < n; ++i) {
          std::uint64_t avoid = 0, pairs = 0;
          for (unsigned S1 = 0; S1 < (1u << n); ++S1) {
            if (__builtin_popcount(S1) != mk) continue;
            for (unsigned S2 = 0; S2 < (1u << n); ++S2) {
              if (__builtin_popcount(S2) != k) continue;
              ++pairs;
              avoid += !oracle::in_sum(n, S1, S2, i);
            }
          }
          CHECK(expect == Rational(avoid, pairs));
        }
      }
}

TEST_CASE("joint flip term") {
  CHECK(prob_joint_flip_term(3, 0, 1, 1) == Rational(4, 9));
  for (int n = 1; n <= 7; ++n)
    for (int i = 0; i < n; ++i)
      for (int k = 0; k <= n; ++k)
        for (int mk = 0; mk <= n; ++mk) {
          std::uint64_t avoid = 0, pairs = 0;
          for (unsigned S1 = 0; S1 < (1u << n); ++S1) {
            if (__builtin_popcount(S1) != mk) continue;
            for (unsigned S2 = 0; S2 < (1u << n); ++S2) {
              if (__builtin_popcount(S2) != k) continue;
              ++pairs;
              avoid += !oracle::in_sum(n, S1, S2, i) && !oracle::in_diff(n, S2, S1, i);
            }
          }
          CHECK(prob_joint_flip_term(n, i, k, mk) == Rational(avoid, pairs));
        }
  CHECK_THROWS_AS(prob_joint_flip_term(30, 0, 15, 3, 1000), BudgetExceeded);
}

TEST_CASE("element-missing probabilities equal enumeration") {
  for (int n = 2; n <= 6; ++n) {
    const oracle::Group G{{n}};
    for (int m = 0; m <= 2 * n; ++m) {
      std::vector<std::uint64_t> miss_sum(2 * n, 0), miss_diff(2 * n, 0);
      std::uint64_t count = 0;
      oracle::for_each_subset(2 * n, m, [&](const std::vector<int>& A) {
        const auto s = oracle::sumset(G, A), d = oracle::diffset(G, A);
        for (int x = 0; x < 2 * n; ++x) {
          miss_sum[x] += !s.count(x);
          miss_diff[x] += !d.count(x);
        }
        ++count;
      });
      for (int x = 0; x < 2 * n; ++x) {
        INFO("n=" << n << " m=" << m << " x=" << x);
        const auto ps = prob_element_missing(n, m, static_cast<std::uint32_t>(x), MissingFrom::Sum);
        const auto pd = prob_element_missing(n, m, static_cast<std::uint32_t>(x), MissingFrom::Diff);
        CHECK(*ps.exact == Rational(miss_sum[x], count));
        CHECK(*pd.exact == Rational(miss_diff[x], count));
      }
    }
  }
  for (int m = 1; m <= 10; ++m) CHECK(*prob_element_missing(5, m, 0, MissingFrom::Diff).exact == 0);
}

TEST_CASE("missing mass reproduces E|A-A|") {
  Rational missing = 0;
  for (std::uint32_t x = 0; x < 10; ++x) missing += *prob_element_missing(5, 2, x, MissingFrom::Diff).exact;
  CHECK(Rational(10) - missing == Rational(22, 9));
}

TEST_CASE("sampling fallback for the joint term") {
  ElementMissingOptions strict;
  strict.enumeration_budget = 10;
  strict.monte_carlo_fallback = false;
  CHECK_THROWS_AS(prob_element_missing(30, 6, 31, MissingFrom::Sum, strict), BudgetExceeded);

  ElementMissingOptions mc = strict;
  mc.monte_carlo_fallback = true;
  mc.trials = 40000;
  mc.seed = 12;
  const auto est = prob_element_missing(12, 6, 14, MissingFrom::Sum, mc);
  CHECK(est.mode == EvalMode::MonteCarlo);
  CHECK_FALSE(est.exact.has_value());
  REQUIRE(est.std_error.has_value());
  const auto exact = prob_element_missing(12, 6, 14, MissingFrom::Sum);
  CHECK(std::abs(est.value() - exact.value()) <= 4 * *est.std_error + 1e-12);
}

TEST_CASE("probability values carry a consistent log") {
  for (int n = 2; n <= 10; ++n)
    for (int t = 0; t <= n; ++t) {
      const auto p = prob_missing_sum_cyclic(n, 1 % n, t);
      if (*p.exact == 0) {
        CHECK(std::isinf(p.log_value));
        continue;
      }
      CHECK(std::abs(std::exp(p.log_value) - to_long_double(*p.exact)) <= 1e-12L * to_long_double(*p.exact));
    }
}

TEST_CASE("E|A-A| anchors") {
  CHECK(*expected_diffset_size(3, 2).exact == Rational(12, 5));
  CHECK(*expected_diffset_size(5, 2).exact == Rational(22, 9));
  CHECK(*expected_diffset_size(3, 6).exact == 6);
  CHECK_THROWS_AS(expected_diffset_size(6, 2), DomainError);
  CHECK_THROWS_AS(expected_diffset_size(5, 11), DomainError);
  CHECK_THROWS_AS(expected_diffset_size(5, 0), DomainError);
}

TEST_CASE("E|A-A| equals the enumerated mean") {
  for (int n : {2, 3, 5, 7})
    for (int m = 1; m <= 2 * n; ++m) {
      INFO("n=" << n << " m=" << m);
      CHECK(*expected_diffset_size(n, m).exact == brute_mean_diff(n, m));
    }
}

TEST_CASE("rational and log evaluation agree") {
  for (int n : {2, 3, 5, 11, 31, 97, 101, 199})
    for (int m = 1; m <= 2 * n; m += (n > 50 ? 7 : 1)) {
      const auto r = expected_diffset_size(n, m, ModeRequest::Rational);
      const auto l = expected_diffset_size(n, m, ModeRequest::Log);
      CHECK(l.mode == EvalMode::Log);
      CHECK_FALSE(l.exact.has_value());
      CHECK(std::abs(l.value - r.value) <= 1e-9L * r.value);
    }
  CHECK(expected_diffset_size(211, 10).mode == EvalMode::Log);
  CHECK(expected_diffset_size(199, 10).mode == EvalMode::Rational);
}

TEST_CASE("E|A-A| against sampling") {
  const int n = 101;
  const oracle::Group G{{n}};
  for (int m : {5, 20, 50}) {
    const auto e = expected_diffset_size(n, m);
    std::mt19937_64 rng(static_cast<std::uint64_t>(m));
    const int trials = 20000;
    double sum = 0, sumsq = 0;
    std::vector<int> all(2 * n);
    std::iota(all.begin(), all.end(), 0);
    for (int t = 0; t < trials; ++t) {
      std::shuffle(all.begin(), all.end(), rng);
      const std::vector<int> A(all.begin(), all.begin() + m);
      const double x = static_cast<double>(oracle::diffset(G, A).size());
      sum += x;
      sumsq += x * x;
    }
    const double mean = sum / trials;
    const double se = std::sqrt((sumsq / trials - mean * mean) / (trials - 1));
    INFO("m=" << m << " mean " << mean << " formula " << static_cast<double>(e.value));
    CHECK(std::abs(mean - static_cast<double>(e.value)) <= 4 * se + 1e-9);
  }
}

TEST_CASE("expectation curve") {
  const auto c = expectation_curve(31, 62, 5);
  CHECK(c.mode == EvalMode::Rational);
  CHECK(c.points.front().m == 2);
  CHECK(c.points.back().m == 62);
  CHECK(c.points.back().expected == doctest::Approx(62.0));
  REQUIRE(c.crossing.has_value());
  CHECK(expected_diffset_size(31, *c.crossing).value >= 31);
  CHECK(expected_diffset_size(31, *c.crossing - 1).value < 31);
  for (std::size_t i = 1; i < c.points.size(); ++i) CHECK(c.points[i].expected >= c.points[i - 1].expected);
  for (const auto& p : c.points) {
    CHECK(p.expected >= 0);
    CHECK(p.expected <= 62);
  }
  const auto a = expectation_curve(211, 100, 3, ModeRequest::Auto, 1);
  const auto b = expectation_curve(211, 100, 3, ModeRequest::Auto, 3);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) CHECK(a.points[i].expected == b.points[i].expected);
}

TEST_CASE("binomial identity") {
  CHECK(binomial_identity_check(5, 3));
  CHECK(binomial_identity_check(7, 0));
  CHECK(binomial_identity_check(30, 17));
  oracle::Big lhs = 0;
  for (int k = 0; k <= 3; ++k) lhs += oracle::pascal(5, k) * oracle::pascal(5 - k, 3 - k);
  CHECK(lhs == 80);
}
