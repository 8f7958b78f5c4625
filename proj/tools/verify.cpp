#include <algorithm>
#include <functional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "cli.hpp"
#include "dihsum/dihsum.hpp"

namespace dihsum::cli {
namespace {

// Dih(Z_n) by hand: index i < n is rotation i, n + i is flip i.
struct SmallDihedral {
  int n;
  int mul(int a, int b) const {
    const int za = a >= n, zb = b >= n;
    const int ga = a % n, gb = b % n;
    const int g = ((ga + (za ? -gb : gb)) % n + n) % n;
    return (za ^ zb) ? n + g : g;
  }
  int inv(int a) const { return a >= n ? a : (n - a) % n; }
};

template <class F>
void each_subset(int universe, int m, F&& f) {
  std::vector<int> pick(universe, 0);
  std::fill(pick.end() - m, pick.end(), 1);
  do {
    std::vector<int> s;
    for (int i = 0; i < universe; ++i) {
      if (pick[i]) s.push_back(i);
    }
    f(s);
  } while (std::next_permutation(pick.begin(), pick.end()));
}

std::pair<std::size_t, std::size_t> brute_sizes(const SmallDihedral& d, const std::vector<int>& s) {
  std::set<int> sums, diffs;
  for (int a : s) {
    for (int b : s) {
      sums.insert(d.mul(a, b));
      diffs.insert(d.mul(a, d.inv(b)));
    }
  }
  return {sums.size(), diffs.size()};
}

bool check_classify() {
  for (int n = 2; n <= 6; ++n) {
    const SmallDihedral d{n};
    auto group = make_group(GroupSpec::cyclic(n));
    for (int m = 1; m <= std::min(5, 2 * n); ++m) {
      bool ok = true;
      each_subset(2 * n, m, [&](const std::vector<int>& s) {
        const auto [sum, diff] = brute_sizes(d, s);
        const SubsetD a(group, std::vector<std::uint32_t>(s.begin(), s.end()));
        ok = ok && sumset(a).size() == sum && diffset(a).size() == diff;
      });
      if (!ok) return false;
    }
  }
  return true;
}

bool check_census() {
  for (int n = 3; n <= 6; ++n) {
    const SmallDihedral d{n};
    for (int m = 2; m <= 4; ++m) {
      std::uint64_t mstd = 0, mdts = 0, total = 0;
      each_subset(2 * n, m, [&](const std::vector<int>& s) {
        const auto [sum, diff] = brute_sizes(d, s);
        ++total;
        mstd += sum > diff;
        mdts += sum < diff;
      });
      const CensusReport r = census_exhaustive(GroupSpec::cyclic(n), m);
      if (r.aggregate.total != total || r.aggregate.mstd != mstd || r.aggregate.mdts != mdts) return false;
    }
  }
  return true;
}

bool check_xa() {
  for (int n = 3; n <= 5; ++n) {
    const SmallDihedral d{n};
    auto group = make_group(GroupSpec::cyclic(n));
    bool ok = true;
    each_subset(2 * n, 4, [&](const std::vector<int>& s) {
      std::uint64_t colliding = 0;
      for (int a : s)
        for (int b : s)
          for (int c : s)
            for (int e : s) {
              if (d.mul(a, b) != d.mul(c, e)) continue;
              const bool same = a == c && b == e;
              const bool swap = a == e && b == c && a < n && b < n;
              const bool flips = a >= n && b >= n && c >= n && e >= n;
              colliding += !(same || swap || flips);
            }
      const SubsetD set(group, std::vector<std::uint32_t>(s.begin(), s.end()));
      ok = ok && count_xa(set).xa.twice == colliding;
    });
    if (!ok) return false;
  }
  return true;
}

bool check_expectation() {
  for (int n : {2, 3, 5}) {
    const SmallDihedral d{n};
    for (int m = 1; m <= 2 * n; ++m) {
      std::uint64_t total = 0, count = 0;
      each_subset(2 * n, m, [&](const std::vector<int>& s) {
        total += brute_sizes(d, s).second;
        ++count;
      });
      const ExpectedSize e = expected_diffset_size(n, m, ModeRequest::Rational);
      if (!e.exact || *e.exact != Rational(total, count)) return false;
    }
  }
  return true;
}

bool check_two_flip_triples() {
  for (int n = 3; n <= 8; ++n) {
    const SmallDihedral d{n};
    std::uint64_t mstd = 0;
    each_subset(2 * n, 3, [&](const std::vector<int>& s) {
      if (std::count_if(s.begin(), s.end(), [n](int x) { return x >= n; }) != 2) return;
      const auto [sum, diff] = brute_sizes(d, s);
      mstd += sum > diff;
    });
    if (two_flip_triple_formula(n) != mstd) return false;
  }
  return true;
}

bool check_proportion() {
  for (std::uint64_t m = 1; m <= 40; ++m) {
    BigInt num = 0;
    for (std::uint64_t k = 0; k <= m; ++k) {
      if (12 * k >= 5 * m && 12 * k <= 11 * m) num += binom(static_cast<std::int64_t>(m), static_cast<std::int64_t>(k));
    }
    const ProportionResult r = proportion_condition(m);
    if (r.numerator != num || r.pass != (5 * num > 3 * (BigInt(1) << m))) return false;
  }
  return true;
}

}  // namespace

int run_verify(std::ostream& out, unsigned threads) {
  (void)threads;
  const std::vector<std::pair<std::string, std::function<bool()>>> checks = {
      {"sumset and diffset sizes, Dih(Z_n), n <= 6, m <= 5", check_classify},
      {"census counts, n = 3..6, m = 2..4", check_census},
      {"collision count X_A, n = 3..5, m = 4", check_xa},
      {"expected |A-A| in rationals, n = 2, 3, 5", check_expectation},
      {"MSTD 3-sets with two flips, n = 3..8", check_two_flip_triples},
      {"flip-count proportion, m <= 40", check_proportion},
  };
  int failed = 0;
  for (const auto& [name, check] : checks) {
    bool ok = false;
    try {
      ok = check();
    } catch (const std::exception& e) {
      out << "  exception: " << e.what() << "\n";
    }
    out << (ok ? "ok   " : "FAIL ") << name << "\n";
    failed += !ok;
  }
  out << (checks.size() - failed) << "/" << checks.size() << " checks passed\n";
  return failed ? kVerifyFailed : kOk;
}

}  // namespace dihsum::cli
