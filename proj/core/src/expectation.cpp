#include "dihsum/expectation.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "dihsum/errors.hpp"
#include "dihsum/sampling.hpp"

namespace dihsum {

namespace {

constexpr long double kNegInf = -std::numeric_limits<long double>::infinity();

std::int64_t mod(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

// Advances a sorted k-combination of [0, n) in colex order; false after the last.
bool next_combination(std::vector<std::int64_t>& c, std::int64_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = 0; i < k; ++i) {
    const std::int64_t limit = i + 1 < k ? c[i + 1] : n;
    if (c[i] + 1 < limit) {
      ++c[i];
      for (std::size_t t = 0; t < i; ++t) c[t] = static_cast<std::int64_t>(t);
      return true;
    }
  }
  return false;
}

struct KahanSum {
  long double sum = 0, carry = 0;
  void add(long double x) {
    const long double y = x - carry;
    const long double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

EvalMode resolve(std::int64_t n, ModeRequest mode) {
  switch (mode) {
    case ModeRequest::Rational: return EvalMode::Rational;
    case ModeRequest::Log: return EvalMode::Log;
    case ModeRequest::Auto: break;
  }
  return n <= kRationalLimit ? EvalMode::Rational : EvalMode::Log;
}

Rational expected_diffset_rational(std::int64_t n, std::int64_t m) {
  const BigInt total = binom(2 * n, m);
  const BigInt head = BigInt(n) * m * (BigInt(1) << static_cast<unsigned>(m)) * binom(n, m) +
                      BigInt(2) * n * (n - 1) * binom(n - m - 1, m - 1);
  Rational tail = 0;
  for (std::int64_t k = 1; k <= m - 1; ++k) {
    const BigInt num = binom(n + k - m - 1, m - k - 1) * binom(n - k - 1, k - 1);
    if (num != 0) tail += Rational(num, BigInt(k) * (m - k));
  }
  return Rational(2 * n) - Rational(head, BigInt(m) * total) - Rational(BigInt(n) * n * (n - 1), total) * tail;
}

}  // namespace

std::string_view mode_name(EvalMode mode) {
  switch (mode) {
    case EvalMode::Rational: return "rational";
    case EvalMode::Log: return "log";
    case EvalMode::MonteCarlo: return "monte-carlo";
  }
  return "?";
}

long double ProbabilityValue::value() const {
  if (exact) return to_long_double(*exact);
  return std::exp(log_value);
}

ProbabilityValue ProbabilityValue::from_rational(const Rational& p) {
  ProbabilityValue v;
  v.exact = p;
  v.log_value = p > 0 ? log_of(p) : kNegInf;
  v.mode = EvalMode::Rational;
  return v;
}

BigInt g_nonadjacent(std::int64_t N, std::int64_t k) {
  require(N >= 1 && k >= 0, "g(N, k) needs N >= 1 and k >= 0");
  if (k == 0) return 1;
  return BigInt(N) * binom(N - 1 - k, k - 1) / k;
}

ProbabilityValue prob_missing_sum_cyclic(std::int64_t n, std::int64_t i, std::int64_t t) {
  require(n >= 1 && 0 <= i && i < n, "need 0 <= i < n");
  require(0 <= t && t <= n, "need 0 <= t <= n");
  std::int64_t pairs;
  if (n % 2 == 0) pairs = i % 2 == 0 ? n / 2 - 1 : n / 2;
  else pairs = (n - 1) / 2;
  const BigInt avoid = (BigInt(1) << static_cast<unsigned>(t)) * binom(pairs, t);
  return ProbabilityValue::from_rational(Rational(avoid, binom(n, t)));
}

ProbabilityValue prob_missing_diff_cyclic(std::int64_t n, std::int64_t i, std::int64_t k) {
  require(n >= 1 && 0 <= i && i < n, "need 0 <= i < n");
  require(0 <= k && k <= n, "need 0 <= k <= n");
  if (i == 0) return ProbabilityValue::from_rational(Rational(k == 0 ? 1 : 0));
  const std::int64_t d = std::gcd(i, n);
  const std::int64_t len = n / d;
  // [x^k] (sum_t g(len, t) x^t)^d, truncated at degree k.
  std::vector<BigInt> base(static_cast<std::size_t>(k) + 1, 0);
  for (std::int64_t t = 0; t <= k && t <= len; ++t) base[t] = g_nonadjacent(len, t);
  std::vector<BigInt> acc(static_cast<std::size_t>(k) + 1, 0);
  acc[0] = 1;
  for (std::int64_t r = 0; r < d; ++r) {
    std::vector<BigInt> next(acc.size(), 0);
    for (std::size_t a = 0; a < acc.size(); ++a) {
      if (acc[a] == 0) continue;
      for (std::size_t b = 0; a + b < next.size(); ++b)
        if (base[b] != 0) next[a + b] += acc[a] * base[b];
    }
    acc.swap(next);
  }
  return ProbabilityValue::from_rational(Rational(acc[k], binom(n, k)));
}

ProbabilityValue prob_missing_cross_sum(std::int64_t n, std::int64_t k, std::int64_t mk) {
  require(n >= 1 && 0 <= k && k <= n && 0 <= mk && mk <= n, "need 0 <= k, mk <= n");
  return ProbabilityValue::from_rational(Rational(binom(n - k, mk), binom(n, mk)));
}

ProbabilityValue prob_k_flips(std::int64_t n, std::int64_t m, std::int64_t k) {
  require(n >= 1 && 0 <= k && k <= m && m <= 2 * n, "need 0 <= k <= m <= 2n");
  return ProbabilityValue::from_rational(Rational(binom(n, k) * binom(n, m - k), binom(2 * n, m)));
}

Rational prob_joint_flip_term(std::int64_t n, std::int64_t i, std::int64_t k, std::int64_t mk,
                              std::uint64_t budget) {
  require(n >= 1 && 0 <= i && i < n, "need 0 <= i < n");
  require(0 <= k && k <= n && 0 <= mk && mk <= n, "need 0 <= k, mk <= n");
  const std::uint64_t sets = binom_u64(n, k);
  if (sets > budget)
    throw BudgetExceeded("joint flip term needs " + std::to_string(sets) + " subsets", double(sets), budget);
  std::vector<std::int64_t> s2(static_cast<std::size_t>(k));
  std::iota(s2.begin(), s2.end(), 0);
  std::vector<char> forbidden(static_cast<std::size_t>(n), 0);
  std::vector<BigInt> ways(static_cast<std::size_t>(n) + 1);
  for (std::int64_t f = 0; f <= n; ++f) ways[f] = binom(n - f, mk);
  BigInt good = 0;
  do {
    std::int64_t blocked = 0;
    for (auto s : s2)
      for (std::int64_t x : {mod(i - s, n), mod(s - i, n)})
        if (!forbidden[x]) {
          forbidden[x] = 1;
          ++blocked;
        }
    good += ways[blocked];
    for (auto s : s2) forbidden[mod(i - s, n)] = forbidden[mod(s - i, n)] = 0;
  } while (next_combination(s2, n));
  return Rational(good, binom(n, k) * binom(n, mk));
}

ProbabilityValue prob_element_missing(std::int64_t n, std::int64_t m, std::uint32_t element, MissingFrom which,
                                      const ElementMissingOptions& options) {
  require(n >= 1 && 0 <= m && m <= 2 * n, "need 0 <= m <= 2n");
  require(element < 2 * n, "element index out of range");
  const bool flip = element >= n;
  const std::int64_t i = flip ? element - n : element;
  const std::int64_t lo = std::max<std::int64_t>(0, m - n), hi = std::min(m, n);

  if (flip && which == MissingFrom::Sum) {
    for (std::int64_t k = lo; k <= hi; ++k)
      if (binom_u64(n, k) > options.enumeration_budget) {
        if (!options.monte_carlo_fallback)
          throw BudgetExceeded("joint flip term needs " + std::to_string(binom_u64(n, k)) + " subsets",
                               double(binom_u64(n, k)), options.enumeration_budget);
        require(options.trials >= 1, "Monte Carlo needs at least one trial");
        SubsetSampler sampler(static_cast<std::uint32_t>(2 * n));
        std::vector<char> rot(static_cast<std::size_t>(n));
        std::uint64_t misses = 0;
        for (std::uint64_t t = 0; t < options.trials; ++t) {
          CounterRng rng(options.seed, t);
          const auto& a = sampler.draw(rng, static_cast<std::uint32_t>(m));
          std::fill(rot.begin(), rot.end(), 0);
          for (auto x : a)
            if (x < n) rot[x] = 1;
          bool hit = false;
          for (auto x : a) {
            if (x < n) continue;
            const std::int64_t f = x - n;
            // r^j (r^f s) = r^{j+f} s and (r^f s) r^j = r^{f-j} s
            if (rot[mod(i - f, n)] || rot[mod(f - i, n)]) {
              hit = true;
              break;
            }
          }
          if (!hit) ++misses;
        }
        const long double p = static_cast<long double>(misses) / options.trials;
        ProbabilityValue v;
        v.mode = EvalMode::MonteCarlo;
        v.log_value = p > 0 ? std::log(p) : kNegInf;
        v.std_error = std::sqrt(p * (1 - p) / options.trials);
        return v;
      }
  }

  Rational total = 0;
  for (std::int64_t k = lo; k <= hi; ++k) {
    const Rational weight = *prob_k_flips(n, m, k).exact;
    Rational term;
    if (!flip && which == MissingFrom::Sum)
      term = *prob_missing_sum_cyclic(n, i, m - k).exact * *prob_missing_diff_cyclic(n, i, k).exact;
    else if (!flip)
      term = *prob_missing_diff_cyclic(n, i, m - k).exact * *prob_missing_diff_cyclic(n, i, k).exact;
    else if (which == MissingFrom::Diff)
      term = *prob_missing_cross_sum(n, k, m - k).exact;
    else
      term = prob_joint_flip_term(n, i, k, m - k, options.enumeration_budget);
    total += weight * term;
  }
  return ProbabilityValue::from_rational(total);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long double expected_diffset_size_log(std::int64_t n, std::int64_t m, const LogFactorialTable& table) {
  require(is_prime(n), "E|A-A| closed form needs prime n");
  require(1 <= m && m <= 2 * n, "need 1 <= m <= 2n");
  require(table.max() >= 2 * n, "log-factorial table too small");
  const long double ln = std::log(static_cast<long double>(n));
  const long double ln1 = std::log(static_cast<long double>(n - 1));
  const long double lm = std::log(static_cast<long double>(m));
  const long double ltotal = table.log_binom(2 * n, m);
  KahanSum missing;
  const long double la = table.log_binom(n, m);
  if (la != kNegInf) missing.add(std::exp(ln + m * std::log(2.0L) + la - ltotal));
  const long double lb = table.log_binom(n - m - 1, m - 1);
  if (lb != kNegInf) missing.add(std::exp(std::log(2.0L) + ln + ln1 + lb - lm - ltotal));
  for (std::int64_t k = 1; k <= m - 1; ++k) {
    const long double l1 = table.log_binom(n + k - m - 1, m - k - 1);
    const long double l2 = table.log_binom(n - k - 1, k - 1);
    if (l1 == kNegInf || l2 == kNegInf) continue;
    missing.add(std::exp(2 * ln + ln1 + l1 + l2 - std::log(static_cast<long double>(k)) -
                         std::log(static_cast<long double>(m - k)) - ltotal));
  }
  return static_cast<long double>(2 * n) - missing.sum;
}

ExpectedSize expected_diffset_size(std::int64_t n, std::int64_t m, ModeRequest mode) {
  require(is_prime(n), "E|A-A| closed form needs prime n");
  require(1 <= m && m <= 2 * n, "need 1 <= m <= 2n");
  ExpectedSize out;
  out.mode = resolve(n, mode);
  if (out.mode == EvalMode::Rational) {
    out.exact = expected_diffset_rational(n, m);
    out.value = to_long_double(*out.exact);
  } else {
    out.value = expected_diffset_size_log(n, m, LogFactorialTable(2 * n));
  }
  return out;
}

ExpectationCurve expectation_curve(std::int64_t n, std::int64_t m_max, std::int64_t step, ModeRequest mode,
                                   unsigned threads) {
  require(is_prime(n), "E|A-A| closed form needs prime n");
  require(step >= 1, "step must be >= 1");
  m_max = std::min(m_max, 2 * n);
  require(m_max >= 2, "m_max must be >= 2");
  ExpectationCurve curve;
  curve.n = n;
  curve.mode = resolve(n, mode);
  const LogFactorialTable table(curve.mode == EvalMode::Log ? 2 * n : 0);
  auto eval = [&](std::int64_t m) -> long double {
    if (curve.mode == EvalMode::Log) return expected_diffset_size_log(n, m, table);
    return to_long_double(expected_diffset_rational(n, m));
  };

  for (std::int64_t m = 2; m <= m_max; m += step) curve.points.push_back({m, 0});
  if (curve.points.back().m != m_max) curve.points.push_back({m_max, 0});
  parallel_chunks(curve.points.size(), resolve_threads(threads), [&](std::uint64_t b, std::uint64_t e, unsigned) {
    for (std::uint64_t p = b; p < e; ++p) curve.points[p].expected = eval(curve.points[p].m);
  });

  for (std::int64_t m = 1; m <= 2 * n; ++m)
    if (eval(m) >= static_cast<long double>(n)) {
      curve.crossing = m;
      break;
    }
  return curve;
}

bool binomial_identity_check(std::int64_t n, std::int64_t m) {
  require(0 <= m && m <= n, "need 0 <= m <= n");
  BigInt lhs = 0;
  for (std::int64_t k = 0; k <= m; ++k) lhs += binom(n, k) * binom(n - k, m - k);
  return lhs == (BigInt(1) << static_cast<unsigned>(m)) * binom(n, m);
}

}  // namespace dihsum
