#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace dihsum {

/// Counter-based generator: a SplitMix64 stream keyed by (seed, stream id).
/// Trial t of a sampled run always draws from stream t, so results do not
/// depend on how trials are spread over threads.
class CounterRng {
public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : state_(mix(seed ^ mix(stream + 0x9e3779b97f4a7c15ULL))) {}

  std::uint64_t next() noexcept {
    state_ += 0x9e3779b97f4a7c15ULL;
    return mix(state_);
  }

  /// Uniform in [0, bound), bound >= 1.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  static std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t state_;
};

/// Uniform m-subsets of [0, universe) by Floyd's algorithm, sorted.
class SubsetSampler {
public:
  explicit SubsetSampler(std::uint32_t universe) : marks_(universe, 0) {}

  const std::vector<std::uint32_t>& draw(CounterRng& rng, std::uint32_t m) {
    out_.clear();
    const auto universe = static_cast<std::uint32_t>(marks_.size());
    for (std::uint32_t j = universe - m; j < universe; ++j) {
      const auto t = static_cast<std::uint32_t>(rng.below(std::uint64_t{j} + 1));
      const std::uint32_t pick = marks_[t] ? j : t;
      marks_[pick] = 1;
      out_.push_back(pick);
    }
    for (auto x : out_) marks_[x] = 0;
    std::sort(out_.begin(), out_.end());
    return out_;
  }

private:
  std::vector<char> marks_;
  std::vector<std::uint32_t> out_;
};

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for a binomial proportion.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = kZ95);

std::uint64_t entropy_seed();

unsigned resolve_threads(unsigned requested);

/// Runs body(begin, end, worker) over `count` items split into contiguous
/// chunks, one per worker.
template <class Body>
void parallel_chunks(std::uint64_t count, unsigned threads, Body&& body) {
  threads = std::max(1u, threads);
  if (threads == 1 || count < 2) {
    body(std::uint64_t{0}, count, 0u);
    return;
  }
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    const std::uint64_t begin = count * w / threads;
    const std::uint64_t end = count * (w + 1) / threads;
    pool.emplace_back([&body, begin, end, w] { body(begin, end, w); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace dihsum
