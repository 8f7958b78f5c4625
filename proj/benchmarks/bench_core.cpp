#include <benchmark/benchmark.h>

#include <vector>

#include "dihsum/dihsum.hpp"

namespace {

std::vector<dihsum::SubsetD> random_sets(std::uint32_t n, std::uint32_t m, std::size_t count) {
  auto group = dihsum::make_group(dihsum::GroupSpec::cyclic(n));
  dihsum::SubsetSampler sampler(2 * n);
  std::vector<dihsum::SubsetD> sets;
  for (std::size_t t = 0; t < count; ++t) {
    dihsum::CounterRng rng(42, t);
    sets.emplace_back(group, sampler.draw(rng, m));
  }
  return sets;
}

void BM_MaskKernel(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto sets = random_sets(n, n / 2, 256);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& a = sets[i++ % sets.size()];
    benchmark::DoNotOptimize(dihsum::cyclic_mask_sizes(n, *a.rot_mask(), *a.flip_mask()));
  }
}
BENCHMARK(BM_MaskKernel)->Arg(16)->Arg(64);

void BM_NaiveSets(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const auto sets = random_sets(n, n / 2, 256);
  std::size_t i = 0;
  for (auto _ : state) {
    const auto& a = sets[i++ % sets.size()];
    benchmark::DoNotOptimize(dihsum::naive_sumset(a).size() + dihsum::naive_diffset(a).size());
  }
}
BENCHMARK(BM_NaiveSets)->Arg(16)->Arg(64);

void BM_Classifier(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const dihsum::Dihedral group(dihsum::GroupSpec::cyclic(n));
  const auto sets = random_sets(n, n / 2, 256);
  dihsum::Classifier classifier(group);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(classifier.sizes(sets[i++ % sets.size()].members()));
  }
}
BENCHMARK(BM_Classifier)->Arg(64)->Arg(256);

void BM_Census(benchmark::State& state) {
  const auto spec = dihsum::GroupSpec::cyclic(static_cast<std::uint64_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dihsum::census_exhaustive(spec, 5).aggregate.mstd);
  }
}
BENCHMARK(BM_Census)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
