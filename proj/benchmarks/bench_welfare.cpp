#include <benchmark/benchmark.h>

#include <random>

#include "pacing/random_instances.hpp"
#include "pacing/welfare.hpp"

namespace {

using namespace pacing;

Instance random_mixed(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RandomInstanceSpec shape;
  shape.family = PreferenceFamily::Mixed;
  shape.min_agents = shape.max_agents = n;
  shape.min_items = shape.max_items = m;
  return random_instance(rng, shape);
}

void BM_OptimalWelfareSingleItem(benchmark::State& state) {
  Instance inst = random_mixed(static_cast<std::size_t>(state.range(0)), 1, 7);
  for (auto _ : state) benchmark::DoNotOptimize(optimal_liquid_welfare(inst));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_OptimalWelfareSingleItem)->RangeMultiplier(4)->Range(2, 512)->Complexity();

void BM_OptimalWelfareMultiItem(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Instance inst = random_mixed(n, n, 8);
  for (auto _ : state) benchmark::DoNotOptimize(optimal_liquid_welfare(inst));
}
BENCHMARK(BM_OptimalWelfareMultiItem)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_BruteForceWelfare(benchmark::State& state) {
  Instance inst = random_mixed(2, 2, 9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_optimal_welfare(inst, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_BruteForceWelfare)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

}  // namespace
