#include <benchmark/benchmark.h>

#include <random>

#include "pacing/fppe.hpp"
#include "pacing/random_instances.hpp"

namespace {

using namespace pacing;

void BM_SingleItemClosedForm(benchmark::State& state) {
  std::mt19937_64 rng(1);
  MessageProfile prof = random_profile(rng, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_fppe_single_item(prof));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SingleItemClosedForm)->RangeMultiplier(4)->Range(2, 1024)->Complexity();

void BM_MultiItem(benchmark::State& state, FppeMethod method) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  RandomInstanceSpec shape;
  shape.min_agents = shape.max_agents = n;
  shape.min_items = shape.max_items = n;
  shape.infinite_budget_probability = 0.0;
  Instance inst = random_instance(rng, shape);
  MessageProfile prof = truthful_profile(inst);
  FppeOptions opt;
  opt.method = method;
  for (auto _ : state) benchmark::DoNotOptimize(solve_fppe(inst, prof, opt));
}
BENCHMARK_CAPTURE(BM_MultiItem, exact, FppeMethod::Exact)->DenseRange(2, 6, 2);
BENCHMARK_CAPTURE(BM_MultiItem, iterative, FppeMethod::Iterative)->DenseRange(2, 6, 2);

void BM_BruteForceOracle(benchmark::State& state) {
  std::mt19937_64 rng(3);
  RandomInstanceSpec shape;
  shape.min_agents = shape.max_agents = 3;
  shape.min_items = shape.max_items = 2;
  Instance inst = random_instance(rng, shape);
  MessageProfile prof = random_profile(rng, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(brute_force_fppe_oracle(inst, prof, static_cast<std::size_t>(state.range(0))));
  }
}
BENCHMARK(BM_BruteForceOracle)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace
