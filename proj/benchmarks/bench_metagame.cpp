#include <benchmark/benchmark.h>

#include <random>

#include "pacing/metagame.hpp"
#include "pacing/random_instances.hpp"

namespace {

using namespace pacing;

Instance random_single_item(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RandomInstanceSpec shape;
  shape.family = PreferenceFamily::Mixed;
  shape.min_agents = shape.max_agents = n;
  shape.min_items = shape.max_items = 1;
  return random_instance(rng, shape);
}

void BM_BestResponseSingleItem(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Instance inst = random_single_item(n, 4);
  std::mt19937_64 rng(5);
  MessageProfile prof = random_profile(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(best_response_single_item(inst, prof, 0));
}
BENCHMARK(BM_BestResponseSingleItem)->DenseRange(2, 8, 2);

void BM_SolvePureNashSingleItem(benchmark::State& state) {
  Instance inst = random_single_item(static_cast<std::size_t>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(solve_pure_nash_single_item(inst));
}
BENCHMARK(BM_SolvePureNashSingleItem)->DenseRange(2, 6, 2)->Unit(benchmark::kMillisecond);

void BM_GridSearchSwap(benchmark::State& state) {
  Instance swap({budgeted_agent(1.0, 0.5), budgeted_agent(1.0, 0.5)},
                Matrix::from_rows({{1.0, 0.5}, {0.5, 1.0}}));
  std::vector<ExtNonNeg> bids, budgets;
  for (int k = 0; k <= 6; ++k) bids.push_back(0.25 * k);
  bids.push_back(ExtNonNeg::infinity());
  for (int k = 0; k <= state.range(0); ++k) budgets.push_back(1.2 * k / static_cast<double>(state.range(0)));
  StrategyGrid grid = product_grid(bids, budgets, 2);
  for (auto _ : state) benchmark::DoNotOptimize(grid_epsilon_pne_search(swap, grid, 1e-3));
}
BENCHMARK(BM_GridSearchSwap)->Arg(6)->Arg(12)->Arg(24)->Unit(benchmark::kMillisecond);

}  // namespace
