#include <gtest/gtest.h>

#include <random>

#include "pacing/fppe.hpp"
#include "pacing/metagame.hpp"
#include "pacing/random_instances.hpp"
#include "pacing/welfare.hpp"

namespace pacing {
namespace {

const ExtNonNeg kInfMsg = ExtNonNeg::infinity();

Instance winner_take_all(double k) {
  return single_item_instance({budgeted_agent(k, 1.0), budgeted_agent(1.0, kInfMsg)});
}

Instance value_reporting(std::size_t n_big, double a, double b) {
  const double big = static_cast<double>(n_big);
  std::vector<AgentType> ag(n_big, budgeted_agent(big * big, 0.5));
  ag.push_back(budgeted_agent(a, 1.0));
  ag.push_back(budgeted_agent(b, 1.0));
  return single_item_instance(std::move(ag));
}

Matrix column(std::initializer_list<double> xs) {
  std::vector<std::vector<double>> rows;
  for (double x : xs) rows.push_back({x});
  return Matrix::from_rows(rows);
}

TEST(LiquidWelfare, WinnerTakeAllExamples) {
  Instance inst = winner_take_all(100.0);
  EXPECT_DOUBLE_EQ(liquid_welfare(inst, column({1.0, 0.0})).total, 1.0);
  WelfareResult at = liquid_welfare(inst, column({0.01, 0.99}));
  EXPECT_NEAR(at.total, 1.99, 1e-12);
  EXPECT_NEAR(at.per_agent_wtp[0], 1.0, 1e-12);
  EXPECT_EQ(liquid_welfare(inst, column({0.0, 0.0})).total, 0.0);
}

TEST(LiquidWelfare, RejectsInfeasibleAllocations) {
  Instance inst = winner_take_all(100.0);
  EXPECT_THROW(liquid_welfare(inst, column({0.6, 0.6})), InputError);
  EXPECT_THROW(liquid_welfare(inst, column({-0.1, 0.5})), InputError);
  EXPECT_THROW(liquid_welfare(inst, Matrix(2, 2, 0.0)), InputError);
}

TEST(LiquidWelfare, PerAgentValuesRespectBudgets) {
  std::mt19937_64 rng(41);
  RandomInstanceSpec shape;
  shape.family = PreferenceFamily::Mixed;
  for (int k = 0; k < 200; ++k) {
    Instance inst = random_instance(rng, shape);
    FppeOutcome out = solve_fppe(inst, random_profile(rng, inst.num_agents()));
    WelfareResult w = liquid_welfare(inst, out.allocation);
    double sum = 0.0;
    for (std::size_t i = 0; i < inst.num_agents(); ++i) {
      EXPECT_LE(w.per_agent_wtp[i], inst.agent(i).budget.as_double());
      sum += w.per_agent_wtp[i];
    }
    EXPECT_NEAR(w.total, sum, 1e-12 * std::max(1.0, sum));
  }
}

TEST(LiquidWelfare, ConcaveInOwnAllocation) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    AgentType a = random_agent(rng, PreferenceFamily::Mixed, 0.3);
    Instance inst = single_item_instance({a});
    double x0 = u(rng), x1 = u(rng), t = u(rng);
    double mid = liquid_welfare(inst, column({(1 - t) * x0 + t * x1})).total;
    double chord = (1 - t) * liquid_welfare(inst, column({x0})).total +
                   t * liquid_welfare(inst, column({x1})).total;
    EXPECT_GE(mid, chord - 1e-9);
  }
}

TEST(OptimalWelfare, WinnerTakeAll) {
  WelfareResult opt = optimal_liquid_welfare(winner_take_all(100.0));
  EXPECT_NEAR(opt.total, 1.99, 1e-9);
  EXPECT_NEAR(opt.allocation(0, 0), 0.01, 1e-9);
  EXPECT_NEAR(opt.allocation(1, 0), 0.99, 1e-9);
}

TEST(OptimalWelfare, ValueReportingInstances) {
  // With both value-2 agents present the N budgeted agents need only 1% of the item.
  EXPECT_NEAR(optimal_liquid_welfare(value_reporting(50, 2.0, 2.0)).total, 26.98, 1e-9);
  EXPECT_NEAR(optimal_liquid_welfare(value_reporting(50, 0.0, 0.0)).total, 25.0, 1e-9);
}

TEST(OptimalWelfare, SingleUnbudgetedAgentTakesEverything) {
  WelfareResult opt = optimal_liquid_welfare(single_item_instance({budgeted_agent(3.0, kInfMsg)}));
  EXPECT_NEAR(opt.total, 3.0, 1e-12);
  EXPECT_NEAR(opt.allocation(0, 0), 1.0, 1e-12);
}

TEST(OptimalWelfare, BruteForceExamples) {
  WelfareResult g = brute_force_optimal_welfare(winner_take_all(100.0), 10000);
  EXPECT_NEAR(g.total, 1.99, 2e-3);
  WelfareResult one = brute_force_optimal_welfare(single_item_instance({budgeted_agent(2.0, 5.0)}), 50);
  EXPECT_EQ(one.allocation(0, 0), 1.0);
  Instance swap({budgeted_agent(1.0, 0.5), budgeted_agent(1.0, 0.5)},
                Matrix::from_rows({{1.0, 0.5}, {0.5, 1.0}}));
  EXPECT_NEAR(brute_force_optimal_welfare(swap, 100).total, 1.0, 1e-9);
  EXPECT_NEAR(optimal_liquid_welfare(swap).total, 1.0, 1e-6);
}

TEST(OptimalWelfare, AgreesWithBruteForceOnSmallInstances) {
  std::mt19937_64 rng(43);
  RandomInstanceSpec shape;
  shape.family = PreferenceFamily::Mixed;
  shape.max_agents = 3;
  shape.max_items = 2;
  for (int k = 0; k < 30; ++k) {
    Instance inst = random_instance(rng, shape);
    WelfareResult opt = optimal_liquid_welfare(inst);
    WelfareResult grid = brute_force_optimal_welfare(inst, 200);
    // The grid optimum is feasible, so it can only trail the solver.
    EXPECT_GE(opt.total, grid.total - 1e-9 * std::max(1.0, grid.total)) << "instance " << k;
    EXPECT_NEAR(opt.total, grid.total, 2e-2 * std::max(1.0, opt.total)) << "instance " << k;
    EXPECT_NEAR(liquid_welfare(inst, opt.allocation).total, opt.total, 1e-9 * std::max(1.0, opt.total));
  }
}

TEST(PriceOfAnarchy, WinnerTakeAllApproachesTwo) {
  double prev = 0.0;
  for (double k : {10.0, 100.0, 1e4}) {
    PoaResult r = poa_ratio(winner_take_all(k), column({1.0, 0.0}));
    EXPECT_NEAR(r.ratio, 2.0 - 1.0 / k, 1e-6) << "K=" << k;
    EXPECT_GT(r.ratio, prev);
    prev = r.ratio;
  }
}

TEST(PriceOfAnarchy, EfficientLinearEquilibrium) {
  Instance inst = single_item_instance({budgeted_agent(1.0, kInfMsg), budgeted_agent(0.7, kInfMsg)});
  FppeOutcome out = solve_fppe_single_item(MessageProfile({Message(1.0, 0.7), Message(0.7, 0.7)}));
  EXPECT_NEAR(poa_ratio(inst, out.allocation).ratio, 1.0, 1e-12);
}

TEST(PriceOfAnarchy, ZeroEquilibriumWelfareIsInfinite) {
  PoaResult r = poa_ratio(winner_take_all(10.0), column({0.0, 0.0}));
  EXPECT_TRUE(std::isinf(r.ratio));
  EXPECT_FALSE(r.diagnostic.empty());
}

TEST(PriceOfAnarchy, RevenueBoundsWelfareAtEquilibrium) {
  std::mt19937_64 rng(44);
  RandomInstanceSpec shape;
  shape.family = PreferenceFamily::Mixed;
  shape.min_items = shape.max_items = 1;
  shape.max_agents = 5;
  for (int k = 0; k < 60; ++k) {
    Instance inst = random_instance(rng, shape);
    SingleItemNashResult sol = solve_pure_nash_single_item(inst);
    WelfareResult opt = optimal_liquid_welfare(inst);
    for (const auto& e : sol.equilibria) {
      FppeOutcome out = solve_fppe_single_item(e.profile, inst.ctr().column(0));
      EXPECT_LE(out.revenue(), liquid_welfare(inst, out.allocation).total + 1e-8);
      EXPECT_LE(poa_ratio(inst, out.allocation, opt).ratio, 2.0 + 1e-6);
    }
  }
}

}  // namespace
}  // namespace pacing
