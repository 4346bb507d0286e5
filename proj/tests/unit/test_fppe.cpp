#include <gtest/gtest.h>

#include <random>

#include "pacing/fppe.hpp"
#include "pacing/random_instances.hpp"
#include "support/oracles.hpp"

namespace pacing {
namespace {

using testing::fppe_properties;
using testing::single_item_price;
const ExtNonNeg kInfMsg = ExtNonNeg::infinity();

Matrix swap_ctr() { return Matrix::from_rows({{1.0, 0.5}, {0.5, 1.0}}); }
Matrix unit_column(std::size_t n) { return Matrix(n, 1, 1.0); }

struct Regime {
  double w1, w2, price, x1, x2, a1, a2;
};

class BudgetRegimes : public ::testing::TestWithParam<Regime> {};

TEST_P(BudgetRegimes, ClosedFormOutcome) {
  const Regime g = GetParam();
  MessageProfile prof({Message(2.0, g.w1), Message(1.0, g.w2)});
  FppeOutcome out = solve_fppe_single_item(prof);
  EXPECT_NEAR(out.prices[0], g.price, 1e-12);
  EXPECT_NEAR(out.allocation(0, 0), g.x1, 1e-12);
  EXPECT_NEAR(out.allocation(1, 0), g.x2, 1e-12);
  EXPECT_NEAR(out.multipliers[0], g.a1, 1e-12);
  EXPECT_NEAR(out.multipliers[1], g.a2, 1e-12);
  EXPECT_TRUE(verify_fppe(unit_column(2), prof, out, 1e-12).pass);
  EXPECT_NEAR(out.prices[0], single_item_price({2.0, 1.0}, {g.w1, g.w2}), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Fppe, BudgetRegimes,
                         ::testing::Values(Regime{0.5, 0.4, 0.9, 5.0 / 9, 4.0 / 9, 0.45, 0.9},
                                           Regime{0.7, 0.5, 1.0, 0.7, 0.3, 0.5, 1.0},
                                           Regime{1.5, 0.5, 1.5, 1.0, 0.0, 0.75, 1.0}));

TEST(FppeSingleItem, UnboundedBidsExhaustBudgets) {
  FppeOutcome out = solve_fppe_single_item(MessageProfile({Message(kInfMsg, 0.3), Message(kInfMsg, 0.2)}));
  EXPECT_NEAR(out.prices[0], 0.5, 1e-12);
  EXPECT_NEAR(out.allocation(0, 0), 0.6, 1e-12);
  EXPECT_NEAR(out.allocation(1, 0), 0.4, 1e-12);
}

TEST(FppeSingleItem, UnbudgetedTruthfulBiddersPayTopValue) {
  FppeOutcome out = solve_fppe_single_item(MessageProfile({Message(1.0, kInfMsg), Message(0.7, kInfMsg)}));
  EXPECT_DOUBLE_EQ(out.prices[0], 1.0);
  EXPECT_DOUBLE_EQ(out.allocation(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(out.allocation(1, 0), 0.0);
}

TEST(FppeSingleItem, MatchesReferencePriceOnRandomProfiles) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 500; ++k) {
    std::size_t n = 1 + k % 6;
    MessageProfile prof = random_profile(rng, n);
    std::vector<double> v, w;
    for (std::size_t i = 0; i < n; ++i) {
      v.push_back(prof[i].max_bid.as_double());
      w.push_back(prof[i].budget.as_double());
    }
    FppeOutcome out = solve_fppe_single_item(prof);
    double ref = single_item_price(v, w);
    EXPECT_NEAR(out.prices[0], ref, 1e-9 * std::max(1.0, ref)) << "profile " << k;
    EXPECT_LE(fppe_properties(unit_column(n), prof, out).max(), 1e-9 * std::max(1.0, ref));
  }
}

TEST(FppeMultiItem, SwapInstanceExactAndIterative) {
  MessageProfile prof({Message(1.0, 0.5), Message(1.0, 0.5)});
  for (FppeMethod method : {FppeMethod::Exact, FppeMethod::Iterative}) {
    FppeOptions opt;
    opt.method = method;
    FppeOutcome out = solve_fppe(swap_ctr(), prof, opt);
    SCOPED_TRACE(to_string(method));
    EXPECT_NEAR(out.prices[0], 0.5, 1e-8);
    EXPECT_NEAR(out.prices[1], 0.5, 1e-8);
    EXPECT_NEAR(out.allocation(0, 0), 1.0, 1e-8);
    EXPECT_NEAR(out.allocation(1, 1), 1.0, 1e-8);
    EXPECT_NEAR(out.allocation(0, 1), 0.0, 1e-8);
    EXPECT_NEAR(out.allocation(1, 0), 0.0, 1e-8);
    EXPECT_NEAR(out.payments[0], 0.5, 1e-8);
    EXPECT_NEAR(out.payments[1], 0.5, 1e-8);
  }
}

TEST(FppeMultiItem, ZeroBudgetsMeanZeroPayments) {
  FppeOutcome out = solve_fppe(swap_ctr(), MessageProfile({Message(1.0, 0.0), Message(2.0, 0.0)}));
  EXPECT_EQ(out.payments[0], 0.0);
  EXPECT_EQ(out.payments[1], 0.0);
}

TEST(FppeMultiItem, RandomInstancesSatisfyDefinitions) {
  std::mt19937_64 rng(22);
  RandomInstanceSpec shape;
  shape.max_agents = 4;
  shape.max_items = 4;
  for (int k = 0; k < 200; ++k) {
    Instance inst = random_instance(rng, shape);
    MessageProfile prof = random_profile(rng, inst.num_agents());
    FppeOutcome out = solve_fppe(inst, prof);
    double scale = std::max(1.0, out.revenue());
    EXPECT_LE(fppe_properties(inst.ctr(), prof, out).max(), 1e-7 * scale) << "instance " << k;
    EXPECT_TRUE(verify_fppe(inst, prof, out, 1e-8).pass) << "instance " << k;
  }
}

TEST(FppeMultiItem, ExactAndIterativePathsAgree) {
  std::mt19937_64 rng(23);
  RandomInstanceSpec shape;
  shape.max_agents = 3;
  shape.max_items = 3;
  FppeOptions exact, iterative;
  exact.method = FppeMethod::Exact;
  iterative.method = FppeMethod::Iterative;
  for (int k = 0; k < 50; ++k) {
    Instance inst = random_instance(rng, shape);
    MessageProfile prof = random_profile(rng, inst.num_agents());
    FppeOutcome a = solve_fppe(inst, prof, exact);
    FppeOutcome b = solve_fppe(inst, prof, iterative);
    for (std::size_t j = 0; j < inst.num_items(); ++j) {
      EXPECT_NEAR(a.prices[j], b.prices[j], 1e-6 * std::max(1.0, a.prices[j])) << "instance " << k;
    }
  }
}

TEST(FppeMultiItem, PricesDoNotDependOnAgentOrder) {
  std::mt19937_64 rng(24);
  RandomInstanceSpec shape;
  shape.max_agents = 4;
  shape.max_items = 3;
  for (int k = 0; k < 100; ++k) {
    Instance inst = random_instance(rng, shape);
    MessageProfile prof = random_profile(rng, inst.num_agents());
    const std::size_t n = inst.num_agents();
    std::vector<std::vector<double>> rows;
    std::vector<Message> msgs;
    for (std::size_t i = n; i-- > 0;) {
      auto r = inst.ctr().row(i);
      rows.emplace_back(r.begin(), r.end());
      msgs.push_back(prof[i]);
    }
    FppeOutcome fwd = solve_fppe(inst.ctr(), prof);
    FppeOutcome rev = solve_fppe(Matrix::from_rows(rows), MessageProfile(msgs));
    for (std::size_t j = 0; j < inst.num_items(); ++j) {
      EXPECT_NEAR(fwd.prices[j], rev.prices[j], 1e-7 * std::max(1.0, fwd.prices[j]));
    }
    for (std::size_t i = 0; i < n; ++i) {
      // Paced spend is unique; unpaced spend can split ties at equal utility.
      if (fwd.multipliers[i] < 1.0 - 1e-9) {
        EXPECT_NEAR(fwd.payments[i], rev.payments[n - 1 - i], 1e-7 * std::max(1.0, fwd.payments[i]));
      }
    }
  }
}

TEST(FppeMultiItem, UtilityFromPricesMatchesAllocation) {
  std::mt19937_64 rng(25);
  RandomInstanceSpec shape;
  shape.family = PreferenceFamily::Budgeted;
  shape.infinite_budget_probability = 0.0;
  for (int k = 0; k < 100; ++k) {
    Instance inst = random_instance(rng, shape);
    MessageProfile prof = truthful_profile(inst);
    FppeOutcome out = solve_fppe(inst, prof);
    for (std::size_t i = 0; i < inst.num_agents(); ++i) {
      if (out.payments[i] <= 1e-12) continue;
      double direct = utility(inst.agent(i), out.allocation.row(i), inst.ctr().row(i), out.payments[i]);
      double from_prices =
          utility_from_prices(inst.agent(i), out.payments[i], out.prices, inst.ctr().row(i));
      if (std::isinf(direct) || std::isinf(from_prices)) {
        EXPECT_EQ(direct, from_prices);
      } else {
        EXPECT_NEAR(direct, from_prices, 1e-7 * std::max(1.0, std::abs(direct)));
      }
    }
  }
}

TEST(VerifyFppe, ReportsSupplyViolations) {
  MessageProfile prof({Message(2.0, 0.5), Message(1.0, 0.4)});
  FppeOutcome out = solve_fppe_single_item(prof);
  EXPECT_TRUE(verify_fppe(unit_column(2), prof, out, 1e-12).pass);

  FppeOutcome over = out;
  over.allocation(0, 0) = 0.6;
  over.allocation(1, 0) = 4.0 / 9;
  FppeReport r = verify_fppe(unit_column(2), prof, over, 1e-12);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.residuals.supply, 2.0 / 45, 1e-12);

  FppeOutcome under = out;
  under.allocation(0, 0) = 0.5;
  under.allocation(1, 0) = 4.0 / 9;
  EXPECT_NEAR(verify_fppe(unit_column(2), prof, under, 1e-12).residuals.supply, 1.0 / 18, 1e-12);
}

TEST(VerifyFppe, ReportsPaymentGap) {
  MessageProfile prof({Message(2.0, 0.5), Message(1.0, 0.4)});
  FppeOutcome out = solve_fppe_single_item(prof);
  out.payments[0] -= 0.125;
  FppeReport r = verify_fppe(unit_column(2), prof, out, 1e-12);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.residuals.payment, 0.125, 1e-12);
}

TEST(BruteForceOracle, DocumentedExamples) {
  FppeOutcome swap = brute_force_fppe_oracle(swap_ctr(), MessageProfile({Message(1.0, 0.5), Message(1.0, 0.5)}), 1000);
  EXPECT_NEAR(swap.prices[0], 0.5, 1e-3);
  EXPECT_NEAR(swap.prices[1], 0.5, 1e-3);
  FppeOutcome both = brute_force_fppe_oracle(
      unit_column(2), MessageProfile({Message(kInfMsg, 0.3), Message(kInfMsg, 0.2)}), 1000);
  EXPECT_NEAR(both.prices[0], 0.5, 1e-3);
  FppeOutcome single = brute_force_fppe_oracle(unit_column(1), MessageProfile({Message(2.0, 5.0)}), 1000);
  EXPECT_NEAR(single.prices[0], 2.0, 1e-9);
  EXPECT_NEAR(single.allocation(0, 0), 1.0, 1e-9);
  EXPECT_NEAR(single.multipliers[0], 1.0, 1e-9);
  MessageProfile four(std::vector<Message>(4, Message(1.0, 0.5)));
  EXPECT_THROW(brute_force_fppe_oracle(unit_column(4), four, 100), SizeError);
}

TEST(BruteForceOracle, AgreesWithSolverOnRandomInstances) {
  std::mt19937_64 rng(26);
  RandomInstanceSpec shape;
  shape.max_agents = 3;
  shape.max_items = 3;
  const std::size_t steps = 1000;
  for (int k = 0; k < 40; ++k) {
    Instance inst = random_instance(rng, shape);
    MessageProfile prof = random_profile(rng, inst.num_agents());
    FppeOutcome solved = solve_fppe(inst, prof);
    FppeOutcome oracle = brute_force_fppe_oracle(inst, prof, steps);
    for (std::size_t j = 0; j < inst.num_items(); ++j) {
      EXPECT_NEAR(solved.prices[j], oracle.prices[j], 3.0 / steps) << "instance " << k;
    }
  }
}

TEST(PriceMonotonicity, DocumentedExamples) {
  MessageProfile regime1({Message(2.0, 0.5), Message(1.0, 0.4)});
  PriceMonotonicity a = price_monotonicity_check(unit_column(2), regime1, 0, 0.1);
  EXPECT_NEAR(a.prices_before[0], 0.9, 1e-12);
  EXPECT_NEAR(a.prices_after[0], 1.0, 1e-12);
  EXPECT_NEAR(a.revenue_delta, 0.1, 1e-12);
  EXPECT_LE(a.revenue_delta, a.new_budget);

  MessageProfile regime3({Message(2.0, 1.5), Message(1.0, 0.5)});
  PriceMonotonicity b = price_monotonicity_check(unit_column(2), regime3, 0, 0.2);
  EXPECT_NEAR(b.prices_after[0], 1.7, 1e-12);

  MessageProfile priced_out({Message(2.0, 1.5), Message(1.0, 0.5), Message(0.5, 0.2)});
  PriceMonotonicity c = price_monotonicity_check(unit_column(3), priced_out, 2, 0.3);
  EXPECT_EQ(c.min_price_delta(), 0.0);
  EXPECT_EQ(c.price_deltas[0], 0.0);
}

TEST(PriceMonotonicity, RandomRaisesAndRemovals) {
  std::mt19937_64 rng(27);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  RandomInstanceSpec shape;
  shape.max_agents = 4;
  shape.max_items = 3;
  for (int k = 0; k < 200; ++k) {
    Instance inst = random_instance(rng, shape);
    MessageProfile prof = random_profile(rng, inst.num_agents(), 0.0);
    std::size_t i = rng() % inst.num_agents();
    PriceMonotonicity pm = price_monotonicity_check(inst, prof, i, u(rng));
    EXPECT_GE(pm.min_price_delta(), -1e-9) << "instance " << k;
    EXPECT_LE(pm.revenue_delta, pm.new_budget + 1e-9) << "instance " << k;

    FppeOutcome full = solve_fppe(inst, prof);
    FppeOutcome removed = solve_fppe(inst, prof.with(i, Message(prof[i].max_bid, 0.0)));
    for (std::size_t j = 0; j < inst.num_items(); ++j) {
      EXPECT_LE(removed.prices[j], full.prices[j] + 1e-9) << "instance " << k;
    }
  }
}

}  // namespace
}  // namespace pacing
