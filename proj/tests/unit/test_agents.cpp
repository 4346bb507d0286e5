#include <gtest/gtest.h>

#include <random>

#include "pacing/agents.hpp"
#include "pacing/instance.hpp"
#include "support/oracles.hpp"

namespace pacing {
namespace {

using testing::central_difference;
using testing::kInfinity;
const ExtNonNeg kInfBudget = ExtNonNeg::infinity();

std::vector<Valuation> valuation_families() {
  return {Valuation::linear(2.0), Valuation::power(1.0, 0.5), Valuation::power(1.7, 0.3),
          Valuation::piecewise_linear({{0, 0}, {1, 2}, {2, 3}, {4, 3.5}})};
}

std::vector<MoneyCost> cost_families() {
  return {MoneyCost::identity(), MoneyCost::power(1.0, 2.0), MoneyCost::power(0.5, 1.5),
          MoneyCost::piecewise_linear({{0, 0}, {1, 1}, {2, 3}})};
}

TEST(ExtNonNeg, ArithmeticFollowsExtendedRealConventions) {
  ExtNonNeg inf = ExtNonNeg::infinity();
  EXPECT_TRUE((ExtNonNeg(1.5) + inf).is_infinite());
  EXPECT_EQ(min(ExtNonNeg(2.0), inf).as_double(), 2.0);
  EXPECT_TRUE(max(ExtNonNeg(2.0), inf).is_infinite());
  EXPECT_TRUE(ExtNonNeg(3.0) < inf);
  EXPECT_FALSE(inf < inf);
  EXPECT_EQ(ExtNonNeg(kInfinity), inf);
  EXPECT_THROW(ExtNonNeg(-1.0), InputError);
  EXPECT_THROW(ExtNonNeg(std::nan("")), InputError);
  EXPECT_THROW(inf.finite(), DomainError);
  EXPECT_FALSE(inf.exceeded_by(1e300));
  EXPECT_TRUE(ExtNonNeg(0.5).exceeded_by(0.6));
}

TEST(Valuation, EvaluatesDocumentedExamples) {
  EXPECT_DOUBLE_EQ(eval_valuation(Valuation::linear(2.0), 0.5), 1.0);
  for (const auto& v : valuation_families()) EXPECT_EQ(eval_valuation(v, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(eval_valuation(Valuation::power(1.0, 0.5), 4.0), 2.0);
  EXPECT_THROW(eval_valuation(Valuation::linear(1.0), -0.1), InputError);
}

TEST(Valuation, DerivativeExamples) {
  EXPECT_EQ(valuation_derivative(Valuation::linear(3.0), 0.7), 3.0);
  const Valuation sqrt_v = Valuation::power(1.0, 0.5);
  const double fd = central_difference([&](double q) { return sqrt_v(q); }, 1.0, 1e-6);
  EXPECT_NEAR(valuation_derivative(sqrt_v, 1.0), fd, 1e-6);
  EXPECT_NEAR(valuation_derivative(sqrt_v, 1.0), 0.5, 1e-12);
  // Right slope at a breakpoint.
  EXPECT_EQ(valuation_derivative(Valuation::piecewise_linear({{0, 0}, {1, 2}, {2, 3}}), 1.0), 1.0);
}

TEST(Valuation, RejectsNonConcaveFamilies) {
  EXPECT_THROW(Valuation::power(1.0, 1.5), InputError);
  EXPECT_THROW(Valuation::piecewise_linear({{0, 0}, {1, 1}, {2, 3}}), InputError);
  EXPECT_THROW(Valuation::piecewise_linear({{0, 1}, {1, 2}}), InputError);
  EXPECT_THROW(Valuation::linear(-1.0), InputError);
}

TEST(Valuation, ConcaveOnRandomChords) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  for (const auto& v : valuation_families()) {
    for (int k = 0; k < 2000; ++k) {
      double a = u(rng), b = u(rng), c = u(rng);
      double q[3] = {a, b, c};
      std::sort(q, q + 3);
      if (q[2] - q[0] < 1e-9) continue;
      double t = (q[1] - q[0]) / (q[2] - q[0]);
      EXPECT_GE(v(q[1]), (1 - t) * v(q[0]) + t * v(q[2]) - 1e-12);
    }
  }
}

TEST(Valuation, DerivativeMatchesFiniteDifferenceOnSmoothFamilies) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.05, 10.0);
  for (const auto& v : {Valuation::linear(1.3), Valuation::power(1.0, 0.5),
                        Valuation::power(2.0, 0.8)}) {
    for (int k = 0; k < 500; ++k) {
      double q = u(rng);
      double fd = central_difference([&](double x) { return v(x); }, q, 1e-6);
      EXPECT_NEAR(v.derivative(q), fd, 1e-5) << "q=" << q;
    }
  }
}

TEST(MoneyCost, DocumentedExamples) {
  const MoneyCost id = MoneyCost::identity();
  EXPECT_EQ(eval_cost(id, 0.4), 0.4);
  EXPECT_EQ(cost_derivative(id, 0.4), 1.0);
  EXPECT_EQ(cost_inverse(id, 0.4), 0.4);
  const MoneyCost sq = MoneyCost::power(1.0, 2.0);
  EXPECT_NEAR(cost_inverse(sq, 4.0), 2.0, 1e-12);
  EXPECT_NEAR(eval_cost(sq, cost_inverse(sq, 4.0)), 4.0, 1e-12);
  EXPECT_DOUBLE_EQ(eval_cost(MoneyCost::piecewise_linear({{0, 0}, {1, 1}, {2, 3}}), 1.5), 2.0);
}

TEST(MoneyCost, InverseRoundTripPerFamily) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (const auto& c : cost_families()) {
    for (int k = 0; k < 1000; ++k) {
      double t = u(rng);
      EXPECT_NEAR(c.inverse(c(t)), t, 1e-9 * std::max(1.0, t));
    }
  }
}

TEST(MoneyCost, BoundedCostRaisesRangeError) {
  const MoneyCost free = MoneyCost::piecewise_linear({{0, 0}, {1, 0}});
  EXPECT_TRUE(free.identically_zero());
  EXPECT_THROW(free.inverse(1.5), RangeError);
  EXPECT_TRUE(std::isinf(free.inverse_or_inf(1.5)));
  EXPECT_THROW(MoneyCost::piecewise_linear({{0, 0}, {1, 1}, {2, 1}}), InputError);
  EXPECT_THROW(MoneyCost::piecewise_linear({{0, 0}, {1, 2}, {2, 3}}), InputError);
  EXPECT_THROW(MoneyCost::power(1.0, 0.5), InputError);
}

TEST(AgentType, InfiniteBudgetNeedsACost) {
  const MoneyCost free = MoneyCost::piecewise_linear({{0, 0}, {1, 0}});
  EXPECT_THROW(AgentType(Valuation::linear(1.0), free, kInfBudget), InputError);
  EXPECT_NO_THROW(AgentType(Valuation::linear(1.0), free, ExtNonNeg(2.0)));
}

TEST(Utility, BudgetBranch) {
  const AgentType a = budgeted_agent(2.0, 0.5);
  const std::vector<double> x{1.0}, phi{1.0}, zero{0.0};
  EXPECT_DOUBLE_EQ(utility(a, x, phi, 0.5), 1.5);
  EXPECT_EQ(utility(a, x, phi, 0.6), -kInfinity);
  EXPECT_EQ(utility(a, zero, phi, 0.0), 0.0);
}

TEST(UtilityFromPrices, MatchesExplicitAllocation) {
  const AgentType a = budgeted_agent(2.0, kInfBudget);
  const std::vector<double> price{1.0}, phi{1.0}, x{0.7};
  EXPECT_DOUBLE_EQ(utility_from_prices(a, 0.7, price, phi), 0.7);
  EXPECT_DOUBLE_EQ(utility_from_prices(a, 0.7, price, phi), utility(a, x, phi, 0.7));
  EXPECT_EQ(utility_from_prices(a, 0.0, price, phi), 0.0);
  EXPECT_EQ(utility_from_prices(budgeted_agent(2.0, 0.5), 0.6, price, phi), -kInfinity);
  const std::vector<double> free{0.0};
  EXPECT_THROW(utility_from_prices(a, 0.3, free, phi), DomainError);
}

TEST(WillingnessToPay, DocumentedExamples) {
  EXPECT_DOUBLE_EQ(willingness_to_pay(budgeted_agent(100.0, 1.0), 0.01), 1.0);
  EXPECT_DOUBLE_EQ(willingness_to_pay(budgeted_agent(1.0, kInfBudget), 0.99), 0.99);
  EXPECT_EQ(willingness_to_pay(budgeted_agent(1.0, 1.0), 0.0), 0.0);
}

TEST(WillingnessToPay, BoundedByBudgetAndInverseValue) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (const auto& v : valuation_families()) {
    for (const auto& c : cost_families()) {
      for (double w : {0.3, 2.0, kInfinity}) {
        AgentType a(v, c, w);
        for (int k = 0; k < 200; ++k) {
          double q = u(rng);
          double wtp = willingness_to_pay(a, q);
          EXPECT_LE(wtp, w);
          EXPECT_LE(wtp, c.inverse_or_inf(v(q)) + 1e-12);
        }
      }
    }
  }
}

TEST(Instance, ValidatesClickThroughRates) {
  std::vector<AgentType> two{budgeted_agent(1, 1), budgeted_agent(1, 1)};
  EXPECT_THROW(Instance(two, Matrix::from_rows({{1.0}, {-0.1}})), InputError);
  EXPECT_THROW(Instance(two, Matrix::from_rows({{1.0}})), InputError);
  Instance degenerate(two, Matrix::from_rows({{1.0, 0.0}, {0.5, 0.0}}));
  EXPECT_EQ(degenerate.degenerate_items(), std::vector<std::size_t>{1});
}

TEST(Message, RejectsBothCoordinatesInfinite) {
  EXPECT_THROW(Message(ExtNonNeg::infinity(), ExtNonNeg::infinity()), InputError);
}

}  // namespace
}  // namespace pacing
