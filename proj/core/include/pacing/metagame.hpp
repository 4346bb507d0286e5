#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pacing/fppe.hpp"
#include "pacing/instance.hpp"

namespace pacing {

enum class MessageSpace { Full, BudgetOnly, BudgetOnlyKnownValue, ValueOnly };

std::string to_string(MessageSpace s);
MessageSpace message_space_from_string(const std::string& s);

// Agent i's true utility in the FPPE induced by the profile.
double utility_of_profile(const Instance& instance, const MessageProfile& profile,
                          std::size_t agent, const FppeOptions& options = {});

struct BestResponse {
  Message message;
  double utility = 0.0;  // the supremum when !attained
  bool attained = true;
  double witness_budget = 0.0;  // a budget within the boundary sequence when !attained
  std::size_t pieces = 0;
  bool exact = true;  // false for sweep-based spaces
};

BestResponse best_response_single_item(const Instance& instance, const MessageProfile& profile,
                                       std::size_t agent,
                                       MessageSpace space = MessageSpace::Full);

enum class NashMethod { ExactSingleItem, GridSweep };
std::string to_string(NashMethod m);

struct EquilibriumReport {
  bool is_eps_nash = false;
  double eps = 0.0;
  std::size_t worst_agent = 0;
  Message worst_deviation;
  double gain = 0.0;
  NashMethod method = NashMethod::ExactSingleItem;
  std::vector<double> agent_gains;
  std::vector<double> agent_utilities;
  std::size_t grid_points = 0;  // 0 for the exact path
  double grid_upper = 0.0;
};

struct NashOptions {
  std::size_t grid_points = 2000;
  FppeOptions fppe{};
};

EquilibriumReport verify_pure_nash(const Instance& instance, const MessageProfile& profile,
                                   double eps, MessageSpace space = MessageSpace::Full,
                                   const NashOptions& options = {});

// Per-agent finite message sets.
using StrategyGrid = std::vector<std::vector<Message>>;

StrategyGrid product_grid(const std::vector<ExtNonNeg>& max_bids,
                          const std::vector<ExtNonNeg>& budgets, std::size_t num_agents);

struct GridSearchResult {
  std::vector<std::vector<std::size_t>> eps_pne;  // strategy indices per agent
  double min_max_gain = 0.0;
  std::vector<std::size_t> argmin_profile;
  std::size_t profiles = 0;
};

struct GridSearchOptions {
  std::size_t max_profiles = 5'000'000;
  std::size_t jobs = 1;
  FppeOptions fppe{};
};

GridSearchResult grid_epsilon_pne_search(const Instance& instance, const StrategyGrid& grid,
                                         double eps, const GridSearchOptions& options = {});

struct AllocBounds {
  double p = 0.0;
  std::vector<double> y;
  std::vector<double> z;
};

// Per-agent bounds at price p with click-through rate phi.
std::pair<double, double> alloc_bounds(const AgentType& agent, double p, double phi = 1.0);
AllocBounds alloc_bounds(const Instance& instance, double p);

struct PriceInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = false;
  bool hi_open = false;
  bool empty = true;

  bool contains(double p, double tol) const;
};

struct PriceIntervals {
  PriceInterval low;   // P_L
  PriceInterval high;  // P_H
};

PriceIntervals price_intervals(const Instance& instance);

MessageProfile construct_low_price_eq(const Instance& instance, double p);
std::optional<MessageProfile> construct_high_price_eq(const Instance& instance, double p);

enum class EquilibriumKind { Low, High };
std::string to_string(EquilibriumKind k);

struct SingleItemEquilibrium {
  double price = 0.0;
  MessageProfile profile;
  EquilibriumKind kind = EquilibriumKind::Low;
  EquilibriumReport report;
};

struct SingleItemNashResult {
  std::vector<SingleItemEquilibrium> equilibria;
  PriceIntervals intervals;
  double lowest_price = 0.0;   // inf P_L
  double highest_price = 0.0;  // sup P_H
};

SingleItemNashResult solve_pure_nash_single_item(const Instance& instance,
                                                 double eps = 1e-6);

struct MixedStrategy {
  std::vector<Message> support;
  std::vector<double> probabilities;
};

class MixedProfile {
 public:
  explicit MixedProfile(std::vector<MixedStrategy> strategies);
  static MixedProfile point_mass(const MessageProfile& profile);

  std::size_t size() const noexcept { return strategies_.size(); }
  const MixedStrategy& operator[](std::size_t i) const { return strategies_.at(i); }
  std::size_t support_product() const;

 private:
  std::vector<MixedStrategy> strategies_;
};

struct MixedBoundReport {
  std::vector<double> expected_utility;
  std::vector<double> expected_prices;
  // E[p_j] with agent i replaced by (inf, 0), indexed [i][j].
  std::vector<std::vector<double>> expected_prices_without;
  std::vector<double> agent_slack;  // deviation bound: RHS minus LHS per agent
  std::vector<double> eq_wtp;       // min{w, C^{-1}(E[V])}
  double eq_welfare = 0.0;
  double opt_welfare = 0.0;         // W(x*)
  double aggregate_slack = 0.0;     // 4 W(eq) - W(x*)
  double ratio = 0.0;               // W(x*) / W(eq)
  double max_dominance_violation = 0.0;  // max_j (E[p'_j] - E[p_j])_+
  std::size_t realizations = 0;
};

MixedBoundReport mixed_deviation_bound_check(const Instance& instance, const MixedProfile& mixed,
                                             const Matrix& x_star,
                                             std::size_t max_realizations = 200000);

}  // namespace pacing
