#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "pacing/instance.hpp"

namespace pacing {

enum class PreferenceFamily { Budgeted, Power, PiecewiseLinear, Mixed };

struct RandomInstanceSpec {
  std::size_t min_agents = 2;
  std::size_t max_agents = 3;
  std::size_t min_items = 1;
  std::size_t max_items = 3;
  PreferenceFamily family = PreferenceFamily::Budgeted;
  double infinite_budget_probability = 0.25;
  double zero_ctr_probability = 0.15;
};

AgentType random_agent(std::mt19937_64& rng, PreferenceFamily family,
                       double infinite_budget_probability);
Instance random_instance(std::mt19937_64& rng, const RandomInstanceSpec& shape);

// Random report; never both coordinates infinite.
Message random_message(std::mt19937_64& rng, double infinite_probability = 0.2);
MessageProfile random_profile(std::mt19937_64& rng, std::size_t n,
                              double infinite_probability = 0.2);

}  // namespace pacing
