#pragma once

#include <cstddef>
#include <vector>

#include "pacing/metagame.hpp"

namespace pacing::detail {

// min{w/p, sup{x in [0,1] : S(x) > p R(px)}}, 0 when empty. Below this share an
// agent facing a fixed price p strictly gains from buying more.
double strict_upper_bound(const AgentType& agent, double p, double phi);

// Utility of agent i when it reports m and the others keep their messages.
double single_item_deviation_utility(const Instance& instance, const MessageProfile& profile,
                                     std::size_t agent, const Message& m);

// Sorted, de-duplicated geometric + linear grid on [0, upper] with `points` entries.
std::vector<double> sweep_grid(double upper, std::size_t points);

}  // namespace pacing::detail
