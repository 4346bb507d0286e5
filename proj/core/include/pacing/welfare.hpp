#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pacing/instance.hpp"
#include "pacing/matrix.hpp"

namespace pacing {

struct WelfareResult {
  std::vector<double> per_agent_wtp;
  double total = 0.0;
  Matrix allocation;
  // Certified upper bound minus achieved value; 0 for exact paths.
  double gap = 0.0;
};

WelfareResult liquid_welfare(const Instance& instance, const Matrix& allocation);

struct WelfareOptions {
  double gap_tolerance = 1e-9;  // relative, multi-item cutting-plane path
  std::size_t max_cuts = 500;
  // Accepted relative gap once max_cuts is reached; larger gaps throw.
  double fallback_gap = 1e-6;
};

WelfareResult optimal_liquid_welfare(const Instance& instance, const WelfareOptions& options = {});

// Grid search oracle; n * m <= 9.
WelfareResult brute_force_optimal_welfare(const Instance& instance, std::size_t grid_steps);

struct PoaResult {
  double ratio = 0.0;  // +inf when the equilibrium welfare is zero
  double optimal = 0.0;
  double equilibrium = 0.0;
  std::string diagnostic;
};

PoaResult poa_ratio(const Instance& instance, const Matrix& eq_allocation);
PoaResult poa_ratio(const Instance& instance, const Matrix& eq_allocation,
                    const WelfareResult& optimum);

}  // namespace pacing
