#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pacing/instance.hpp"
#include "pacing/matrix.hpp"
#include "pacing/tolerances.hpp"

namespace pacing {

struct FppeResiduals {
  double bang_per_buck = 0.0;  // money units, allocation weighted
  double supply = 0.0;         // allocation units
  double payment = 0.0;        // money units
  double budget = 0.0;         // money units
  double multiplier = 0.0;     // money units, pacing-multiplier form
  double price_scale = 1.0;    // divisor applied to money residuals in verdicts

  double max_relative() const;
};

enum class FppeMethod { Auto, ClosedForm, Exact, Iterative, BruteForce };

std::string to_string(FppeMethod m);

struct FppeOutcome {
  std::vector<double> prices;
  Matrix allocation;
  std::vector<double> payments;
  // alpha_i = min{1, min_j p_j / (v_i phi_ij)}; 0 for an infinite max bid.
  std::vector<double> multipliers;
  // Effective bid per click b_i = min{v_i, min_j p_j / phi_ij}; +inf when unbounded.
  std::vector<double> bids_per_click;
  FppeResiduals residuals;
  FppeMethod method = FppeMethod::Auto;
  std::size_t iterations = 0;

  double revenue() const;
};

struct FppeOptions {
  FppeMethod method = FppeMethod::Auto;
  std::size_t exact_max_agents = 6;
  std::size_t exact_max_items = 6;
  std::size_t max_iterations = 100000;
  // Step size 1/sqrt(iter) on the proportional-response update instead of a unit step.
  bool damped = false;
  Tolerances tol = default_tolerances();
};

// Closed form for one item. ctr_column may be empty (all ones).
FppeOutcome solve_fppe_single_item(const MessageProfile& profile,
                                   const std::vector<double>& ctr_column = {});

FppeOutcome solve_fppe(const Matrix& ctr, const MessageProfile& profile,
                       const FppeOptions& options = {});
FppeOutcome solve_fppe(const Instance& instance, const MessageProfile& profile,
                       const FppeOptions& options = {});

struct FppeReport {
  FppeResiduals residuals;
  double eps = 0.0;
  bool pass = false;
};

FppeResiduals fppe_residuals(const Matrix& ctr, const MessageProfile& profile,
                             const FppeOutcome& outcome);
FppeReport verify_fppe(const Matrix& ctr, const MessageProfile& profile,
                       const FppeOutcome& outcome, double eps);
FppeReport verify_fppe(const Instance& instance, const MessageProfile& profile,
                       const FppeOutcome& outcome, double eps);

// Grid search over budget-feasible pacing outcomes; n, m <= 3.
FppeOutcome brute_force_fppe_oracle(const Matrix& ctr, const MessageProfile& profile,
                                    std::size_t grid_steps);
FppeOutcome brute_force_fppe_oracle(const Instance& instance, const MessageProfile& profile,
                                    std::size_t grid_steps);

struct PriceMonotonicity {
  std::vector<double> prices_before;
  std::vector<double> prices_after;
  std::vector<double> price_deltas;
  double revenue_delta = 0.0;
  double new_budget = 0.0;
  double min_price_delta() const;
};

PriceMonotonicity price_monotonicity_check(const Matrix& ctr, const MessageProfile& profile,
                                           std::size_t agent, double delta_w,
                                           const FppeOptions& options = {});
PriceMonotonicity price_monotonicity_check(const Instance& instance,
                                           const MessageProfile& profile, std::size_t agent,
                                           double delta_w, const FppeOptions& options = {});

}  // namespace pacing
