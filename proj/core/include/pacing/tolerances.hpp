#pragma once

namespace pacing {

// Every numeric tolerance used by the library lives here.
struct Tolerances {
  double numeric = 1e-9;          // generic comparisons, bisection targets
  double fppe = 1e-8;             // accepted FPPE residual (relative to price scale)
  double fppe_exact = 1e-10;      // acceptance threshold for the exact path
  double nash_single_item = 1e-7; // default epsilon for exact single-item verification
  double nash_grid = 1e-4;        // default epsilon for grid-based verification
  double golden_section = 1e-12;  // bracket width in budget units
  double bisection = 1e-12;       // interval width for scalar root finding
};

inline const Tolerances& default_tolerances() {
  static const Tolerances t{};
  return t;
}

}  // namespace pacing
