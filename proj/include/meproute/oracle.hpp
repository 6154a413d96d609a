#pragma once

#include "meproute/instance.hpp"

namespace meproute {

struct OracleResult {
  Solution best_solution;
  double optimal_value = 0.0;
  long long evaluated_count = 0;
};

/// Variant objective of an explicit set of tours: open path lengths for the
/// non-returning variant, cycles for the returning ones, depot-to-depot paths
/// for the single-depot variant.
double tours_objective(const ProblemInstance& instance,
                       const std::vector<std::vector<int>>& tours, Metric metric);

/// Exhaustive minimizer over permutations and break tuples. Guarded to
/// n <= 10 for one salesman and n <= 9 otherwise; not defined for cetsp.
OracleResult exact_solve(const ProblemInstance& instance, Metric metric);

/// Exact in visiting order (n <= 7), locally optimal in waypoints: each
/// waypoint is repeatedly projected toward the midpoint of its neighbors,
/// keeping only moves that do not lengthen the cycle.
OracleResult cetsp_order_oracle(const ProblemInstance& instance);

}  // namespace meproute
