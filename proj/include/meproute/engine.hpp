#pragma once

#include <functional>
#include <span>
#include <vector>

#include "meproute/state.hpp"
#include "meproute/variants.hpp"

namespace meproute {

/// log(sum_i exp(v_i)), max-shifted so nothing overflows.
/// Throws Error("empty exponent set") on an empty input.
double log_sum_exp(std::span<const double> values);

using MetricFn = std::function<double(Point node, Point codevector, double radius)>;

/// Row-normalized Gibbs association matrix p(j|i), row-major n*n, computed in
/// the log domain. `max_row_error` (optional) receives the worst |row sum - 1|.
std::vector<double> association_probabilities(const ProblemInstance& instance,
                                              std::span<const Point> codevectors, double beta,
                                              const MetricFn& metric,
                                              double* max_row_error = nullptr);

/// -(1/beta) sum_i log sum_j exp(-beta d(x_i, y_j)). Defaults to the squared
/// Euclidean metric.
double basic_free_energy(const ProblemInstance& instance, std::span<const Point> codevectors,
                         double beta, const MetricFn& metric = {});

struct SweepResult {
  int sweeps = 0;
  bool converged = false;
  double max_displacement = 0.0;
};

/// Repeats {association, partition, in-place codevector updates in index
/// order} until the maximum displacement drops below sweep_tol or max_sweeps
/// is reached. Refreshes state.free_energy. Non-convergence is recorded in
/// the trace and left to the caller; NaN/Inf codevectors throw
/// NumericalDivergence.
SweepResult fixed_point_sweep(AnnealState& state, const ProblemInstance& instance,
                              const VariantRules& rules, double sweep_tol, int max_sweeps,
                              Trace* trace = nullptr);

struct AnnealResult {
  Solution solution;
  Trace trace;
};

/// Full annealing loop: at each beta, theta decays until the squared tour
/// length stabilizes, then beta grows and the codevectors get a small seeded
/// perturbation; terminates once beta >= beta_max and theta <= theta_min.
AnnealResult anneal(const ProblemInstance& instance, const Schedule& schedule,
                    const VariantRules& rules, const SolverOptions& options = {});
AnnealResult anneal(const ProblemInstance& instance, const Schedule& schedule,
                    const SolverOptions& options = {});

}  // namespace meproute
