#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "meproute/instance.hpp"

namespace meproute {

/// Annealing control parameters. `defaults_for` scales the temperature range
/// by the node spread so the same constants work across instance sizes.
struct Schedule {
  double beta_init = 0.1;
  double beta_growth = 1.05;
  double beta_max = 1e5;
  double theta_init = 1.0;
  double theta_decay = 0.95;
  double theta_min = 1e-4;
  double stability_tol = 1e-4;  // relative tour-length change treated as "stable"
  double sweep_tol = 1e-8;      // max codevector displacement ending a sweep loop
  int max_sweeps = 500;
  double perturbation = 1e-6;   // noise magnitude (times coordinate scale) after each beta step
  std::uint64_t rng_seed = 1;
  int restarts = 1;             // independent seeded runs; best objective wins

  static Schedule defaults_for(const ProblemInstance& instance);
  void validate() const;
};

struct SolverOptions {
  bool interior_zero = true;           // no penalty for codevectors inside a disk
  bool strict_returning_prob = false;  // as-printed returning partition weights
  bool theta_reset = false;            // reset theta to theta_init after each beta increase
  bool record_codevectors = false;     // keep per-step codevector snapshots in the trace
};

struct TraceStep {
  int step = 0;
  double beta = 0.0;
  double theta = 0.0;
  double free_energy = 0.0;
  double sq_tour_length = 0.0;
  int sweeps = 0;
  bool converged = true;
  std::vector<Point> codevectors;  // populated when SolverOptions::record_codevectors
};

struct Trace {
  std::vector<TraceStep> steps;
  std::vector<std::string> events;
  double max_assoc_row_error = 0.0;  // worst |sum_j p(j|i) - 1| seen
  double max_partition_error = 0.0;  // worst |total partition mass - 1| seen

  void note(std::string message) { events.push_back(std::move(message)); }
  /// CSV with header: step,beta,theta,free_energy,sq_tour_length,sweeps
  std::string to_csv() const;
};

struct AnnealState {
  std::vector<Point> codevectors;
  double beta = 0.0;
  double theta = 0.0;
  std::vector<double> assoc;  // row-major p(j|i) = assoc[i*n + j]
  double free_energy = 0.0;

  int n() const { return static_cast<int>(codevectors.size()); }
  double assoc_at(int i, int j) const { return assoc[static_cast<std::size_t>(i) * codevectors.size() + j]; }
};

}  // namespace meproute
