#pragma once

#include <functional>
#include <span>

#include "meproute/partition.hpp"
#include "meproute/state.hpp"

namespace meproute {

/// Per-variant behaviour bundle consumed by the annealing engine. All members
/// are pure functions of their arguments (plus the instance and options they
/// close over), so a rules object can be shared across solves.
struct VariantRules {
  Variant variant = Variant::BasicReturningTSP;
  /// Node-to-codevector distance: d(node, codevector) given the node radius.
  std::function<double(Point, Point, double)> metric;
  /// Break-position probabilities for the current codevectors; empty table
  /// for single-salesman variants.
  std::function<PartitionTable(const AnnealState&)> partition;
  /// Fixed-point update for codevector j (0-based).
  std::function<Point(int j, const AnnealState&, const PartitionTable&, Trace*)> update;
  /// Variant free energy at the state's beta/theta.
  std::function<double(const AnnealState&)> free_energy;
  /// Squared chain length of the variant's tour topology (the stability and
  /// trace quantity).
  std::function<double(std::span<const Point>)> chain_sq_length;
};

VariantRules make_rules(const ProblemInstance& instance, const SolverOptions& options = {});

enum class ChainTopology { Open, Closed };

/// Elastic-chain update without any partition terms (the single-salesman
/// fixed point). Open chains drop the missing neighbor terms entirely.
Point basic_update(int j, const AnnealState& state, const ProblemInstance& instance,
                   ChainTopology topology);

Point nonreturning_update(int j, const AnnealState& state, const ProblemInstance& instance,
                          const PartitionTable& table);

Point returning_update(int j, const AnnealState& state, const ProblemInstance& instance,
                       const PartitionTable& table);

Point depot_update(int j, const AnnealState& state, const ProblemInstance& instance,
                   const PartitionTable& table, double eta);

Point cetsp_update(int j, const AnnealState& state, const ProblemInstance& instance,
                   bool interior_zero, Trace* trace = nullptr);

/// Variant free energy recomputed from the codevectors alone.
double variant_free_energy(const AnnealState& state, const ProblemInstance& instance,
                           const SolverOptions& options = {});
/// Same, reusing a partition table already built for this state.
double variant_free_energy(const AnnealState& state, const ProblemInstance& instance,
                           const PartitionTable& table, const SolverOptions& options = {});

/// Squared length of the codevector chain in the variant's topology
/// (including depot end links for the single-depot variant).
double chain_sq_length(std::span<const Point> codevectors, const ProblemInstance& instance);

/// Reads tours off a terminal state: nodes go to their most likely
/// codevector, the chain is split at the most likely breaks.
Solution extract_solution(const AnnealState& state, const ProblemInstance& instance,
                          const PartitionTable& table, Trace* trace = nullptr);

}  // namespace meproute
