#pragma once

#include <span>
#include <vector>

#include "meproute/instance.hpp"

namespace meproute {

/// Probability mass over break-position tuples for the active variant.
///
/// Break/link indices are 0-based internally: link l joins codevectors l and
/// l+1 (mod n for returning chains). Two storage layouts are used:
///  - subset states (`states`/`prob`) for the open-chain variants and the
///    returning chain with three salesmen, with marginals precomputed;
///  - an ordered-pair matrix (`pair_prob`) for the returning chain with two
///    salesmen, where the diagonal k = l is the identity rewiring.
struct PartitionTable {
  Variant variant = Variant::BasicReturningTSP;
  int m = 1;
  int n = 0;

  std::vector<std::vector<int>> states;  // sorted break tuples
  std::vector<double> prob;              // aligned with states
  std::vector<double> marginal;          // marginal[l] = Pr[l in R]

  bool ordered_pairs = false;
  std::vector<double> pair_prob;  // q(k,l), row-major n*n, symmetric
  std::vector<double> pair_row;   // s(k) = sum_l q(k,l)

  // Pr[j in R and the cyclically previous break is a], row-major n*n.
  // Built for the returning chain with m = 3.
  std::vector<double> prev_joint;

  double log_norm = 0.0;             // log of the partition normalizer
  double normalization_error = 0.0;  // |total mass - 1| after normalization

  bool empty() const { return !ordered_pairs && states.empty(); }
  double total_mass() const;
  double q(int k, int l) const { return pair_prob[static_cast<std::size_t>(k) * n + l]; }
  double prev_at(int j, int a) const { return prev_joint[static_cast<std::size_t>(j) * n + a]; }

  /// Most probable break tuple, ties resolved by enumeration order
  /// (lexicographically smallest tuple). 0-based link indices; for the
  /// returning pair layout returns {k, l} with k <= l, k == l meaning the
  /// single classical tour.
  std::vector<int> argmax_breaks() const;
};

/// P(R) over (m-1)-subsets of the open-chain links, Gibbs weight with
/// positive exponent: long links are probable break points.
PartitionTable nonreturning_partition(std::span<const Point> codevectors, double beta, double theta,
                                      int m);

/// P(R) over break tuples of the cyclic chain, weighting the net cost of the
/// rewiring (added reconnections minus removed links). `strict_printed_form`
/// switches the general-m weights to a per-term sum of exponentials instead
/// of the exponential of the summed cost.
PartitionTable returning_partition(std::span<const Point> codevectors, double beta, double theta,
                                   int m, bool strict_printed_form = false);

/// P(R) over (m-1)-subsets of the open-chain links, weighting the cost of
/// rerouting both sides of each break through the depot. `eta` adds the
/// tour-balance weighting (two salesmen only).
PartitionTable depot_partition(std::span<const Point> codevectors, Point depot, double beta,
                               double theta, int m, double eta = 0.0);

}  // namespace meproute
