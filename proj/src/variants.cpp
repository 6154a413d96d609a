#include "meproute/variants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <sstream>

#include "meproute/engine.hpp"
#include "meproute/errors.hpp"

namespace meproute {

namespace {

inline void add_scaled(Point& num, double w, Point v) {
  num.x += w * v.x;
  num.y += w * v.y;
}

// Sum_i p(j|i) x_i into num; returns sum_i p(j|i). Every update starts here
// with the same accumulation order so reduction identities stay bit-exact.
double accumulate_association(int j, const AnnealState& state, const ProblemInstance& instance,
                              Point& num) {
  const int n = state.n();
  double mass = 0.0;
  for (int i = 0; i < n; ++i) {
    const double p = state.assoc[static_cast<std::size_t>(i) * n + j];
    num.x += p * instance.nodes[i].position.x;
    num.y += p * instance.nodes[i].position.y;
    mass += p;
  }
  return mass;
}

Point finalize_update(Point num, double den, const AnnealState& state, int j,
                      const char* extra = "") {
  if (!(den > 0.0) || !std::isfinite(den)) {
    std::ostringstream msg;
    msg << "degenerate update at beta=" << state.beta << " theta=" << state.theta
        << " codevector " << j + 1 << extra;
    throw Error(msg.str());
  }
  return {num.x / den, num.y / den};
}

}  // namespace

Point basic_update(int j, const AnnealState& state, const ProblemInstance& instance,
                   ChainTopology topology) {
  const int n = state.n();
  const auto& cv = state.codevectors;
  const double th = state.theta;
  Point num;
  double den = accumulate_association(j, state, instance, num);
  if (topology == ChainTopology::Closed) {
    add_scaled(num, th, cv[(j + 1) % n]);
    add_scaled(num, th, cv[(j - 1 + n) % n]);
    den += 2.0 * th;
  } else {
    if (j + 1 < n) {
      add_scaled(num, th, cv[j + 1]);
      den += th;
    }
    if (j - 1 >= 0) {
      add_scaled(num, th, cv[j - 1]);
      den += th;
    }
  }
  return finalize_update(num, den, state, j);
}

Point nonreturning_update(int j, const AnnealState& state, const ProblemInstance& instance,
                          const PartitionTable& table) {
  const int n = state.n();
  const auto& cv = state.codevectors;
  const double th = state.theta;
  Point num;
  double den = accumulate_association(j, state, instance, num);
  if (j + 1 < n) {
    const double w = th * (1.0 - table.marginal[j]);
    add_scaled(num, w, cv[j + 1]);
    den += w;
  }
  if (j - 1 >= 0) {
    const double w = th * (1.0 - table.marginal[j - 1]);
    add_scaled(num, w, cv[j - 1]);
    den += w;
  }
  return finalize_update(num, den, state, j);
}

Point returning_update(int j, const AnnealState& state, const ProblemInstance& instance,
                       const PartitionTable& table) {
  const int n = state.n();
  const auto& cv = state.codevectors;
  const double th = state.theta;
  const int jp = (j + 1) % n;
  const int jm = (j - 1 + n) % n;
  Point num;
  double den = accumulate_association(j, state, instance, num);

  if (table.ordered_pairs) {
    // Two salesmen. Grouped so a diagonal-only table reduces bit-exactly to
    // the closed-chain basic update.
    const double w_next = th * (1.0 - 2.0 * (table.pair_row[j] - table.q(j, j)));
    add_scaled(num, w_next, cv[jp]);
    const double w_prev = th * (1.0 - 2.0 * (table.pair_row[jm] - table.q(jm, jm)));
    add_scaled(num, w_prev, cv[jm]);
    den += 2.0 * th * (1.0 - 2.0 * table.q(j, jm));
    for (int l = 0; l < n; ++l) {
      if (l == j || l == jm) continue;
      add_scaled(num, 2.0 * th * table.q(j, l), cv[(l + 1) % n]);
    }
    for (int l = 0; l < n; ++l) {
      if (l == j || l == jm) continue;
      add_scaled(num, 2.0 * th * table.q(jm, l), cv[l]);
    }
    return finalize_update(num, den, state, j,
                           "; partition mass concentrated on the adjacent pair, reduce the theta "
                           "decay step");
  }

  // Three salesmen: expectation over the prev-break joint distribution.
  const double w_next = th * (1.0 - table.marginal[j]);
  add_scaled(num, w_next, cv[jp]);
  const double w_prev = th * (1.0 - table.marginal[jm]);
  add_scaled(num, w_prev, cv[jm]);
  den += th * (2.0 - 2.0 * table.prev_at(j, jm));
  for (int a = 0; a < n; ++a) {
    if (a == jm) continue;  // self target, folded into the denominator
    add_scaled(num, th * table.prev_at(j, a), cv[(a + 1) % n]);
  }
  for (int b = 0; b < n; ++b) {
    if (b == j) continue;
    add_scaled(num, th * table.prev_at(b, jm), cv[b]);
  }
  return finalize_update(num, den, state, j,
                         "; partition mass concentrated on adjacent breaks, reduce the theta "
                         "decay step");
}

Point depot_update(int j, const AnnealState& state, const ProblemInstance& instance,
                   const PartitionTable& table, double eta) {
  const int n = state.n();
  const auto& cv = state.codevectors;
  const double th = state.theta;
  const Point alpha = instance.depot->position;
  Point num;
  double den = accumulate_association(j, state, instance, num);

  // Pr[break > l] and Pr[break < l]; only needed for the eta-weighted links.
  auto mass_above = [&](int l) {
    double g = 0.0;
    for (int t = l + 1; t + 1 < n; ++t) g += table.marginal[t];
    return g;
  };
  auto mass_below = [&](int l) {
    double g = 0.0;
    for (int t = 0; t < l; ++t) g += table.marginal[t];
    return g;
  };

  if (j + 1 < n) {
    double w_link = th * (1.0 - table.marginal[j]);
    if (eta != 0.0) w_link += th * eta * (mass_above(j) - mass_below(j));
    add_scaled(num, w_link, cv[j + 1]);
    den += w_link;
    const double w_dep = th * (1.0 + eta) * table.marginal[j];
    add_scaled(num, w_dep, alpha);
    den += w_dep;
  } else {
    const double w = th * (1.0 - eta);  // mandatory end link, last tour's side
    add_scaled(num, w, alpha);
    den += w;
  }
  if (j - 1 >= 0) {
    double w_link = th * (1.0 - table.marginal[j - 1]);
    if (eta != 0.0) w_link += th * eta * (mass_above(j - 1) - mass_below(j - 1));
    add_scaled(num, w_link, cv[j - 1]);
    den += w_link;
    const double w_dep = th * (1.0 - eta) * table.marginal[j - 1];
    add_scaled(num, w_dep, alpha);
    den += w_dep;
  } else {
    const double w = th * (1.0 + eta);  // mandatory end link, first tour's side
    add_scaled(num, w, alpha);
    den += w;
  }
  return finalize_update(num, den, state, j);
}

Point cetsp_update(int j, const AnnealState& state, const ProblemInstance& instance,
                   bool interior_zero, Trace* trace) {
  const int n = state.n();
  const auto& cv = state.codevectors;
  const double th = state.theta;
  const Point yj = cv[j];
  Point num;
  double den = 0.0;
  for (int i = 0; i < n; ++i) {
    const double p = state.assoc[static_cast<std::size_t>(i) * n + j];
    const Node& node = instance.nodes[i];
    Point target;
    if (node.radius == 0.0) {
      target = node.position;
    } else {
      const double dist = euclidean_distance(yj, node.position);
      if (interior_zero && dist <= node.radius) {
        target = yj;  // zero gradient inside the disk
      } else if (dist == 0.0) {
        target = {node.position.x + node.radius, node.position.y};
        if (trace) {
          std::ostringstream msg;
          msg << "codevector " << j + 1 << " coincides with node " << node.id
              << "; using the +x radial direction";
          trace->note(msg.str());
        }
      } else {
        const double pull = node.radius / dist;
        target = {node.position.x + pull * (yj.x - node.position.x),
                  node.position.y + pull * (yj.y - node.position.y)};
      }
    }
    num.x += p * target.x;
    num.y += p * target.y;
    den += p;
  }
  add_scaled(num, th, cv[(j + 1) % n]);
  add_scaled(num, th, cv[(j - 1 + n) % n]);
  den += 2.0 * th;
  return finalize_update(num, den, state, j);
}

double chain_sq_length(std::span<const Point> codevectors, const ProblemInstance& instance) {
  switch (instance.variant) {
    case Variant::BasicReturningTSP:
    case Variant::ReturningMTSP:
    case Variant::ReturningCETSP:
      return tour_length(codevectors, /*closed=*/true, Metric::Squared);
    case Variant::NonReturningMTSP:
      return tour_length(codevectors, /*closed=*/false, Metric::Squared);
    case Variant::SingleDepotReturningMTSP: {
      const Point alpha = instance.depot->position;
      return tour_length(codevectors, /*closed=*/false, Metric::Squared) +
             squared_distance(codevectors.front(), alpha) +
             squared_distance(codevectors.back(), alpha);
    }
  }
  return 0.0;
}

namespace {

PartitionTable build_partition(const AnnealState& state, const ProblemInstance& instance,
                               const SolverOptions& options) {
  switch (instance.variant) {
    case Variant::NonReturningMTSP:
      return nonreturning_partition(state.codevectors, state.beta, state.theta,
                                    instance.salesmen);
    case Variant::ReturningMTSP:
      return returning_partition(state.codevectors, state.beta, state.theta, instance.salesmen,
                                 options.strict_returning_prob);
    case Variant::SingleDepotReturningMTSP:
      return depot_partition(state.codevectors, instance.depot->position, state.beta, state.theta,
                             instance.salesmen, instance.balance_eta);
    default:
      return {};
  }
}

double free_energy_impl(const AnnealState& state, const ProblemInstance& instance,
                        double partition_log_norm, const SolverOptions& options) {
  const auto& cv = state.codevectors;
  MetricFn metric = [&instance, &options](Point node, Point y, double rho) {
    (void)rho;
    if (instance.variant != Variant::ReturningCETSP) return squared_distance(node, y);
    return options.interior_zero ? close_enough_distance(node, y, rho)
                                 : close_enough_distance_raw(node, y, rho);
  };
  double f = basic_free_energy(instance, cv, state.beta, metric);

  double chain = 0.0;
  switch (instance.variant) {
    case Variant::BasicReturningTSP:
    case Variant::ReturningCETSP:
    case Variant::ReturningMTSP:
      chain = tour_length(cv, /*closed=*/true, Metric::Squared);
      break;
    case Variant::NonReturningMTSP:
      chain = tour_length(cv, /*closed=*/false, Metric::Squared);
      break;
    case Variant::SingleDepotReturningMTSP: {
      const Point alpha = instance.depot->position;
      const double eta = instance.balance_eta;
      chain = tour_length(cv, /*closed=*/false, Metric::Squared) +
              (1.0 + eta) * squared_distance(cv.front(), alpha) +
              (1.0 - eta) * squared_distance(cv.back(), alpha);
      break;
    }
  }
  f += state.theta * chain;

  if (instance.variant == Variant::NonReturningMTSP ||
      instance.variant == Variant::ReturningMTSP ||
      instance.variant == Variant::SingleDepotReturningMTSP) {
    f += -partition_log_norm / state.beta;
  }
  return f;
}

}  // namespace

double variant_free_energy(const AnnealState& state, const ProblemInstance& instance,
                           const SolverOptions& options) {
  const PartitionTable table = build_partition(state, instance, options);
  return free_energy_impl(state, instance, table.log_norm, options);
}

double variant_free_energy(const AnnealState& state, const ProblemInstance& instance,
                           const PartitionTable& table, const SolverOptions& options) {
  return free_energy_impl(state, instance, table.log_norm, options);
}

VariantRules make_rules(const ProblemInstance& instance, const SolverOptions& options) {
  auto inst = std::make_shared<const ProblemInstance>(instance);
  VariantRules rules;
  rules.variant = instance.variant;

  const bool cetsp = instance.variant == Variant::ReturningCETSP;
  const bool interior_zero = options.interior_zero;
  rules.metric = [cetsp, interior_zero](Point node, Point y, double rho) {
    if (!cetsp) return squared_distance(node, y);
    return interior_zero ? close_enough_distance(node, y, rho)
                         : close_enough_distance_raw(node, y, rho);
  };

  SolverOptions opts = options;
  rules.partition = [inst, opts](const AnnealState& state) {
    return build_partition(state, *inst, opts);
  };
  rules.free_energy = [inst, opts](const AnnealState& state) {
    return variant_free_energy(state, *inst, opts);
  };
  rules.chain_sq_length = [inst](std::span<const Point> cv) { return chain_sq_length(cv, *inst); };

  switch (instance.variant) {
    case Variant::BasicReturningTSP:
      rules.update = [inst](int j, const AnnealState& s, const PartitionTable&, Trace*) {
        return basic_update(j, s, *inst, ChainTopology::Closed);
      };
      break;
    case Variant::NonReturningMTSP:
      rules.update = [inst](int j, const AnnealState& s, const PartitionTable& t, Trace*) {
        return nonreturning_update(j, s, *inst, t);
      };
      break;
    case Variant::ReturningMTSP:
      rules.update = [inst](int j, const AnnealState& s, const PartitionTable& t, Trace*) {
        return returning_update(j, s, *inst, t);
      };
      break;
    case Variant::SingleDepotReturningMTSP:
      rules.update = [inst](int j, const AnnealState& s, const PartitionTable& t, Trace*) {
        return depot_update(j, s, *inst, t, inst->balance_eta);
      };
      break;
    case Variant::ReturningCETSP:
      rules.update = [inst, interior_zero](int j, const AnnealState& s, const PartitionTable&,
                                           Trace* trace) {
        return cetsp_update(j, s, *inst, interior_zero, trace);
      };
      break;
  }
  return rules;
}

namespace {

// Chain direction used to order nodes sharing a codevector.
Point chain_direction(int j, const ProblemInstance& instance, const std::vector<Point>& cv) {
  const int n = static_cast<int>(cv.size());
  Point before, after;
  switch (instance.variant) {
    case Variant::BasicReturningTSP:
    case Variant::ReturningMTSP:
    case Variant::ReturningCETSP:
      before = cv[(j - 1 + n) % n];
      after = cv[(j + 1) % n];
      break;
    case Variant::NonReturningMTSP:
      before = j > 0 ? cv[j - 1] : cv[j];
      after = j + 1 < n ? cv[j + 1] : cv[j];
      break;
    case Variant::SingleDepotReturningMTSP:
      before = j > 0 ? cv[j - 1] : instance.depot->position;
      after = j + 1 < n ? cv[j + 1] : instance.depot->position;
      break;
  }
  return after - before;
}

double tour_metric_length(const std::vector<int>& tour, const ProblemInstance& instance,
                          Metric metric) {
  std::vector<Point> points;
  points.reserve(tour.size() + 2);
  const bool depot = instance.variant == Variant::SingleDepotReturningMTSP;
  if (depot) points.push_back(instance.depot->position);
  for (int id : tour) points.push_back(instance.nodes[id - 1].position);
  if (depot) points.push_back(instance.depot->position);
  const bool closed = instance.variant == Variant::BasicReturningTSP ||
                      instance.variant == Variant::ReturningMTSP ||
                      instance.variant == Variant::ReturningCETSP;
  return tour_length(points, closed, metric);
}

}  // namespace

Solution extract_solution(const AnnealState& state, const ProblemInstance& instance,
                          const PartitionTable& table, Trace* trace) {
  const int n = state.n();
  const auto& cv = state.codevectors;

  std::vector<int> owner(n, 0);
  std::vector<int> load(n, 0);
  bool tie_seen = false;
  for (int i = 0; i < n; ++i) {
    int best = 0;
    double best_p = state.assoc[static_cast<std::size_t>(i) * n];
    for (int j = 1; j < n; ++j) {
      const double p = state.assoc[static_cast<std::size_t>(i) * n + j];
      if (p > best_p) {
        best = j;
        best_p = p;
      } else if (p == best_p) {
        tie_seen = true;  // lowest index wins
      }
    }
    owner[i] = best;
    ++load[best];
  }
  if (trace) {
    if (tie_seen) trace->note("ambiguous node assignment resolved by lowest codevector index");
    for (int j = 0; j < n; ++j) {
      if (load[j] == 0) {
        trace->note("codevector " + std::to_string(j + 1) + " has no assigned nodes");
        break;
      }
    }
  }

  // Nodes in chain order: by owning codevector, then by position along the
  // local chain direction.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> along(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const Point dir = chain_direction(owner[i], instance, cv);
    const Point rel = instance.nodes[i].position - cv[owner[i]];
    along[i] = rel.x * dir.x + rel.y * dir.y;
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (owner[a] != owner[b]) return owner[a] < owner[b];
    if (along[a] != along[b]) return along[a] < along[b];
    return a < b;
  });

  Solution solution;
  solution.variant = instance.variant;
  solution.codevectors = cv;

  const std::vector<int> breaks = table.argmax_breaks();
  auto owner_in_order = [&](int rank) { return owner[order[rank]]; };

  switch (instance.variant) {
    case Variant::BasicReturningTSP:
    case Variant::ReturningCETSP: {
      std::vector<int> tour;
      for (int rank = 0; rank < n; ++rank) tour.push_back(instance.nodes[order[rank]].id);
      solution.tours.push_back(std::move(tour));
      break;
    }
    case Variant::NonReturningMTSP:
    case Variant::SingleDepotReturningMTSP: {
      // breaks are sorted open-chain link indices; segment t covers
      // codevectors (breaks[t-1], breaks[t]].
      std::size_t b = 0;
      solution.tours.emplace_back();
      for (int rank = 0; rank < n; ++rank) {
        while (b < breaks.size() && owner_in_order(rank) > breaks[b]) {
          solution.tours.emplace_back();
          ++b;
        }
        solution.tours.back().push_back(instance.nodes[order[rank]].id);
      }
      while (solution.tours.size() < static_cast<std::size_t>(instance.salesmen)) {
        solution.tours.emplace_back();
      }
      break;
    }
    case Variant::ReturningMTSP: {
      std::vector<int> cuts = breaks;
      std::sort(cuts.begin(), cuts.end());
      cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
      if (cuts.size() <= 1) {
        // Identity rewiring: one classical tour, rotated to start after the cut.
        std::vector<int> tour;
        const int start = cuts.empty() ? n - 1 : cuts[0];
        for (int rank = 0; rank < n; ++rank) tour.push_back(order[rank]);
        std::stable_partition(tour.begin(), tour.end(),
                              [&](int i) { return owner[i] > start; });
        std::vector<int> ids;
        for (int i : tour) ids.push_back(instance.nodes[i].id);
        solution.tours.push_back(std::move(ids));
      } else {
        // Segment s covers codevectors (cuts[s-1], cuts[s]] cyclically; the
        // wrap segment (cuts.back(), n) u [0, cuts[0]] goes to the first tour.
        const int m_cuts = static_cast<int>(cuts.size());
        solution.tours.assign(m_cuts, {});
        for (int rank = 0; rank < n; ++rank) {
          const int j = owner_in_order(rank);
          int seg = 0;
          while (seg < m_cuts && j > cuts[seg]) ++seg;
          if (seg == m_cuts) seg = 0;  // wrap
          solution.tours[seg].push_back(instance.nodes[order[rank]].id);
        }
        // Keep wrap segments contiguous: nodes beyond the last cut precede
        // the ones before the first cut.
        auto& wrap = solution.tours[0];
        std::stable_partition(wrap.begin(), wrap.end(),
                              [&](int id) { return owner[id - 1] > cuts.back(); });
      }
      break;
    }
  }

  for (int b : breaks) solution.breaks.push_back(b + 1);

  if (instance.variant == Variant::ReturningCETSP) {
    solution.waypoints = cv;
    solution.euclidean_length = tour_length(cv, /*closed=*/true, Metric::Euclidean);
    solution.squared_length = tour_length(cv, /*closed=*/true, Metric::Squared);
  } else {
    for (const auto& tour : solution.tours) {
      solution.euclidean_length += tour_metric_length(tour, instance, Metric::Euclidean);
      solution.squared_length += tour_metric_length(tour, instance, Metric::Squared);
    }
  }

  // Partition sanity: each node exactly once.
  std::vector<char> seen(n, 0);
  int count = 0;
  for (const auto& tour : solution.tours) {
    for (int id : tour) {
      if (id < 1 || id > n || seen[id - 1]) throw Error("extracted tours do not partition nodes");
      seen[id - 1] = 1;
      ++count;
    }
  }
  if (count != n) throw Error("extracted tours do not partition nodes");
  return solution;
}

}  // namespace meproute
