#include "meproute/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "meproute/errors.hpp"

namespace meproute {

namespace {

double tour_points_length(const ProblemInstance& instance, const std::vector<int>& tour,
                          Metric metric, bool closed, bool depot_ends) {
  std::vector<Point> points;
  points.reserve(tour.size() + 2);
  if (depot_ends) points.push_back(instance.depot->position);
  for (int id : tour) points.push_back(instance.nodes[id - 1].position);
  if (depot_ends) points.push_back(instance.depot->position);
  return tour_length(points, closed, metric);
}

struct BreakEnumerator {
  // All sorted k-subsets of {0..limit-1}.
  static std::vector<std::vector<int>> subsets(int limit, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> pick(k);
    auto rec = [&](auto&& self, int start, int depth) -> void {
      if (depth == k) {
        out.push_back(pick);
        return;
      }
      for (int v = start; v < limit; ++v) {
        pick[depth] = v;
        self(self, v + 1, depth + 1);
      }
    };
    rec(rec, 0, 0);
    return out;
  }
};

std::vector<std::vector<int>> tours_from_open_breaks(const std::vector<int>& perm,
                                                     const std::vector<int>& breaks) {
  std::vector<std::vector<int>> tours;
  tours.emplace_back();
  std::size_t b = 0;
  for (int pos = 0; pos < static_cast<int>(perm.size()); ++pos) {
    tours.back().push_back(perm[pos] + 1);
    if (b < breaks.size() && pos == breaks[b]) {
      tours.emplace_back();
      ++b;
    }
  }
  return tours;
}

std::vector<std::vector<int>> tours_from_cyclic_breaks(const std::vector<int>& perm,
                                                       std::vector<int> breaks) {
  const int n = static_cast<int>(perm.size());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::vector<std::vector<int>> tours;
  if (breaks.size() <= 1) {
    tours.emplace_back();
    for (int v : perm) tours.back().push_back(v + 1);
    return tours;
  }
  for (std::size_t s = 0; s < breaks.size(); ++s) {
    const int from = breaks[s];  // segment starts after this position
    const int to = breaks[(s + 1) % breaks.size()];
    std::vector<int> tour;
    for (int pos = (from + 1) % n; ; pos = (pos + 1) % n) {
      tour.push_back(perm[pos] + 1);
      if (pos == to) break;
    }
    tours.push_back(std::move(tour));
  }
  return tours;
}

}  // namespace

double tours_objective(const ProblemInstance& instance,
                       const std::vector<std::vector<int>>& tours, Metric metric) {
  double total = 0.0;
  for (const auto& tour : tours) {
    if (tour.empty()) continue;
    switch (instance.variant) {
      case Variant::BasicReturningTSP:
      case Variant::ReturningCETSP:
      case Variant::ReturningMTSP:
        total += tour_points_length(instance, tour, metric, /*closed=*/true, false);
        break;
      case Variant::NonReturningMTSP:
        total += tour_points_length(instance, tour, metric, /*closed=*/false, false);
        break;
      case Variant::SingleDepotReturningMTSP:
        total += tour_points_length(instance, tour, metric, /*closed=*/false, true);
        break;
    }
  }
  return total;
}

OracleResult exact_solve(const ProblemInstance& instance, Metric metric) {
  instance.validate();
  if (instance.variant == Variant::ReturningCETSP) {
    throw Error("exact_solve does not handle cetsp; use cetsp_order_oracle");
  }
  const int n = instance.size();
  const int m = instance.salesmen;
  if (m == 1 && n > 10) throw OracleSizeLimit("oracle size limit: n <= 10 for a single salesman");
  if (m >= 2 && n > 9) throw OracleSizeLimit("oracle size limit: n <= 9 for multiple salesmen");

  std::vector<double> dist(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      dist[static_cast<std::size_t>(a) * n + b] =
          pair_distance(metric, instance.nodes[a].position, instance.nodes[b].position);
    }
  }
  std::vector<double> depot_dist(n, 0.0);
  if (instance.depot) {
    for (int a = 0; a < n; ++a) {
      depot_dist[a] = pair_distance(metric, instance.nodes[a].position, instance.depot->position);
    }
  }
  auto d = [&](int a, int b) { return dist[static_cast<std::size_t>(a) * n + b]; };

  OracleResult result;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_perm;
  std::vector<int> best_breaks;

  auto consider = [&](double value, const std::vector<int>& perm, const std::vector<int>& br) {
    ++result.evaluated_count;
    if (value < best) {
      best = value;
      best_perm = perm;
      best_breaks = br;
    }
  };

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);

  std::vector<std::vector<int>> breaks;
  switch (instance.variant) {
    case Variant::BasicReturningTSP:
      breaks = {{}};
      break;
    case Variant::NonReturningMTSP:
    case Variant::SingleDepotReturningMTSP:
      breaks = BreakEnumerator::subsets(n - 1, m - 1);
      break;
    case Variant::ReturningMTSP:
      breaks = BreakEnumerator::subsets(n, m);
      if (m == 2) breaks.push_back({0, 0});  // identity rewiring: single tour
      break;
    default:
      break;
  }

  const bool fix_first = instance.variant == Variant::BasicReturningTSP ||
                         instance.variant == Variant::ReturningMTSP;  // rotation symmetry
  if (fix_first) {
    std::vector<int> rest(perm.begin() + 1, perm.end());
    do {
      std::copy(rest.begin(), rest.end(), perm.begin() + 1);
      double cycle = d(perm[n - 1], perm[0]);
      for (int i = 0; i + 1 < n; ++i) cycle += d(perm[i], perm[i + 1]);
      if (instance.variant == Variant::BasicReturningTSP) {
        if (n >= 3 && perm[1] > perm[n - 1]) continue;  // reflection symmetry
        consider(cycle, perm, {});
      } else {
        for (const auto& br : breaks) {
          double value = cycle;
          for (std::size_t i = 0; i < br.size(); ++i) {
            const int k = br[i];
            const int prev = br[(i + br.size() - 1) % br.size()];
            value += -d(perm[k], perm[(k + 1) % n]) + d(perm[k], perm[(prev + 1) % n]);
          }
          consider(value, perm, br);
        }
      }
    } while (std::next_permutation(rest.begin(), rest.end()));
  } else {
    std::sort(perm.begin(), perm.end());
    do {
      double open = 0.0;
      for (int i = 0; i + 1 < n; ++i) open += d(perm[i], perm[i + 1]);
      if (instance.variant == Variant::SingleDepotReturningMTSP) {
        open += depot_dist[perm[0]] + depot_dist[perm[n - 1]];
      }
      for (const auto& br : breaks) {
        double value = open;
        for (int k : br) {
          value -= d(perm[k], perm[k + 1]);
          if (instance.variant == Variant::SingleDepotReturningMTSP) {
            value += depot_dist[perm[k]] + depot_dist[perm[k + 1]];
          }
        }
        consider(value, perm, br);
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  std::vector<std::vector<int>> best_tours;
  if (instance.variant == Variant::ReturningMTSP) {
    best_tours = tours_from_cyclic_breaks(best_perm, best_breaks);
  } else if (instance.variant == Variant::BasicReturningTSP) {
    best_tours = tours_from_open_breaks(best_perm, {});
  } else {
    best_tours = tours_from_open_breaks(best_perm, best_breaks);
  }

  result.best_solution.variant = instance.variant;
  result.best_solution.tours = best_tours;
  for (int b : best_breaks) result.best_solution.breaks.push_back(b + 1);
  result.optimal_value = best;
  result.best_solution.euclidean_length = tours_objective(instance, best_tours, Metric::Euclidean);
  result.best_solution.squared_length = tours_objective(instance, best_tours, Metric::Squared);
  return result;
}

namespace {

Point project_to_disk(Point center, double radius, Point p) {
  const double dist = euclidean_distance(center, p);
  if (dist <= radius) return p;
  const double pull = radius / dist;
  return {center.x + pull * (p.x - center.x), center.y + pull * (p.y - center.y)};
}

// Local waypoint refinement for a fixed visiting order; monotone in the cycle
// length by construction (moves that lengthen it are rejected).
double refine_waypoints(const ProblemInstance& instance, const std::vector<int>& order,
                        std::vector<Point>& waypoints) {
  const int n = static_cast<int>(order.size());
  waypoints.resize(n);
  for (int s = 0; s < n; ++s) waypoints[s] = instance.nodes[order[s]].position;
  if (n == 1) return 0.0;

  for (int pass = 0; pass < 10000; ++pass) {
    double max_disp = 0.0;
    for (int s = 0; s < n; ++s) {
      const Node& node = instance.nodes[order[s]];
      const Point before = waypoints[(s - 1 + n) % n];
      const Point after = waypoints[(s + 1) % n];
      const Point mid = {0.5 * (before.x + after.x), 0.5 * (before.y + after.y)};
      const Point candidate = project_to_disk(node.position, node.radius, mid);
      const double now = euclidean_distance(waypoints[s], before) +
                         euclidean_distance(waypoints[s], after);
      const double then = euclidean_distance(candidate, before) +
                          euclidean_distance(candidate, after);
      if (then <= now) {
        max_disp = std::max(max_disp, euclidean_distance(candidate, waypoints[s]));
        waypoints[s] = candidate;
      }
    }
    if (max_disp < 1e-9) break;
  }
  return tour_length(waypoints, /*closed=*/true, Metric::Euclidean);
}

}  // namespace

OracleResult cetsp_order_oracle(const ProblemInstance& instance) {
  instance.validate();
  const int n = instance.size();
  if (n > 7) throw OracleSizeLimit("oracle size limit: n <= 7 for the cetsp order oracle");

  OracleResult result;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> best_order;
  std::vector<Point> best_waypoints;

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> rest(order.begin() + 1, order.end());
  do {
    std::copy(rest.begin(), rest.end(), order.begin() + 1);
    if (n >= 3 && order[1] > order[n - 1]) continue;  // reflection symmetry
    ++result.evaluated_count;
    std::vector<Point> waypoints;
    const double length = refine_waypoints(instance, order, waypoints);
    if (length < best) {
      best = length;
      best_order = order;
      best_waypoints = std::move(waypoints);
    }
  } while (std::next_permutation(rest.begin(), rest.end()));

  result.optimal_value = best;
  result.best_solution.variant = instance.variant;
  std::vector<int> ids;
  for (int i : best_order) ids.push_back(i + 1);
  result.best_solution.tours = {ids};
  result.best_solution.waypoints = best_waypoints;
  result.best_solution.euclidean_length = best;
  result.best_solution.squared_length =
      tour_length(best_waypoints, /*closed=*/true, Metric::Squared);
  return result;
}

}  // namespace meproute
