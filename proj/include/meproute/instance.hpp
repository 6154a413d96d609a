#pragma once

#include <optional>
#include <string>
#include <vector>

#include "meproute/geometry.hpp"

namespace meproute {

enum class Variant {
  BasicReturningTSP,
  NonReturningMTSP,
  ReturningMTSP,
  SingleDepotReturningMTSP,
  ReturningCETSP,
};

/// CLI / JSON names: basic, mtsp-open, mtsp-returning, mtsp-depot, cetsp.
std::string variant_name(Variant v);
std::optional<Variant> variant_from_name(const std::string& name);

struct Node {
  int id = 0;  // 1-based, contiguous
  Point position;
  double radius = 0.0;  // disk radius; 0 for point-TSP variants
};

struct Depot {
  Point position;
};

struct ProblemInstance {
  std::vector<Node> nodes;
  std::optional<Depot> depot;
  Variant variant = Variant::BasicReturningTSP;
  int salesmen = 1;
  double balance_eta = 0.0;  // tour-balance weight, single-depot m=2 only

  int size() const { return static_cast<int>(nodes.size()); }
  Point position(int index) const { return nodes[index].position; }

  Point centroid() const;
  /// Mean squared distance of the nodes to their centroid.
  double coordinate_variance() const;
  /// Bounding-box diagonal; 1.0 for degenerate (single-point) node sets.
  double coordinate_scale() const;

  /// Throws Error when an invariant is violated.
  void validate() const;
};

struct Solution {
  Variant variant = Variant::BasicReturningTSP;
  std::vector<std::vector<int>> tours;  // 1-based node ids, one sequence per salesman
  std::vector<int> breaks;              // extracted partition tuple, 1-based chain positions
  double euclidean_length = 0.0;
  double squared_length = 0.0;
  std::vector<Point> codevectors;
  std::optional<std::vector<Point>> waypoints;  // CETSP visiting points
};

}  // namespace meproute
