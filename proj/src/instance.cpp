#include "meproute/instance.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "meproute/errors.hpp"

namespace meproute {

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::BasicReturningTSP: return "basic";
    case Variant::NonReturningMTSP: return "mtsp-open";
    case Variant::ReturningMTSP: return "mtsp-returning";
    case Variant::SingleDepotReturningMTSP: return "mtsp-depot";
    case Variant::ReturningCETSP: return "cetsp";
  }
  return "basic";
}

std::optional<Variant> variant_from_name(const std::string& name) {
  if (name == "basic") return Variant::BasicReturningTSP;
  if (name == "mtsp-open") return Variant::NonReturningMTSP;
  if (name == "mtsp-returning") return Variant::ReturningMTSP;
  if (name == "mtsp-depot") return Variant::SingleDepotReturningMTSP;
  if (name == "cetsp") return Variant::ReturningCETSP;
  return std::nullopt;
}

Point ProblemInstance::centroid() const {
  Point c;
  for (const Node& node : nodes) c = c + node.position;
  return nodes.empty() ? c : c / static_cast<double>(nodes.size());
}

double ProblemInstance::coordinate_variance() const {
  if (nodes.empty()) return 0.0;
  const Point c = centroid();
  double total = 0.0;
  for (const Node& node : nodes) total += squared_distance(node.position, c);
  return total / static_cast<double>(nodes.size());
}

double ProblemInstance::coordinate_scale() const {
  if (nodes.empty()) return 1.0;
  double min_x = nodes[0].position.x, max_x = min_x;
  double min_y = nodes[0].position.y, max_y = min_y;
  for (const Node& node : nodes) {
    min_x = std::min(min_x, node.position.x);
    max_x = std::max(max_x, node.position.x);
    min_y = std::min(min_y, node.position.y);
    max_y = std::max(max_y, node.position.y);
  }
  const double diag = std::hypot(max_x - min_x, max_y - min_y);
  return diag > 0.0 ? diag : 1.0;
}

void ProblemInstance::validate() const {
  if (nodes.empty()) throw Error("instance has no nodes");
  std::set<int> ids;
  for (const Node& node : nodes) {
    if (!std::isfinite(node.position.x) || !std::isfinite(node.position.y)) {
      throw Error("node coordinates must be finite");
    }
    if (node.radius < 0.0 || !std::isfinite(node.radius)) {
      throw Error("node radius must be a nonnegative real");
    }
    ids.insert(node.id);
  }
  const int n = size();
  if (static_cast<int>(ids.size()) != n || *ids.begin() != 1 || *ids.rbegin() != n) {
    throw Error("node ids must be unique and contiguous starting at 1");
  }

  const bool is_cetsp = variant == Variant::ReturningCETSP;
  if (!is_cetsp) {
    for (const Node& node : nodes) {
      if (node.radius != 0.0) throw Error("node radii must be zero unless variant is cetsp");
    }
  }

  const bool needs_depot = variant == Variant::SingleDepotReturningMTSP;
  if (needs_depot != depot.has_value()) {
    throw Error(needs_depot ? "mtsp-depot requires a depot" : "depot only allowed for mtsp-depot");
  }
  if (depot && (!std::isfinite(depot->position.x) || !std::isfinite(depot->position.y))) {
    throw Error("depot coordinates must be finite");
  }

  if (salesmen < 1) throw Error("salesmen must be >= 1");
  if (salesmen > n) throw Error("too many salesmen");
  switch (variant) {
    case Variant::BasicReturningTSP:
    case Variant::ReturningCETSP:
      if (salesmen != 1) throw Error("variant requires exactly one salesman");
      break;
    case Variant::NonReturningMTSP:
    case Variant::ReturningMTSP:
    case Variant::SingleDepotReturningMTSP:
      if (salesmen < 2) throw Error("mtsp variants require at least two salesmen");
      break;
  }

  if (balance_eta != 0.0) {
    if (variant != Variant::SingleDepotReturningMTSP) {
      throw Error("eta is only meaningful for mtsp-depot");
    }
    if (salesmen != 2) throw Error("eta balancing is defined for two salesmen");
    if (balance_eta < 0.0) throw Error("eta must be nonnegative");
    if (balance_eta >= 1.0) throw Error("balance weight too large");
  }
}

}  // namespace meproute
