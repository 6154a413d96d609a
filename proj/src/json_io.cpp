#include "meproute/json_io.hpp"

#include "meproute/errors.hpp"

namespace meproute {

using nlohmann::json;

json instance_to_json(const ProblemInstance& instance) {
  json j;
  j["variant"] = variant_name(instance.variant);
  j["salesmen"] = instance.salesmen;
  j["eta"] = instance.balance_eta;
  if (instance.depot) {
    j["depot"] = {instance.depot->position.x, instance.depot->position.y};
  } else {
    j["depot"] = nullptr;
  }
  json nodes = json::array();
  for (const Node& node : instance.nodes) {
    nodes.push_back({{"id", node.id},
                     {"x", node.position.x},
                     {"y", node.position.y},
                     {"radius", node.radius}});
  }
  j["nodes"] = std::move(nodes);
  return j;
}

ProblemInstance instance_from_json(const json& j) {
  ProblemInstance instance;
  const auto name = j.at("variant").get<std::string>();
  const auto variant = variant_from_name(name);
  if (!variant) throw Error("unknown variant: " + name);
  instance.variant = *variant;
  instance.salesmen = j.value("salesmen", 1);
  instance.balance_eta = j.value("eta", 0.0);
  if (j.contains("depot") && !j.at("depot").is_null()) {
    const auto& d = j.at("depot");
    instance.depot = Depot{{d.at(0).get<double>(), d.at(1).get<double>()}};
  }
  for (const auto& nj : j.at("nodes")) {
    Node node;
    node.id = nj.at("id").get<int>();
    node.position = {nj.at("x").get<double>(), nj.at("y").get<double>()};
    node.radius = nj.value("radius", 0.0);
    instance.nodes.push_back(node);
  }
  std::sort(instance.nodes.begin(), instance.nodes.end(),
            [](const Node& a, const Node& b) { return a.id < b.id; });
  instance.validate();
  return instance;
}

ProblemInstance load_instance_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("invalid instance json: ") + e.what());
  }
  return instance_from_json(j);
}

json solution_to_json(const Solution& solution) {
  json j;
  j["variant"] = variant_name(solution.variant);
  j["tours"] = solution.tours;
  j["breaks"] = solution.breaks;
  j["euclidean_length"] = solution.euclidean_length;
  j["squared_length"] = solution.squared_length;
  if (solution.waypoints) {
    json pts = json::array();
    for (const Point& p : *solution.waypoints) pts.push_back({p.x, p.y});
    j["waypoints"] = std::move(pts);
  } else {
    j["waypoints"] = nullptr;
  }
  return j;
}

}  // namespace meproute
