#pragma once

#include <string>

#include <json.hpp>

#include "meproute/instance.hpp"

namespace meproute {

nlohmann::json instance_to_json(const ProblemInstance& instance);
ProblemInstance instance_from_json(const nlohmann::json& j);
ProblemInstance load_instance_json(const std::string& text);

nlohmann::json solution_to_json(const Solution& solution);

}  // namespace meproute
