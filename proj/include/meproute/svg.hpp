#pragma once

#include <string>

#include "meproute/instance.hpp"

namespace meproute {

/// SVG 1.1 figure: one polyline per tour (waypoint cycle for cetsp), dashed
/// segments for removed chain links, disks for cetsp radii, square node
/// markers and a diamond depot marker. `comment` is embedded verbatim in an
/// XML comment when nonempty.
std::string render_svg(const Solution& solution, const ProblemInstance& instance,
                       const std::string& comment = "");

}  // namespace meproute
