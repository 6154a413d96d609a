#pragma once

#include <iosfwd>
#include <string>

#include "meproute/instance.hpp"

namespace meproute {

struct TsplibHeader {
  std::string name;
  int dimension = 0;
  std::string edge_weight_type;
};

/// EUC_2D node-coordinate subset of the TSPLIB format. Unknown header keys
/// are ignored; the result is a basic returning instance with zero radii.
ProblemInstance parse_tsplib(std::istream& in, TsplibHeader* header = nullptr);
ProblemInstance parse_tsplib(const std::string& text, TsplibHeader* header = nullptr);

std::string write_tsplib(const ProblemInstance& instance, const std::string& name,
                         const std::string& comment = "");

}  // namespace meproute
