#include "meproute/tsplib.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <istream>
#include <sstream>

#include "meproute/errors.hpp"

namespace meproute {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

}  // namespace

ProblemInstance parse_tsplib(std::istream& in, TsplibHeader* header_out) {
  TsplibHeader header;
  bool have_dimension = false;
  bool in_coords = false;
  ProblemInstance instance;

  std::string line;
  while (std::getline(in, line)) {
    const std::string text = trim(line);
    if (text.empty()) continue;

    if (!in_coords) {
      if (text == "EOF") break;
      if (text == "NODE_COORD_SECTION") {
        in_coords = true;
        continue;
      }
      const auto colon = text.find(':');
      std::string key = trim(colon == std::string::npos ? text : text.substr(0, colon));
      std::string value = colon == std::string::npos ? "" : trim(text.substr(colon + 1));
      if (key == "NAME") {
        header.name = value;
      } else if (key == "DIMENSION") {
        header.dimension = std::stoi(value);
        have_dimension = true;
      } else if (key == "EDGE_WEIGHT_TYPE") {
        header.edge_weight_type = value;
        if (value != "EUC_2D") throw Error("unsupported edge weight type: " + value);
      }
      // every other key (TYPE, COMMENT, ...) is ignored
      continue;
    }

    if (text == "EOF") break;
    std::istringstream fields(text);
    Node node;
    if (!(fields >> node.id >> node.position.x >> node.position.y)) {
      throw Error("malformed node line: " + text);
    }
    instance.nodes.push_back(node);
  }

  if (!have_dimension) throw Error("missing dimension");
  if (header.edge_weight_type.empty()) throw Error("unsupported edge weight type: (none)");
  if (static_cast<int>(instance.nodes.size()) != header.dimension) {
    throw Error("dimension mismatch");
  }

  std::sort(instance.nodes.begin(), instance.nodes.end(),
            [](const Node& a, const Node& b) { return a.id < b.id; });
  instance.variant = Variant::BasicReturningTSP;
  instance.salesmen = 1;
  instance.validate();
  if (header_out) *header_out = header;
  return instance;
}

ProblemInstance parse_tsplib(const std::string& text, TsplibHeader* header_out) {
  std::istringstream in(text);
  return parse_tsplib(in, header_out);
}

std::string write_tsplib(const ProblemInstance& instance, const std::string& name,
                         const std::string& comment) {
  std::string out;
  out += "NAME : " + name + "\n";
  out += "TYPE : TSP\n";
  if (!comment.empty()) out += "COMMENT : " + comment + "\n";
  out += "DIMENSION : " + std::to_string(instance.size()) + "\n";
  out += "EDGE_WEIGHT_TYPE : EUC_2D\n";
  out += "NODE_COORD_SECTION\n";
  char line[128];
  for (const Node& node : instance.nodes) {
    std::snprintf(line, sizeof(line), "%d %.17g %.17g\n", node.id, node.position.x,
                  node.position.y);
    out += line;
  }
  out += "EOF\n";
  return out;
}

}  // namespace meproute
