#include "meproute/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace meproute {

namespace {

struct Mapper {
  double min_x = 0, min_y = 0, scale = 1, height = 0;
  double x(double v) const { return (v - min_x) * scale + 20.0; }
  double y(double v) const { return height - ((v - min_y) * scale + 20.0); }
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};

}  // namespace

std::string render_svg(const Solution& solution, const ProblemInstance& instance,
                       const std::string& comment) {
  double min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
  auto grow = [&](Point p, double pad) {
    min_x = std::min(min_x, p.x - pad);
    max_x = std::max(max_x, p.x + pad);
    min_y = std::min(min_y, p.y - pad);
    max_y = std::max(max_y, p.y + pad);
  };
  for (const Node& node : instance.nodes) grow(node.position, node.radius);
  if (instance.depot) grow(instance.depot->position, 0.0);
  if (solution.waypoints) {
    for (Point p : *solution.waypoints) grow(p, 0.0);
  }
  if (!(max_x > min_x)) max_x = min_x + 1.0;
  if (!(max_y > min_y)) max_y = min_y + 1.0;

  Mapper map;
  map.min_x = min_x;
  map.min_y = min_y;
  map.scale = 760.0 / std::max(max_x - min_x, max_y - min_y);
  map.height = (max_y - min_y) * map.scale + 40.0;
  const double width = (max_x - min_x) * map.scale + 40.0;

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(width) +
         "\" height=\"" + num(map.height) + "\" viewBox=\"0 0 " + num(width) + " " +
         num(map.height) + "\">\n";

  // cetsp radii
  for (const Node& node : instance.nodes) {
    if (node.radius <= 0.0) continue;
    svg += "<circle cx=\"" + num(map.x(node.position.x)) + "\" cy=\"" +
           num(map.y(node.position.y)) + "\" r=\"" + num(node.radius * map.scale) +
           "\" fill=\"none\" stroke=\"#9edae5\" stroke-width=\"1\"/>\n";
  }

  auto polyline = [&](const std::vector<Point>& pts, const char* color) {
    if (pts.size() < 2) return;
    svg += "<polyline fill=\"none\" stroke=\"";
    svg += color;
    svg += "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) svg += " ";
      svg += num(map.x(pts[i].x)) + "," + num(map.y(pts[i].y));
    }
    svg += "\"/>\n";
  };
  auto dashed = [&](Point a, Point b) {
    svg += "<line stroke=\"#555555\" stroke-width=\"1\" stroke-dasharray=\"6,4\" x1=\"" +
           num(map.x(a.x)) + "\" y1=\"" + num(map.y(a.y)) + "\" x2=\"" + num(map.x(b.x)) +
           "\" y2=\"" + num(map.y(b.y)) + "\"/>\n";
  };
  auto node_point = [&](int id) { return instance.nodes[id - 1].position; };

  if (solution.variant == Variant::ReturningCETSP && solution.waypoints) {
    std::vector<Point> cycle = *solution.waypoints;
    if (cycle.size() > 1) cycle.push_back(cycle.front());
    polyline(cycle, kPalette[0]);
  } else {
    const bool closed = solution.variant == Variant::BasicReturningTSP ||
                        solution.variant == Variant::ReturningMTSP;
    const bool depot_ends = solution.variant == Variant::SingleDepotReturningMTSP;
    int color = 0;
    for (const auto& tour : solution.tours) {
      std::vector<Point> pts;
      if (depot_ends) pts.push_back(instance.depot->position);
      for (int id : tour) pts.push_back(node_point(id));
      if (depot_ends) pts.push_back(instance.depot->position);
      if (closed && pts.size() > 1) pts.push_back(pts.front());
      polyline(pts, kPalette[color++ % 6]);
    }

    // removed chain links
    const auto& tours = solution.tours;
    const std::size_t m = tours.size();
    if (m > 1) {
      const std::size_t cuts = solution.variant == Variant::ReturningMTSP ? m : m - 1;
      for (std::size_t t = 0; t < cuts; ++t) {
        const auto& from = tours[t];
        const auto& to = tours[(t + 1) % m];
        if (from.empty() || to.empty()) continue;
        dashed(node_point(from.back()), node_point(to.front()));
      }
    }
  }

  for (const Node& node : instance.nodes) {
    svg += "<rect x=\"" + num(map.x(node.position.x) - 2.5) + "\" y=\"" +
           num(map.y(node.position.y) - 2.5) + "\" width=\"5\" height=\"5\" fill=\"#333333\"/>\n";
  }
  if (instance.depot) {
    const double cx = map.x(instance.depot->position.x);
    const double cy = map.y(instance.depot->position.y);
    svg += "<polygon fill=\"#d62728\" points=\"" + num(cx) + "," + num(cy - 6) + " " +
           num(cx + 6) + "," + num(cy) + " " + num(cx) + "," + num(cy + 6) + " " + num(cx - 6) +
           "," + num(cy) + "\"/>\n";
  }
  if (solution.waypoints) {
    for (Point p : *solution.waypoints) {
      const double cx = map.x(p.x), cy = map.y(p.y);
      svg += "<path stroke=\"#000000\" stroke-width=\"1\" d=\"M" + num(cx - 3) + " " +
             num(cy - 3) + " L" + num(cx + 3) + " " + num(cy + 3) + " M" + num(cx - 3) + " " +
             num(cy + 3) + " L" + num(cx + 3) + " " + num(cy - 3) + "\"/>\n";
    }
  }

  if (!comment.empty()) {
    std::string safe = comment;
    std::size_t pos = 0;
    while ((pos = safe.find("--", pos)) != std::string::npos) safe.replace(pos, 2, "- -");
    svg += "<!-- " + safe + " -->\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace meproute
