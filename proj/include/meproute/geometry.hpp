#pragma once

#include <cmath>
#include <span>

namespace meproute {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
inline Point operator/(Point p, double s) { return {p.x / s, p.y / s}; }
inline bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
inline bool operator!=(Point a, Point b) { return !(a == b); }

inline double squared_distance(Point a, Point b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double euclidean_distance(Point a, Point b) { return std::sqrt(squared_distance(a, b)); }

/// Squared slack distance to the disk of radius `rho` around `x`: zero on the
/// closed disk, (dist - rho)^2 outside. rho == 0 falls through to
/// squared_distance so point-TSP code paths stay bit-identical.
inline double close_enough_distance(Point x, Point y, double rho) {
  if (rho == 0.0) return squared_distance(x, y);
  const double dist = euclidean_distance(x, y);
  if (dist <= rho) return 0.0;
  const double slack = dist - rho;
  return slack * slack;
}

/// Uncorrected variant: the quadratic penalty applies inside the disk too.
inline double close_enough_distance_raw(Point x, Point y, double rho) {
  if (rho == 0.0) return squared_distance(x, y);
  const double slack = euclidean_distance(x, y) - rho;
  return slack * slack;
}

enum class Metric { Euclidean, Squared };

inline double pair_distance(Metric metric, Point a, Point b) {
  return metric == Metric::Euclidean ? euclidean_distance(a, b) : squared_distance(a, b);
}

/// Sum of consecutive-pair distances, plus the closing leg if `closed`.
/// A single point has length zero either way.
inline double tour_length(std::span<const Point> points, bool closed, Metric metric) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    total += pair_distance(metric, points[i], points[i + 1]);
  }
  if (closed && points.size() > 1) {
    total += pair_distance(metric, points.back(), points.front());
  }
  return total;
}

}  // namespace meproute
