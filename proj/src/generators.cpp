#include "meproute/generators.hpp"

#include <cmath>
#include <random>

#include "meproute/errors.hpp"

namespace meproute {

namespace {

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace

ProblemInstance generate_rings(int per_ring, double inner_radius, double outer_radius,
                               std::uint64_t seed) {
  if (per_ring < 3) throw Error("per_ring must be at least 3");
  std::mt19937_64 rng(seed);
  ProblemInstance instance;
  instance.variant = Variant::BasicReturningTSP;
  instance.salesmen = 1;
  int id = 1;
  for (const double radius : {inner_radius, outer_radius}) {
    const double offset = 2.0 * M_PI * unit_draw(rng);
    for (int k = 0; k < per_ring; ++k) {
      const double angle = offset + 2.0 * M_PI * k / per_ring;
      instance.nodes.push_back(
          {id++, {radius * std::cos(angle), radius * std::sin(angle)}, 0.0});
    }
  }
  return instance;
}

ProblemInstance generate_uniform(int n, Point lo, Point hi, double radius, std::uint64_t seed) {
  if (n < 1) throw Error("need at least one node");
  std::mt19937_64 rng(seed);
  ProblemInstance instance;
  instance.variant = radius > 0.0 ? Variant::ReturningCETSP : Variant::BasicReturningTSP;
  instance.salesmen = 1;
  for (int i = 0; i < n; ++i) {
    const double x = lo.x + (hi.x - lo.x) * unit_draw(rng);
    const double y = lo.y + (hi.y - lo.y) * unit_draw(rng);
    instance.nodes.push_back({i + 1, {x, y}, radius});
  }
  return instance;
}

ProblemInstance paper59_depot() {
  ProblemInstance instance = generate_uniform(59, {0.0, 0.0}, {10.0, 10.0}, 0.0, 59);
  instance.variant = Variant::SingleDepotReturningMTSP;
  instance.salesmen = 2;
  instance.depot = Depot{{5.0, 5.0}};
  return instance;
}

}  // namespace meproute
