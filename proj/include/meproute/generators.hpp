#pragma once

#include <cstdint>

#include "meproute/instance.hpp"

namespace meproute {

/// Two concentric rings of `per_ring` equally spaced nodes each, centered at
/// the origin, with seeded angular offsets.
ProblemInstance generate_rings(int per_ring, double inner_radius, double outer_radius,
                               std::uint64_t seed);

/// n nodes i.i.d. uniform in the box [lo, hi], all with the given radius.
ProblemInstance generate_uniform(int n, Point lo, Point hi, double radius, std::uint64_t seed);

/// Frozen 59-node single-depot preset used by the balance experiments:
/// uniform nodes in [0,10]^2, depot at the center, two salesmen.
ProblemInstance paper59_depot();

}  // namespace meproute
