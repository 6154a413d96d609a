#include <doctest.h>

#include <random>
#include <vector>

#include "meproute/errors.hpp"
#include "meproute/geometry.hpp"
#include "meproute/instance.hpp"

using namespace meproute;

TEST_CASE("squared distance basics") {
  CHECK(squared_distance({0, 0}, {3, 4}) == 25.0);
  CHECK(squared_distance({1, 1}, {1, 1}) == 0.0);
  CHECK(squared_distance({-1, 0}, {1, 0}) == 4.0);
}

TEST_CASE("squared distance is symmetric and zero only at coincidence") {
  std::mt19937_64 rng(7);
  auto draw = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 10.0 - 5.0; };
  for (int trial = 0; trial < 200; ++trial) {
    const Point a{draw(), draw()}, b{draw(), draw()};
    CHECK(squared_distance(a, b) == squared_distance(b, a));
    if (a != b) CHECK(squared_distance(a, b) > 0.0);
  }
}

TEST_CASE("close enough distance") {
  CHECK(close_enough_distance({0, 0}, {5, 0}, 2.0) == 9.0);
  CHECK(close_enough_distance({0, 0}, {1, 0}, 2.0) == 0.0);
  CHECK(close_enough_distance({0, 0}, {2, 0}, 2.0) == 0.0);  // boundary
}

TEST_CASE("close enough distance equals squared distance at rho zero, bit for bit") {
  std::mt19937_64 rng(11);
  auto draw = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 7.0 - 3.0; };
  for (int trial = 0; trial < 200; ++trial) {
    const Point a{draw(), draw()}, b{draw(), draw()};
    CHECK(close_enough_distance(a, b, 0.0) == squared_distance(a, b));
    CHECK(close_enough_distance_raw(a, b, 0.0) == squared_distance(a, b));
  }
}

TEST_CASE("close enough distance is continuous at the disk boundary") {
  const Point x{1.0, -2.0};
  const double rho = 1.5;
  for (double eps : {1e-6, 1e-9}) {
    const Point outside{1.0 + rho + eps, -2.0};
    CHECK(close_enough_distance(x, outside, rho) == doctest::Approx(0.0).epsilon(1e-10));
  }
}

TEST_CASE("tour length examples") {
  const std::vector<Point> square{{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  CHECK(tour_length(square, true, Metric::Euclidean) == doctest::Approx(4.0));
  const std::vector<Point> pair{{0, 0}, {3, 4}};
  CHECK(tour_length(pair, false, Metric::Euclidean) == doctest::Approx(5.0));
  CHECK(tour_length(pair, true, Metric::Squared) == doctest::Approx(50.0));
  const std::vector<Point> single{{2, 2}};
  CHECK(tour_length(single, true, Metric::Euclidean) == 0.0);
  CHECK(tour_length(single, false, Metric::Euclidean) == 0.0);
}

TEST_CASE("tour length is invariant under rotation and reversal of a closed tour") {
  std::mt19937_64 rng(3);
  auto draw = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<Point> tour;
  for (int i = 0; i < 9; ++i) tour.push_back({draw(), draw()});
  const double base = tour_length(tour, true, Metric::Euclidean);
  for (int shift = 1; shift < 9; ++shift) {
    std::vector<Point> rotated(tour.begin() + shift, tour.end());
    rotated.insert(rotated.end(), tour.begin(), tour.begin() + shift);
    CHECK(tour_length(rotated, true, Metric::Euclidean) == doctest::Approx(base).epsilon(1e-12));
  }
  std::vector<Point> reversed(tour.rbegin(), tour.rend());
  CHECK(tour_length(reversed, true, Metric::Euclidean) == doctest::Approx(base).epsilon(1e-12));
  std::vector<Point> open_reversed(tour.rbegin(), tour.rend());
  CHECK(tour_length(open_reversed, false, Metric::Euclidean) ==
        doctest::Approx(tour_length(tour, false, Metric::Euclidean)).epsilon(1e-12));
}

TEST_CASE("instance validation") {
  ProblemInstance instance;
  instance.nodes = {{1, {0, 0}, 0.0}, {2, {1, 0}, 0.0}};
  instance.variant = Variant::BasicReturningTSP;
  instance.salesmen = 1;
  CHECK_NOTHROW(instance.validate());

  SUBCASE("duplicate ids") {
    instance.nodes[1].id = 1;
    CHECK_THROWS_AS(instance.validate(), Error);
  }
  SUBCASE("radii require cetsp") {
    instance.nodes[0].radius = 0.5;
    CHECK_THROWS_AS(instance.validate(), Error);
  }
  SUBCASE("depot only for mtsp-depot") {
    instance.depot = Depot{{0.5, 0.5}};
    CHECK_THROWS_AS(instance.validate(), Error);
  }
  SUBCASE("too many salesmen") {
    instance.variant = Variant::NonReturningMTSP;
    instance.salesmen = 3;
    CHECK_THROWS_WITH_AS(instance.validate(), "too many salesmen", Error);
  }
  SUBCASE("eta bounds") {
    instance.variant = Variant::SingleDepotReturningMTSP;
    instance.depot = Depot{{0.5, 0.5}};
    instance.salesmen = 2;
    instance.balance_eta = 1.0;
    CHECK_THROWS_WITH_AS(instance.validate(), "balance weight too large", Error);
    instance.balance_eta = 0.3;
    CHECK_NOTHROW(instance.validate());
  }
}
