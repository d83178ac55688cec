#include <catch2/catch_amalgamated.hpp>

#include "graphonlab/recipe.hpp"

using namespace graphonlab;

TEST_CASE("digit positions partition the input stream") {
  // finite lanes: round robin
  CHECK(digit_position(2, 1, 1) == 1);
  CHECK(digit_position(2, 2, 1) == 2);
  CHECK(digit_position(2, 1, 2) == 3);
  CHECK(digit_position(3, 3, 4) == 12);
  // infinite lanes: diagonal enumeration of (coordinate, digit) pairs
  CHECK(digit_position(infinite_lanes, 1, 1) == 1);
  CHECK(digit_position(infinite_lanes, 1, 2) == 2);
  CHECK(digit_position(infinite_lanes, 2, 1) == 3);
  CHECK(digit_position(infinite_lanes, 1, 3) == 4);
  CHECK(digit_position(infinite_lanes, 2, 2) == 5);
  CHECK(digit_position(infinite_lanes, 3, 1) == 6);
}

TEST_CASE("apply on hand-expanded binary inputs") {
  // r_1 is the identity
  const auto r1 = Recipe::apply(1, UnitCoord::from_double(0.3125));
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].value() == 0.3125);

  // 0.75 = 0.11_2 splits alternately into (0.1, 0.1)
  const auto r2 = Recipe::apply(2, UnitCoord::from_double(0.75));
  REQUIRE(r2.size() == 2);
  CHECK(r2[0].value() == 0.5);
  CHECK(r2[1].value() == 0.5);

  // 0.625 = 0.101_2: lane one takes digits 1,1 -> 0.11_2, lane two takes 0
  const auto r3 = Recipe::apply(2, UnitCoord::from_double(0.625));
  CHECK(r3[0].value() == 0.75);
  CHECK(r3[1].value() == 0.0);
}

TEST_CASE("invert undoes apply") {
  CHECK(Recipe::invert(2, {UnitCoord::from_double(0.5), UnitCoord::from_double(0.5)})
            .value() == 0.75);
  CHECK(Recipe::invert(1, {UnitCoord::from_double(0.3125)}).value() == 0.3125);
  CHECK(Recipe::invert(2, {UnitCoord::from_double(0.75), UnitCoord(0)}).value() == 0.625);

  CounterRng rng(99);
  for (int n = 1; n <= 5; ++n) {
    for (int i = 0; i < 2000; ++i) {
      const UnitCoord x = rng.coord(static_cast<std::uint64_t>(n),
                                    static_cast<std::uint64_t>(i));
      CHECK(Recipe::invert(n, Recipe::apply(n, x)).numerator() == x.numerator());
    }
  }
}

TEST_CASE("apply inverts invert on the supported lattice") {
  CounterRng rng(1234);
  const int n = 3;
  for (int i = 0; i < 2000; ++i) {
    std::vector<UnitCoord> v;
    for (int c = 1; c <= n; ++c) {
      const int budget = digit_budget(n, c);
      const std::uint64_t mask = ~((UnitCoord::one >> budget) - 1) & (UnitCoord::one - 1);
      v.push_back(UnitCoord(rng.raw(static_cast<std::uint64_t>(c),
                                    static_cast<std::uint64_t>(i)) >> 11 & mask));
    }
    const UnitCoord x = Recipe::invert(n, v);
    const auto round = Recipe::apply(n, x);
    for (int c = 0; c < n; ++c)
      CHECK(round[static_cast<std::size_t>(c)].numerator() ==
            v[static_cast<std::size_t>(c)].numerator());
  }
}

TEST_CASE("invert rejects coordinates beyond the digit budget") {
  // lane 1 of r_2 holds 27 digits of a 53-bit input; digit 28 has nowhere to go
  const UnitCoord overfull(UnitCoord::one >> 28 | UnitCoord::one >> 1);
  CHECK_THROWS_AS(Recipe::invert(2, {overfull, UnitCoord(0)}), precision_error);
}

TEST_CASE("product measure holds exactly on a 16-bit lattice") {
  for (int n : {1, 2, 3}) {
    CHECK(recipe_product_measure_exhaustive(n, 16));
  }
}

TEST_CASE("interleaving is injective on small lattices") {
  for (int n : {1, 2, 3, 4, 5}) CHECK(recipe_injective_exhaustive(n, 16));
}

TEST_CASE("Monte Carlo product measure matches threshold products") {
  // finite lanes
  {
    const auto est = Recipe::verify_product_measure(
        2, {UnitCoord::from_double(0.5), UnitCoord::from_double(0.5)}, 1u << 20, 42);
    CHECK(std::abs(est.value - 0.25) <= 3.0 * est.std_error + 1e-12);
  }
  // k = 1 with full-measure threshold is exact
  {
    const auto est =
        Recipe::verify_product_measure(3, {UnitCoord(UnitCoord::one)}, 1u << 16, 7);
    CHECK(est.value == 1.0);
  }
  // infinite lanes, two-coordinate prefix
  {
    const auto est = Recipe::verify_product_measure(
        infinite_lanes, {UnitCoord::from_double(0.5), UnitCoord::from_double(0.25)},
        1u << 20, 43);
    CHECK(std::abs(est.value - 0.125) <= 3.0 * est.std_error + 1e-12);
  }
}

TEST_CASE("extended digits do not disturb in-budget coordinates") {
  CounterRng rng(5);
  for (int i = 0; i < 500; ++i) {
    const UnitCoord x = rng.coord(0, static_cast<std::uint64_t>(i));
    for (int c = 1; c <= 3; ++c) {
      const int budget = digit_budget(3, c);
      const UnitCoord plain = Recipe::coordinate(3, x, c, budget, false);
      const UnitCoord extended = Recipe::coordinate(3, x, c, budget, true);
      CHECK(plain.numerator() == extended.numerator());
    }
  }
}
