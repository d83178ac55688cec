#include <catch2/catch_amalgamated.hpp>

#include "graphonlab/hypercube.hpp"

using namespace graphonlab;

namespace {
UnitCoord U(double v) { return UnitCoord::from_double(v); }

const HypercubeGraphon& hc() {
  static HypercubeGraphon g;
  return g;
}

// Vertex of part p at scaled position t, as a global coordinate.
UnitCoord at(Part p, double t) { return hc().unscaled(p, U(t)); }
}  // namespace

TEST_CASE("kernel spot checks from the construction") {
  const auto& g = hc();
  // A0 x A1 is complete towards the first level of A1
  CHECK(g.pair_kernel(Part::A0, Part::A1, U(0.3), U(0.2)) == 1.0);
  CHECK(g.pair_kernel(Part::A0, Part::A1, U(0.3), U(0.7)) == 0.0);
  // F row constants
  CHECK(g.pair_kernel(Part::F, Part::C, U(0.9), U(0.1)) == 0.9);
  CHECK(g.pair_kernel(Part::F, Part::A1, U(0.2), U(0.8)) == 0.1);
  // zero blocks evaluate to zero everywhere
  CHECK(g.pair_kernel(Part::A2, Part::D, U(0.4), U(0.6)) == 0.0);
  // B1 x B3 stairs: level of the B1 side must dominate
  CHECK(g.pair_kernel(Part::B1, Part::B3, U(0.6), U(0.2)) == 1.0);  // levels 2 >= 1
  CHECK(g.pair_kernel(Part::B1, Part::B3, U(0.2), U(0.6)) == 0.0);  // levels 1 < 2
  // B1 x B2 needs the level condition before the coordinate test
  CHECK(g.pair_kernel(Part::B1, Part::B2, U(0.6), U(0.9)) == 0.0);  // levels 2 < 3
  // B1 x B1 is reflexive
  CHECK(g.pair_kernel(Part::B1, Part::B1, U(0.37), U(0.37)) == 1.0);
}

TEST_CASE("global evaluation is symmetric") {
  const auto g = hc().as_graphon();
  CounterRng rng(2024);
  for (int i = 0; i < 100000; ++i) {
    const UnitCoord x = rng.coord(0, static_cast<std::uint64_t>(i));
    const UnitCoord y = rng.coord(1, static_cast<std::uint64_t>(i));
    const double v = g(x, y);
    REQUIRE(v >= 0.0);
    REQUIRE(v <= 1.0);
    REQUIRE(v == g(y, x));
  }
}

TEST_CASE("pair kernels satisfy the transpose identity") {
  const auto& g = hc();
  CounterRng rng(55);
  for (int a = 0; a < hypercube_part_count; ++a) {
    for (int b = 0; b < hypercube_part_count; ++b) {
      for (int i = 0; i < 64; ++i) {
        const UnitCoord s = rng.coord(static_cast<std::uint64_t>(a * 14 + b), 2 * i);
        const UnitCoord t = rng.coord(static_cast<std::uint64_t>(a * 14 + b), 2 * i + 1);
        REQUIRE(g.pair_kernel(static_cast<Part>(a), static_cast<Part>(b), s, t) ==
                g.pair_kernel(static_cast<Part>(b), static_cast<Part>(a), t, s));
      }
    }
  }
}

TEST_CASE("every explicit zero pair is identically zero on samples") {
  const auto& g = hc();
  CounterRng rng(99);
  for (const auto& [a, b] : HypercubeGraphon::zero_pair_list()) {
    double max_abs = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const UnitCoord s = rng.coord(1, static_cast<std::uint64_t>(i));
      const UnitCoord t = rng.coord(2, static_cast<std::uint64_t>(i));
      max_abs = std::max(max_abs, std::abs(g.pair_kernel(a, b, s, t)));
    }
    REQUIRE(max_abs == 0.0);
  }
}

TEST_CASE("degree table is reproduced by the analytic profiles") {
  const auto& g = hc();
  static constexpr Part constant_parts[] = {Part::A0, Part::A1, Part::A2, Part::A3,
                                            Part::B1, Part::B2, Part::B3, Part::B4,
                                            Part::B5, Part::C,  Part::D,  Part::F};
  CounterRng rng(123);
  for (Part p : constant_parts) {
    for (int i = 0; i < 10; ++i) {
      const UnitCoord t = rng.coord(static_cast<std::uint64_t>(p), i);
      const double d = g.degree(p, t);
      REQUIRE(std::abs(d - HypercubeGraphon::table_degree(p)) < 1e-6);
    }
  }
}

TEST_CASE("analytic relative degrees agree with Monte Carlo kernel integrals") {
  // the strongest internal consistency check: integrate the actual kernels
  // against each partner part and compare with the closed forms
  const auto& g = hc();
  CounterRng rng(4711);
  static constexpr Part sources[] = {Part::A1, Part::A3, Part::B1, Part::B2,
                                     Part::B4, Part::C,  Part::D};
  const std::uint64_t N = 200000;
  for (Part X : sources) {
    for (int probe = 0; probe < 3; ++probe) {
      const UnitCoord t = rng.coord(static_cast<std::uint64_t>(X) * 7 + 1,
                                    static_cast<std::uint64_t>(probe));
      for (int yi = 0; yi < hypercube_part_count; ++yi) {
        const Part Y = static_cast<Part>(yi);
        if (Y == Part::E1 || Y == Part::E2) continue;  // rows are checked elsewhere
        McMoments m = mc_moments(N, [&](std::uint64_t i) {
          const UnitCoord u =
              CounterRng(900 + static_cast<std::uint64_t>(X) * 31 +
                         static_cast<std::uint64_t>(Y))
                  .coord(static_cast<std::uint64_t>(probe), i);
          return g.pair_kernel(X, Y, t, u);
        });
        const double analytic = g.relative_degree(X, t, Y);
        const double err = std::abs(m.mean() - analytic);
        REQUIRE(err <= 4.0 * m.std_error() + 1e-6);
      }
    }
  }
}

TEST_CASE("E row aggregates are consistent with the row kernels") {
  const auto& g = hc();
  CounterRng rng(31);
  for (int i = 0; i < 50; ++i) {
    const UnitCoord t = rng.coord(0, static_cast<std::uint64_t>(i));
    // kernel value of the E1 row against a B2 vertex equals the profile form
    const double row = g.pair_kernel(Part::E1, Part::B2, U(0.5), t);
    CHECK(row == Catch::Approx(1.0 - g.sum_partner_degrees(Part::B2, t) / 11.0)
                     .margin(1e-12));
    // and is independent of the E1-side coordinate
    CHECK(row == g.pair_kernel(Part::E1, Part::B2, rng.coord(1, i), t));
  }
}

TEST_CASE("exact e1 and e2 match high-budget Monte Carlo") {
  const auto& g = hc();
  const auto [e1, e2] = g.estimate_e1_e2(1u << 20, 777);
  CHECK(std::abs(e1.value - HypercubeGraphon::exact_e1()) <= 4.0 * e1.std_error + 1e-5);
  CHECK(std::abs(e2.value - HypercubeGraphon::exact_e2()) <= 4.0 * e2.std_error + 1e-5);
  // the construction's bounds
  CHECK(HypercubeGraphon::exact_e1() > 5.0 / 27.0);
  CHECK(HypercubeGraphon::exact_e1() <= 10.0 / 27.0);
  CHECK(HypercubeGraphon::exact_e2() > 0.0);
  CHECK(HypercubeGraphon::exact_e2() <= 1.0 / 27.0);
}

TEST_CASE("edge density from the pair table matches the degree table") {
  // two independent routes: sum of pair densities vs measure-weighted degrees
  const auto& g = hc();
  double by_degrees = 0.0;
  for (int i = 0; i < hypercube_part_count; ++i) {
    const Part p = static_cast<Part>(i);
    by_degrees += HypercubeGraphon::part_measure(p).value() *
                  HypercubeGraphon::table_degree(p);
  }
  CHECK(g.edge_density() == Catch::Approx(by_degrees).margin(1e-12));
  CHECK(g.edge_density() == Catch::Approx(2993.0 / 10206.0).margin(1e-12));
}

TEST_CASE("level membership and level measures") {
  const auto& g = hc();
  CHECK(g.level_in_part(Part::B1, U(0.3)) == 1);
  CHECK(g.level_in_part(Part::A3, U(0.6)) == 2);
  // measure of level 2 within a 1/27 part: 1/4 of it
  CHECK(part_level_measure(2) == Catch::Approx(1.0 / 108.0).margin(1e-15));
  CHECK_THROWS_AS(g.level_in_part(Part::D, U(0.3)), error);
}

TEST_CASE("product relations hold pointwise for B1 vertices") {
  const auto& g = hc();
  CounterRng rng(5150);
  for (int trial = 0; trial < 100; ++trial) {
    const int level = 1 + static_cast<int>(rng.raw(0, trial) % 5);
    const std::uint64_t mask = ~((UnitCoord::one >> (53 - level)) - 1) &
                               (UnitCoord::one - 1);
    const UnitCoord rel(rng.raw(1, trial) >> 11 & mask);
    const UnitCoord t = reconstruct(LevelPos{level, rel});
    double prod = 1.0, prod1m = 1.0;
    for (int i = 1; i <= level; ++i) {
      // per-level relative degrees read off the kernels
      const double c = g.b1_coordinate(level, rel, i).value();
      prod *= c;
      prod1m *= 1.0 - c;
    }
    // B4 and B5 totals integrate those same products level by level
    double b4 = 0.0, b5 = 0.0, pc = 1.0, qc = 1.0;
    for (int m = 1; m <= level; ++m) {
      const double c = g.b1_coordinate(level, rel, m).value();
      pc *= c;
      qc *= 1.0 - c;
      b4 += std::ldexp(1.0, -m) * pc;
      b5 += std::ldexp(1.0, -m) * qc;
    }
    REQUIRE(std::abs(g.relative_degree(Part::B1, t, Part::B4) - b4) < 1e-9);
    REQUIRE(std::abs(g.relative_degree(Part::B1, t, Part::B5) - b5) < 1e-9);
    REQUIRE(std::abs(g.relative_degree(Part::B1, t, Part::D) - prod1m) < 1e-9);
  }
}

TEST_CASE("mutations corrupt exactly the targeted kernel") {
  HypercubeOptions opt;
  opt.mutation = Mutation::f_row_density;
  const HypercubeGraphon bad(opt);
  CHECK(bad.pair_kernel(Part::F, Part::C, U(0.1), U(0.2)) == 0.8);
  CHECK(bad.pair_kernel(Part::F, Part::B5, U(0.1), U(0.2)) == 0.8);
  CHECK(bad.pair_density(Part::F, Part::C) == 0.8);

  HypercubeOptions opt2;
  opt2.mutation = Mutation::zero_block_leak;
  const HypercubeGraphon bad2(opt2);
  CHECK(bad2.pair_kernel(Part::A2, Part::D, U(0.4), U(0.6)) == 0.05);
}
