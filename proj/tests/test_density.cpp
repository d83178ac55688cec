#include <catch2/catch_amalgamated.hpp>

#include "graphonlab/density.hpp"
#include "graphonlab/hypercube.hpp"

using namespace graphonlab;

namespace {
UnitCoord U(double v) { return UnitCoord::from_double(v); }

GraphSpec cherry() {  // path on 3 vertices: edges 01, 12, nonedge 02
  return path_graph(3);
}

GraphSpec one_edge_plus_isolated() {
  GraphSpec g("K2+K1", 3);
  g.set_state(0, 1, EdgeState::edge);
  return g;
}

const Graphon& wboxplus() {
  static Graphon g = HypercubeGraphon().as_graphon();
  return g;
}
}  // namespace

TEST_CASE("automorphism counts by brute force") {
  CHECK(aut_count(complete_graph(3)) == 6);
  CHECK(aut_count(cherry()) == 2);
  CHECK(aut_count(empty_graph(4)) == 24);
  CHECK(aut_count(cycle_graph(5)) == 10);

  GraphSpec rooted_edge("re", 2);
  rooted_edge.set_state(0, 1, EdgeState::edge);
  rooted_edge.set_roots({0});
  CHECK(aut_count(rooted_edge) == 1);

  GraphSpec free_pair("f", 2, EdgeState::free_pair);
  CHECK(aut_count(free_pair) == 2);

  GraphSpec too_big("big", 9);
  CHECK_THROWS_AS(aut_count(too_big), too_large_error);
}

TEST_CASE("densities on constant graphons are polynomial in p") {
  const Graphon w = constant_graphon(0.3);
  CHECK(density_quadrature(complete_graph(2), w).value == Catch::Approx(0.3).margin(1e-12));
  CHECK(density_quadrature(complete_graph(3), w).value ==
        Catch::Approx(0.027).margin(1e-12));
  const auto mc = density(complete_graph(3), w, 1u << 18, 5);
  CHECK(std::abs(mc.value - 0.027) <= 4.0 * mc.std_error + 1e-9);
}

TEST_CASE("checker edge density is one third") {
  const Graphon k = diagonal_checker();
  const auto quad = density_quadrature(complete_graph(2), k);
  CHECK(quad.std_error == 0.0);
  CHECK(std::abs(quad.value - 1.0 / 3.0) < 1e-9);
  const auto mc = density(complete_graph(2), k, 1u << 20, 9);
  CHECK(std::abs(mc.value - quad.value) <= 4.0 * mc.std_error);
}

TEST_CASE("half graphon densities") {
  const Graphon h = half_graphon();
  CHECK(density_quadrature(complete_graph(2), h).value == Catch::Approx(0.5).margin(1e-12));
  // triangle volume of the pairwise-sum polytope
  CHECK(density_quadrature(complete_graph(3), h).value ==
        Catch::Approx(0.25).margin(1e-12));
  // independent coarse-grid oracle for the closed form above
  GraphSpec k3 = complete_graph(3);
  detail::VertexPlan plan;
  const double grid = detail::integral_by_grid(k3, h, plan, 96);
  CHECK(std::abs(grid - 0.25) < 2e-2);
}

TEST_CASE("bipartite step graphon: edges but no triangles") {
  const Graphon b = step_graphon({{0.0, 1.0}, {1.0, 0.0}}, {0.5, 0.5});
  CHECK(density_quadrature(complete_graph(2), b).value == Catch::Approx(0.5).margin(1e-12));
  CHECK(density_quadrature(complete_graph(3), b).value == 0.0);
}

TEST_CASE("MC agrees with quadrature across the primitive vocabulary") {
  std::vector<Graphon> zoo;
  zoo.push_back(constant_graphon(0.42));
  zoo.push_back(half_graphon());
  zoo.push_back(diagonal_checker());
  zoo.push_back(shifted_checker());
  zoo.push_back(step_graphon({{0.2, 0.8}, {0.8, 0.5}}, {0.25, 0.75}));

  std::vector<GraphSpec> graphs = {complete_graph(2), empty_graph(2), complete_graph(3),
                                   cherry(), one_edge_plus_isolated(), empty_graph(3)};
  for (const Graphon& w : zoo) {
    for (const GraphSpec& H : graphs) {
      const double quad = density_quadrature(H, w).value;
      for (std::uint64_t trial = 0; trial < 20; ++trial) {
        const auto mc = density(H, w, 1u << 16, 1000 + trial);
        REQUIRE(std::abs(mc.value - quad) <= 4.0 * mc.std_error + 2e-3);
      }
    }
  }
}

TEST_CASE("induced densities of a fixed order partition the sample space") {
  std::vector<GraphSpec> order3 = {complete_graph(3), cherry(), one_edge_plus_isolated(),
                                   empty_graph(3)};
  for (const Graphon& w :
       {diagonal_checker(), half_graphon(), constant_graphon(0.37)}) {
    double total_quad = 0.0;
    for (const GraphSpec& H : order3) total_quad += density_quadrature(H, w).value;
    CHECK(total_quad == Catch::Approx(1.0).margin(1e-9));

    double total = 0.0, var = 0.0;
    for (const GraphSpec& H : order3) {
      const auto est = density(H, w, 1u << 17, 77);
      total += est.value;
      var += est.std_error * est.std_error;
    }
    CHECK(std::abs(total - 1.0) <= 4.0 * std::sqrt(var) + 1e-6);
  }
}

TEST_CASE("free pair density is the sum of its resolutions") {
  GraphSpec free_h("free", 3);
  free_h.set_state(0, 1, EdgeState::edge);
  free_h.set_state(1, 2, EdgeState::free_pair);

  GraphSpec with_edge = free_h;
  with_edge.set_state(1, 2, EdgeState::edge);
  GraphSpec without = free_h;
  without.set_state(1, 2, EdgeState::nonedge);

  for (const Graphon& w : {half_graphon(), constant_graphon(0.5)}) {
    const double lhs = density_quadrature(free_h, w).value;
    const double rhs =
        density_quadrature(with_edge, w).value + density_quadrature(without, w).value;
    CHECK(lhs == Catch::Approx(rhs).margin(1e-12));

    const auto mc_free = density(free_h, w, 1u << 17, 3);
    CHECK(std::abs(mc_free.value - lhs) <= 4.0 * mc_free.std_error + 1e-6);
  }
}

TEST_CASE("rooted densities at fixed roots") {
  GraphSpec re("rooted-edge", 2);
  re.set_state(0, 1, EdgeState::edge);
  re.set_roots({0});

  // constant graphon: the conditional edge probability is p at any root
  const auto c = rooted_density(re, constant_graphon(0.3),
                                RootAssignment{{U(0.77)}, 1.0}, 1u << 16, 1);
  CHECK(std::abs(c.value - 0.3) <= 4.0 * c.std_error + 1e-9);

  // half graphon: the neighborhood of x has measure x
  for (double x : {0.2, 0.5, 0.9}) {
    const auto est = rooted_density(re, half_graphon(), RootAssignment{{U(x)}, 1.0},
                                    1u << 17, 2);
    CHECK(std::abs(est.value - x) <= 4.0 * est.std_error + 1e-6);
  }

  // two roots, one common neighbor, constant p: independence gives p^2
  GraphSpec vee("vee", 3);
  vee.set_state(0, 2, EdgeState::edge);
  vee.set_state(1, 2, EdgeState::edge);
  vee.set_roots({0, 1});
  const auto est2 = rooted_density(vee, constant_graphon(0.4),
                                   RootAssignment{{U(0.1), U(0.8)}, 1.0}, 1u << 17, 4);
  CHECK(std::abs(est2.value - 0.16) <= 4.0 * est2.std_error + 1e-9);
}

TEST_CASE("rooted density rejects incompatible roots") {
  GraphSpec re("rooted-pair-edge", 3);
  re.set_state(0, 1, EdgeState::edge);
  re.set_state(0, 2, EdgeState::edge);
  re.set_roots({0, 1});
  // the half graphon has W(0.1, 0.2) = 0, so these roots cannot induce an edge
  CHECK_THROWS_AS(rooted_density(re, half_graphon(),
                                 RootAssignment{{U(0.1), U(0.2)}, 0.0}, 1000, 1),
                  roots_error);
}

TEST_CASE("averaging rooted densities over sampled roots recovers the edge density") {
  GraphSpec re("rooted-edge", 2);
  re.set_state(0, 1, EdgeState::edge);
  re.set_roots({0});
  const Graphon h = half_graphon();
  double acc = 0.0;
  const int panel = 400;
  for (int i = 0; i < panel; ++i) {
    const RootAssignment roots = sample_roots(re, h, 11, static_cast<std::uint64_t>(i));
    acc += rooted_density(re, h, roots, 4096, 50 + static_cast<std::uint64_t>(i)).value;
  }
  // single-root measure is uniform, so the average is d(K2) = 1/2
  CHECK(std::abs(acc / panel - 0.5) < 0.02);
}

TEST_CASE("decorated densities on the hypercubical graphon") {
  const Graphon& g = wboxplus();

  GraphSpec fc("fc", 2);
  fc.set_state(0, 1, EdgeState::edge);
  fc.set_label(0, "F");
  fc.set_label(1, "C");
  const auto q = density_quadrature(fc, g);
  CHECK(q.std_error == 0.0);
  CHECK(q.value == Catch::Approx(0.9).margin(1e-12));
  const auto mc = decorated_density(fc, g, 1u << 16, 8);
  CHECK(std::abs(mc.value - 0.9) <= 4.0 * mc.std_error + 1e-9);

  GraphSpec a2d("a2d", 2);
  a2d.set_state(0, 1, EdgeState::edge);
  a2d.set_label(0, "A2");
  a2d.set_label(1, "D");
  CHECK(density_quadrature(a2d, g).value == 0.0);
  CHECK(decorated_density(a2d, g, 1u << 14, 9).value == 0.0);

  GraphSpec bad("bad", 2);
  bad.set_state(0, 1, EdgeState::edge);
  bad.set_label(0, "F");
  bad.set_label(1, "NOPE");
  CHECK_THROWS_AS(decorated_density(bad, g, 100, 1), layout_error);
}

TEST_CASE("decorated edge within a one-part constant graphon") {
  Graphon w = constant_graphon(0.35);
  w.layout = PartitionedLayout({{"X", {1, 1}, 0.35}});
  GraphSpec xx("xx", 2);
  xx.set_state(0, 1, EdgeState::edge);
  xx.set_label(0, "X");
  xx.set_label(1, "X");
  const auto est = decorated_density(xx, w, 1u << 15, 3);
  CHECK(std::abs(est.value - 0.35) <= 4.0 * est.std_error + 1e-9);
}

TEST_CASE("relative degrees through the partitioned interface") {
  const Graphon& g = wboxplus();
  const auto& layout = *g.layout;
  const HypercubeGraphon hc;

  const UnitCoord in_f = hc.unscaled(Part::F, U(0.5));
  CHECK(relative_degree(g, in_f, layout.index_of("B5")).value ==
        Catch::Approx(0.8).margin(1e-12));

  const UnitCoord in_a0 = hc.unscaled(Part::A0, U(0.3));
  CHECK(relative_degree(g, in_a0, "A1").value == Catch::Approx(0.5).margin(1e-12));

  const UnitCoord in_d = hc.unscaled(Part::D, U(0.9));
  CHECK(relative_degree(g, in_d, "E1").value == 0.0);

  CHECK_THROWS_AS(relative_degree(g, in_d, "QQ"), layout_error);
  CHECK_THROWS_AS(relative_degree(constant_graphon(0.1), in_d, 0), layout_error);
}

TEST_CASE("density rejects rooted input and layout mismatches") {
  GraphSpec re("re", 2);
  re.set_state(0, 1, EdgeState::edge);
  re.set_roots({0});
  CHECK_THROWS_AS(density(re, half_graphon(), 10, 1), error);

  GraphSpec dec("dec", 2);
  dec.set_state(0, 1, EdgeState::edge);
  dec.set_label(0, "X");
  dec.set_label(1, "X");
  CHECK_THROWS_AS(density(dec, half_graphon(), 10, 1), layout_error);
}

TEST_CASE("hypercubical edge density: MC vs the analytic table") {
  const Graphon& g = wboxplus();
  const auto quad = density_quadrature(complete_graph(2), g);
  CHECK(quad.value == Catch::Approx(2993.0 / 10206.0).margin(1e-12));
  const auto mc = density(complete_graph(2), g, 1u << 20, 21);
  CHECK(std::abs(mc.value - quad.value) <= 4.0 * mc.std_error + 1e-4);
}
