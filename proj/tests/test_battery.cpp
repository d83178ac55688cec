#include <catch2/catch_amalgamated.hpp>

#include "graphonlab/battery.hpp"

using namespace graphonlab;

TEST_CASE("full battery passes on the hypercubical graphon") {
  const HypercubeGraphon g;
  BatteryOptions opt;
  opt.budget = 1u << 18;
  const auto reports = verify_forced_properties(g, opt);
  REQUIRE(reports.size() >= 14);
  for (const auto& r : reports) {
    INFO(r.name << ": delta=" << r.delta << " tol=" << r.tol << " " << r.detail);
    CHECK(r.verdict == Verdict::pass);
  }
  CHECK(battery_exit_code(reports) == 0);

  // deterministic: the same options give bit-identical reports
  const auto again = verify_forced_properties(g, opt);
  REQUIRE(again.size() == reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    CHECK(reports[i].name == again[i].name);
    CHECK(reports[i].delta == again[i].delta);
    CHECK(reports[i].lhs.value == again[i].lhs.value);
  }
}

TEST_CASE("battery reports arrive sorted by name") {
  const HypercubeGraphon g;
  BatteryOptions opt;
  opt.budget = 1u << 14;
  opt.select = {"zero-blocks", "first-level", "stairs"};
  const auto reports = verify_forced_properties(g, opt);
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].name == "first-level");
  CHECK(reports[1].name == "stairs");
  CHECK(reports[2].name == "zero-blocks");
}

TEST_CASE("empty selection runs no items") {
  const HypercubeGraphon g;
  BatteryOptions opt;
  opt.select = {"no-such-item"};
  const auto reports = verify_forced_properties(g, opt);
  CHECK(reports.empty());
  CHECK(battery_exit_code(reports) == 0);
}

TEST_CASE("mutated kernels are caught") {
  BatteryOptions opt;
  opt.budget = 1u << 14;

  HypercubeOptions bad1;
  bad1.mutation = Mutation::f_row_density;
  const auto r1 = verify_forced_properties(HypercubeGraphon(bad1), opt);
  CHECK(battery_exit_code(r1) == 2);

  HypercubeOptions bad2;
  bad2.mutation = Mutation::zero_block_leak;
  const auto r2 = verify_forced_properties(HypercubeGraphon(bad2), opt);
  CHECK(battery_exit_code(r2) == 2);
}
