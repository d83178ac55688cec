#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "graphonlab/constraints.hpp"
#include "graphonlab/hypercube.hpp"
#include "graphonlab/recipe.hpp"
#include "graphonlab/rng.hpp"

namespace graphonlab {

struct BatteryOptions {
  std::uint64_t budget = 1u << 20;
  double tol_exact = 1e-9;  // analytic / exact-dyadic checks
  double tol_mc = 5e-3;     // Monte Carlo backed checks
  std::uint64_t seed = 1;
  std::vector<std::string> select;  // empty selects every item
};

namespace detail {

inline UnitCoord level_point(CounterRng& rng, std::uint64_t stream, std::uint64_t ctr,
                             int level) {
  const std::uint64_t mask =
      ~((UnitCoord::one >> (UnitCoord::precision - level)) - 1) & (UnitCoord::one - 1);
  const UnitCoord rel(rng.raw(stream, ctr) >> 11 & mask);
  return reconstruct(LevelPos{level, rel});
}

inline CheckReport exact_item(std::string name, double max_abs_delta, double tol,
                              std::string note = "") {
  CheckReport r;
  r.name = std::move(name);
  r.lhs = DensityEstimate::exact(max_abs_delta);
  r.rhs = DensityEstimate::exact(0.0);
  r.delta = max_abs_delta;
  r.tol = tol;
  r.verdict = classify(max_abs_delta, tol, 0.0);
  r.detail = std::move(note);
  return r;
}

}  // namespace detail

// Runs the structural battery on the hypercubical graphon: every item states
// a property the construction forces and checks it numerically, either by
// exact dyadic/analytic evaluation or by seeded Monte Carlo.  Reports come
// back sorted by name; identical (seed, budget) reproduce identical reports.
inline std::vector<CheckReport> verify_forced_properties(const HypercubeGraphon& g,
                                                         const BatteryOptions& opt = {}) {
  std::vector<CheckReport> out;
  CounterRng rng(opt.seed);
  const double tolx = opt.tol_exact;
  const double tolmc = opt.tol_mc;

  auto wanted = [&](const std::string& name) {
    if (opt.select.empty()) return true;
    return std::find(opt.select.begin(), opt.select.end(), name) != opt.select.end();
  };

  // -- zero blocks -----------------------------------------------------------
  if (wanted("zero-blocks")) {
    double max_abs = 0.0;
    std::uint64_t ctr = 0;
    for (const auto& [a, b] : HypercubeGraphon::zero_pair_list()) {
      for (int i = 0; i < 10000; ++i) {
        const UnitCoord s = rng.coord(1, ctr++);
        const UnitCoord t = rng.coord(1, ctr++);
        max_abs = std::max(max_abs, std::abs(g.pair_kernel(a, b, s, t)));
      }
    }
    out.push_back(detail::exact_item("zero-blocks", max_abs, 0.0,
                                     "max |W| over the forced zero pairs"));
  }

  // -- degree unification ------------------------------------------------------
  if (wanted("degree-unification")) {
    static constexpr Part inner[] = {Part::A0, Part::A1, Part::A2, Part::A3,
                                     Part::B1, Part::B2, Part::B3, Part::B4,
                                     Part::B5, Part::C};
    double max_delta = 0.0;
    for (Part X : inner) {
      for (int i = 0; i < 100; ++i) {
        const UnitCoord t = rng.coord(2 + static_cast<std::uint64_t>(X), i);
        double num = 0.0;  // integral over [0,1] minus E2 and F
        for (int y = 0; y < hypercube_part_count; ++y) {
          const Part Y = static_cast<Part>(y);
          if (Y == Part::E2 || Y == Part::F) continue;
          num += HypercubeGraphon::part_measure(Y).value() * g.relative_degree(X, t, Y);
        }
        max_delta = std::max(max_delta, std::abs(num / (22.0 / 27.0) - 0.5));
      }
    }
    for (int i = 0; i < 100; ++i) {
      const UnitCoord t = rng.coord(20, i);
      max_delta = std::max(max_delta, std::abs(g.degree(Part::D, t) - 4.0 / 27.0));
    }
    out.push_back(detail::exact_item(
        "degree-unification", max_delta, tolx,
        "relative degree outside E2 and F is 1/2; D vertices have degree 4/27"));
  }

  // -- pseudorandom F row -------------------------------------------------------
  if (wanted("pseudorandom-f-row")) {
    static constexpr std::pair<Part, double> table[] = {
        {Part::A0, 0.0}, {Part::A1, 0.1}, {Part::A2, 0.2}, {Part::A3, 0.3},
        {Part::B1, 0.4}, {Part::B2, 0.5}, {Part::B3, 0.6}, {Part::B4, 0.7},
        {Part::B5, 0.8}, {Part::C, 0.9}};
    double max_delta = 0.0;
    std::uint64_t ctr = 0;
    for (const auto& [X, target] : table) {
      max_delta = std::max(max_delta, std::abs(g.pair_density(Part::F, X) - target));
      for (int i = 0; i < 1000; ++i) {
        const UnitCoord s = rng.coord(3, ctr++);
        const UnitCoord t = rng.coord(3, ctr++);
        max_delta =
            std::max(max_delta, std::abs(g.pair_kernel(Part::F, X, s, t) - target));
      }
    }
    out.push_back(detail::exact_item("pseudorandom-f-row", max_delta, tolx,
                                     "F-row kernels are the table constants"));
  }

  // -- triangular order ----------------------------------------------------------
  if (wanted("triangular-order")) {
    static constexpr Part partners[] = {Part::A0, Part::A1, Part::A2, Part::A3,
                                        Part::B1, Part::B2, Part::B3, Part::B4,
                                        Part::B5};
    double max_delta = 0.0;
    for (int i = 0; i < 100; ++i) {
      const UnitCoord t = rng.coord(4, i);
      for (Part X : partners)
        max_delta =
            std::max(max_delta, std::abs(g.relative_degree(Part::C, t, X) - t.value()));
    }
    // 0/1-valuedness of the triangular kernels
    std::uint64_t ctr = 0;
    for (Part X : partners) {
      for (int i = 0; i < 1000; ++i) {
        const double v = g.pair_kernel(Part::C, X, rng.coord(5, ctr), rng.coord(6, ctr));
        ++ctr;
        max_delta = std::max(max_delta, std::min(v, 1.0 - v));
      }
    }
    out.push_back(detail::exact_item(
        "triangular-order", max_delta, tolx,
        "C vertices have the same relative degree in A0..B5 as in C"));
  }

  // -- checker cliques -------------------------------------------------------------
  if (wanted("checker-cliques")) {
    double max_delta = 0.0;
    // exact lattice counts of the level sets
    const int bits = 16;
    std::vector<std::uint64_t> count(bits + 3, 0);
    for (std::uint64_t v = 0; v < (1u << bits); ++v)
      ++count[static_cast<std::size_t>(
          level_of(UnitCoord(v << (UnitCoord::precision - bits))).level)];
    for (int k = 1; k <= 10; ++k)
      max_delta = std::max(
          max_delta, std::abs(static_cast<double>(count[static_cast<std::size_t>(k)]) /
                                  (1u << bits) -
                              level_measure(k)));
    // clique density within A1
    max_delta = std::max(max_delta,
                         std::abs(g.pair_density(Part::A1, Part::A1) - 1.0 / 3.0));
    for (int i = 0; i < 1000; ++i) {
      const double v = g.pair_kernel(Part::A1, Part::A1, rng.coord(7, i), rng.coord(8, i));
      max_delta = std::max(max_delta, std::min(v, 1.0 - v));
    }
    out.push_back(detail::exact_item(
        "checker-cliques", max_delta, tolx,
        "level-k cliques have measure 2^-k and carry edge density 1/3"));
  }

  // -- complete bipartition levels ----------------------------------------------------
  if (wanted("bipartition-levels")) {
    double max_delta = 0.0;
    for (int i = 0; i < 100; ++i) {
      const UnitCoord t = rng.coord(9, i);
      const double base = g.relative_degree(Part::A1, t, Part::A1);
      for (Part Y : {Part::A2, Part::B1, Part::B2, Part::B3, Part::B4, Part::B5})
        max_delta =
            std::max(max_delta, std::abs(g.relative_degree(Part::A1, t, Y) - base));
      const double base2 = g.relative_degree(Part::A2, t, Part::A1);
      for (Part Y : {Part::A3, Part::B2})
        max_delta =
            std::max(max_delta, std::abs(g.relative_degree(Part::A2, t, Y) - base2));
    }
    out.push_back(detail::exact_item(
        "bipartition-levels", max_delta, tolx,
        "A1 (and A2) vertices have equal relative degree across their checker partners"));
  }

  // -- A1/A3 level shift ------------------------------------------------------------
  if (wanted("level-shift-a1-a3")) {
    double max_delta = 0.0;
    for (int i = 0; i < 200; ++i) {
      const UnitCoord t = rng.coord(10, i);
      const double dA1 = g.relative_degree(Part::A1, t, Part::A1);
      const double dA0 = g.relative_degree(Part::A1, t, Part::A0);
      const double dA3 = g.relative_degree(Part::A1, t, Part::A3);
      // either the vertex sits in the first level (degree 1/2, full A0 row)
      // or its relative degree in A3 doubles the one in A1
      const double branch = (dA1 == 0.5) ? std::abs(dA0 - 1.0) + std::abs(dA3)
                                         : std::abs(dA0) + std::abs(dA3 - 2.0 * dA1);
      max_delta = std::max(max_delta, branch);
    }
    // sides pair level k+1 of A1 with level k of A3
    for (int k = 1; k <= 6; ++k) {
      const UnitCoord s = detail::level_point(rng, 11, static_cast<std::uint64_t>(k), k + 1);
      const UnitCoord t = detail::level_point(rng, 12, static_cast<std::uint64_t>(k), k);
      max_delta =
          std::max(max_delta, std::abs(g.pair_kernel(Part::A1, Part::A3, s, t) - 1.0));
    }
    out.push_back(detail::exact_item("level-shift-a1-a3", max_delta, tolx,
                                     "A3 degrees double A1 degrees off the first level"));
  }

  // -- first level -------------------------------------------------------------------
  if (wanted("first-level")) {
    double max_delta = std::abs(g.pair_density(Part::A0, Part::A1) - 0.5);
    for (int i = 0; i < 200; ++i) {
      const UnitCoord t = rng.coord(13, i);
      const double dA0 = g.relative_degree(Part::A1, t, Part::A0);
      const double dA1 = g.relative_degree(Part::A1, t, Part::A1);
      max_delta = std::max(max_delta, std::min(std::abs(dA0), std::abs(dA1 - 0.5)));
      max_delta = std::max(max_delta, std::min(dA0, 1.0 - dA0));  // 0/1-valued
    }
    out.push_back(detail::exact_item("first-level", max_delta, tolx,
                                     "A0 row fills exactly the first level of A1"));
  }

  // -- stairs ---------------------------------------------------------------------------
  if (wanted("stairs")) {
    double max_delta = 0.0;
    for (int i = 0; i < 100; ++i) {
      const int k0 = 1 + static_cast<int>(rng.raw(14, i) % 6);
      const UnitCoord b = detail::level_point(rng, 15, i, k0);
      max_delta = std::max(
          max_delta,
          std::abs(g.relative_degree(Part::B1, b, Part::B3) - (1.0 - level_measure(k0))));
      for (int m = 1; m <= k0 + 2; ++m) {
        const UnitCoord y = detail::level_point(rng, 16, i * 10 + m, m);
        const double v = g.pair_kernel(Part::B1, Part::B3, b, y);
        max_delta = std::max(max_delta, std::abs(v - (m <= k0 ? 1.0 : 0.0)));
      }
    }
    out.push_back(detail::exact_item("stairs", max_delta, tolx,
                                     "B1 level k is complete to B3 levels up to k"));
  }

  // -- coordinate kernels are 0/1 ---------------------------------------------------------
  if (wanted("coordinate-01")) {
    double max_delta = 0.0;
    std::uint64_t ctr = 0;
    for (Part Y : {Part::B1, Part::D}) {
      for (Part X : {Part::B2, Part::B4, Part::B5}) {
        for (int i = 0; i < 10000; ++i) {
          const double v = g.pair_kernel(Y, X, rng.coord(17, ctr), rng.coord(18, ctr));
          ++ctr;
          max_delta = std::max(max_delta, std::min(v, 1.0 - v));
        }
      }
    }
    out.push_back(detail::exact_item("coordinate-01", max_delta, tolx,
                                     "coordinate kernels take only the values 0 and 1"));
  }

  // -- initial coordinate -------------------------------------------------------------------
  if (wanted("initial-coordinate")) {
    double max_delta = 0.0;
    for (int i = 0; i < 100; ++i) {
      const int k = 1 + static_cast<int>(rng.raw(19, i) % 8);
      const UnitCoord b = detail::level_point(rng, 20, i, k);
      const LevelPos p = level_of(b);
      const double c1 = g.b1_coordinate(p.level, p.rel, 1).value();
      const double degC = g.relative_degree(Part::B1, b, Part::C);
      const double degA1 = g.relative_degree(Part::B1, b, Part::A1);
      const double derived = (degC - (1.0 - 2.0 * degA1)) / degA1;
      max_delta = std::max(max_delta, std::abs(c1 - derived));
    }
    out.push_back(detail::exact_item(
        "initial-coordinate", max_delta, tolx,
        "the C-row position of a B1 vertex encodes its first coordinate"));
  }

  // -- distribution linearity ------------------------------------------------------------------
  if (wanted("distribution-linearity")) {
    double max_delta = 0.0, max_sigma = 0.0;
    const std::uint64_t per = std::max<std::uint64_t>(1u << 12, opt.budget >> 6);
    for (int i = 0; i < 10; ++i) {
      const int k0 = 1 + static_cast<int>(rng.raw(21, i) % 4);
      const UnitCoord b = detail::level_point(rng, 22, i, k0);
      const double rho = level_of(b).rel.value();
      for (int k = k0; k <= k0 + 2; ++k) {
        McMoments m = mc_moments(per, [&](std::uint64_t s) {
          CounterRng r2(opt.seed + 77);
          const UnitCoord y = detail::level_point(r2, 23 + static_cast<std::uint64_t>(i),
                                                  s * 7 + static_cast<std::uint64_t>(k), k);
          return g.pair_kernel(Part::B2, Part::B1, b, y);
        });
        max_delta = std::max(max_delta, std::abs(m.mean() - (1.0 - rho)));
        max_sigma = std::max(max_sigma, m.std_error());
      }
      max_delta = std::max(
          max_delta, std::abs(g.relative_degree(Part::B2, b, Part::D) - (1.0 - rho)));
    }
    CheckReport r;
    r.name = "distribution-linearity";
    r.lhs = DensityEstimate{max_delta, max_sigma, per, DensityEstimate::Kind::monte_carlo};
    r.rhs = DensityEstimate::exact(0.0);
    r.delta = max_delta;
    r.tol = tolmc;
    r.verdict = classify(max_delta, tolmc, max_sigma);
    r.detail = "per-level relative degree of B2 vertices falls linearly with position";
    out.push_back(r);
  }

  // -- product relations --------------------------------------------------------------------------
  if (wanted("product-relations")) {
    double max_delta = 0.0;
    for (int i = 0; i < 100; ++i) {
      const int k = 1 + static_cast<int>(rng.raw(24, i) % 5);
      const UnitCoord b = detail::level_point(rng, 25, i, k);
      const LevelPos p = level_of(b);
      double prod1m = 1.0;
      for (int m = 1; m <= k; ++m)
        prod1m *= 1.0 - g.b1_coordinate(p.level, p.rel, m).value();
      double agg4 = 0.0, agg5 = 0.0, pc = 1.0, qc = 1.0;
      for (int m = 1; m <= k; ++m) {
        const double c = g.b1_coordinate(p.level, p.rel, m).value();
        pc *= c;
        qc *= 1.0 - c;
        agg4 += level_measure(m) * pc;
        agg5 += level_measure(m) * qc;
      }
      max_delta =
          std::max(max_delta, std::abs(g.relative_degree(Part::B1, b, Part::B4) - agg4));
      max_delta =
          std::max(max_delta, std::abs(g.relative_degree(Part::B1, b, Part::B5) - agg5));
      max_delta =
          std::max(max_delta, std::abs(g.relative_degree(Part::B1, b, Part::D) - prod1m));
    }
    out.push_back(detail::exact_item(
        "product-relations", max_delta, tolx,
        "B4/B5 degrees are running products of the B2 coordinates"));
  }

  // -- projection measure (product identity within B1 levels) ---------------------------------------
  if (wanted("projection-measure")) {
    double max_delta = 0.0;
    std::string note = "exact 16-bit lattice counts for the level maps";
    for (int k : {1, 2, 3}) {
      if (!recipe_product_measure_exhaustive(k, 16)) {
        max_delta = 1.0;
        note = "lattice count mismatch at level " + std::to_string(k);
      }
    }
    const auto est = Recipe::verify_product_measure(
        4,
        {UnitCoord::from_double(0.5), UnitCoord::from_double(0.75),
         UnitCoord::from_double(0.25), UnitCoord::from_double(0.5)},
        opt.budget, opt.seed + 5);
    const double target = 0.5 * 0.75 * 0.25 * 0.5;
    CheckReport r;
    r.name = "projection-measure";
    r.lhs = est;
    r.rhs = DensityEstimate::exact(target);
    r.delta = std::max(max_delta, std::abs(est.value - target));
    r.tol = std::max(tolmc, 4.0 * est.std_error);
    r.verdict = max_delta > 0.0
                    ? Verdict::fail
                    : classify(std::abs(est.value - target), r.tol, est.std_error);
    r.detail = note;
    out.push_back(r);
  }

  // -- infinite constraints ----------------------------------------------------------------------------
  if (wanted("infinite-constraints")) {
    double max_delta = 0.0, max_sigma = 0.0;
    const std::uint64_t per = std::max<std::uint64_t>(1u << 12, opt.budget >> 6);
    for (int i = 0; i < 10; ++i) {
      const UnitCoord d = rng.coord(26, i);
      for (int k = 1; k <= 4; ++k) {
        double target = 1.0;
        for (int j = 1; j <= k; ++j) target *= g.d_coordinate(d, j).value();
        McMoments m = mc_moments(per, [&](std::uint64_t s) {
          CounterRng r2(opt.seed + 99);
          const UnitCoord y = detail::level_point(r2, 40 + static_cast<std::uint64_t>(i),
                                                  s * 5 + static_cast<std::uint64_t>(k), k);
          return g.pair_kernel(Part::D, Part::B1, d, y);
        });
        max_delta = std::max(max_delta, std::abs(m.mean() - target));
        max_sigma = std::max(max_sigma, m.std_error());
      }
      // D x B2 kernel against the raw recipe coordinates
      for (int k = 1; k <= 6; ++k) {
        const UnitCoord y = detail::level_point(rng, 41, i * 10 + k, k);
        const LevelPos py = level_of(y);
        const double kernel = g.pair_kernel(Part::D, Part::B2, d, y);
        const double direct = py.rel <= g.d_coordinate(d, k) ? 1.0 : 0.0;
        max_delta = std::max(max_delta, std::abs(kernel - direct));
      }
    }
    CheckReport r;
    r.name = "infinite-constraints";
    r.lhs = DensityEstimate{max_delta, max_sigma, per, DensityEstimate::Kind::monte_carlo};
    r.rhs = DensityEstimate::exact(0.0);
    r.delta = max_delta;
    r.tol = tolmc;
    r.verdict = classify(max_delta, tolmc, max_sigma);
    r.detail = "degrees of D vertices in B1 levels match the coordinate products";
    out.push_back(r);
  }

  // -- E-row regularity ------------------------------------------------------------------------------------
  if (wanted("e-row-regularity")) {
    double max_delta = 0.0;
    for (int i = 0; i < 100; ++i) {
      const UnitCoord t = rng.coord(27, i);
      for (Part X : {Part::A0, Part::A3, Part::B2, Part::B4, Part::C}) {
        const double v1 = g.pair_kernel(Part::E1, X, rng.coord(28, 2 * i), t);
        const double v2 = g.pair_kernel(Part::E1, X, rng.coord(28, 2 * i + 1), t);
        max_delta = std::max(max_delta, std::abs(v1 - v2));  // constant across E1
        max_delta = std::max(
            max_delta, std::abs(v1 - (1.0 - g.sum_partner_degrees(X, t) / 11.0)));
      }
      const double w1 = g.pair_kernel(Part::E2, Part::D, rng.coord(29, 2 * i), t);
      const double w2 = g.pair_kernel(Part::E2, Part::D, rng.coord(29, 2 * i + 1), t);
      max_delta = std::max(max_delta, std::abs(w1 - w2));
      max_delta = std::max(max_delta, std::abs(w1 - (1.0 - g.d_row_sum(t) / 4.0)));
    }
    out.push_back(detail::exact_item(
        "e-row-regularity", max_delta, tolx,
        "E-row kernels are flat in the E coordinate and follow the degree sums"));
  }

  std::sort(out.begin(), out.end(),
            [](const CheckReport& a, const CheckReport& b) { return a.name < b.name; });
  return out;
}

// Overall exit status of a battery run: 0 all pass, 2 any fail,
// 3 inconclusive only.
inline int battery_exit_code(const std::vector<CheckReport>& reports) {
  bool any_fail = false, any_inconclusive = false;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::fail) any_fail = true;
    if (r.verdict == Verdict::inconclusive) any_inconclusive = true;
  }
  if (any_fail) return 2;
  if (any_inconclusive) return 3;
  return 0;
}

}  // namespace graphonlab
