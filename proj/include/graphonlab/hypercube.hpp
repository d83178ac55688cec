#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphonlab/dyadic.hpp"
#include "graphonlab/estimate.hpp"
#include "graphonlab/graphon.hpp"
#include "graphonlab/recipe.hpp"
#include "graphonlab/rng.hpp"

namespace graphonlab {

// The fourteen parts of the hypercubical graphon, laid out consecutively on
// [0,1].  Every part has measure 1/27 except E1 (11/27) and E2 (4/27).
enum class Part : int { A0, A1, A2, A3, B1, B2, B3, B4, B5, C, D, E1, E2, F };
inline constexpr int hypercube_part_count = 14;

inline const char* part_name(Part p) {
  static constexpr const char* names[] = {"A0", "A1", "A2", "A3", "B1", "B2", "B3",
                                          "B4", "B5", "C",  "D",  "E1", "E2", "F"};
  return names[static_cast<int>(p)];
}

inline std::optional<Part> part_from_name(const std::string& s) {
  for (int i = 0; i < hypercube_part_count; ++i)
    if (s == part_name(static_cast<Part>(i))) return static_cast<Part>(i);
  return std::nullopt;
}

// Deliberate single-kernel corruptions used as negative controls by the
// verification tooling.
enum class Mutation { none, f_row_density, zero_block_leak };

struct HypercubeOptions {
  int depth = 30;        // truncation depth for infinite level sums
  int coord_digits = 24; // binary digits kept per recipe coordinate
  Mutation mutation = Mutation::none;
};

// lambda({u in [0,1]^k : prod u_i >= rho}).
inline double product_tail_measure(int k, double rho) {
  if (rho <= 0.0) return 1.0;
  if (rho >= 1.0) return 0.0;
  const double s = -std::log(rho);
  double term = 1.0, sum = 1.0;
  for (int j = 1; j < k; ++j) {
    term *= s / j;
    sum += term;
  }
  double v = 1.0 - rho * sum;
  return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v);
}

// The hypercubical graphon.
//
// The construction composes three ingredients: the level decomposition of
// [0,1) into dyadic intervals, a bijective family of measure-preserving
// digit-interleaving maps (one per lane count, plus an infinite-lane map),
// and a fixed table of kernels between the fourteen parts.  Pairs of parts
// without a listed kernel are identically zero.  Immutable after
// construction; concurrent evaluation is the intended use.
class HypercubeGraphon {
 public:
  explicit HypercubeGraphon(HypercubeOptions opt = {}) : opt_(opt), layout_(make_layout()) {
    if (opt_.depth < 1) throw error("depth must be positive");
    build_kernel_table();
  }

  const HypercubeOptions& options() const { return opt_; }
  int depth() const { return opt_.depth; }
  const PartitionedLayout& layout() const { return layout_; }

  static Frac part_measure(Part p) {
    if (p == Part::E1) return Frac{11, 27};
    if (p == Part::E2) return Frac{4, 27};
    return Frac{1, 27};
  }

  // Expected degree of the vertices of each part.  A0..C, D and F follow
  // from the kernel table directly; E1 and E2 have the closed forms below,
  // derived by integrating the degree-averaging rows.
  static double table_degree(Part p) {
    switch (p) {
      case Part::A0: return 110.0 / 270.0;
      case Part::A1: return 111.0 / 270.0;
      case Part::A2: return 112.0 / 270.0;
      case Part::A3: return 113.0 / 270.0;
      case Part::B1: return 114.0 / 270.0;
      case Part::B2: return 115.0 / 270.0;
      case Part::B3: return 116.0 / 270.0;
      case Part::B4: return 117.0 / 270.0;
      case Part::B5: return 118.0 / 270.0;
      case Part::C:  return 119.0 / 270.0;
      case Part::D:  return 40.0 / 270.0;
      case Part::E1: return exact_e1();
      case Part::E2: return exact_e2();
      case Part::F:  return 45.0 / 270.0;
    }
    throw error("unknown part");
  }

  static double exact_e1() { return 206.0 / 693.0; }
  static double exact_e2() { return 5.0 / 216.0; }

  Part part_of(UnitCoord x) const { return static_cast<Part>(layout_.part_of(x)); }

  UnitCoord scaled(Part p, UnitCoord x) const {
    return layout_.to_part_coord(static_cast<int>(p), x);
  }
  UnitCoord unscaled(Part p, UnitCoord t) const {
    return layout_.from_part_coord(static_cast<int>(p), t);
  }

  // Level index of a vertex inside the parts that carry the level structure.
  // With the consecutive layout this is the dyadic level of the scaled
  // coordinate for A1..B5 alike.
  int level_in_part(Part p, UnitCoord t) const {
    switch (p) {
      case Part::A1: case Part::A2: case Part::A3:
      case Part::B1: case Part::B2: case Part::B3:
      case Part::B4: case Part::B5:
        return level_of(t).level;
      default:
        throw error("part has no level structure");
    }
  }

  // Recipe coordinate i of a B1 vertex at level `level` with relative
  // position `rel` inside its level interval.
  UnitCoord b1_coordinate(int level, UnitCoord rel, int i) const {
    return Recipe::coordinate(level, rel, i, opt_.coord_digits, true);
  }

  // Coordinate i of the infinite-lane map applied to a D vertex.
  UnitCoord d_coordinate(UnitCoord t, int i) const {
    return Recipe::coordinate(infinite_lanes, t, i, opt_.coord_digits, true);
  }

  // ---- kernels ------------------------------------------------------------

  // W restricted to parts X and Y, on part-scaled coordinates.  Satisfies
  // pair_kernel(X,Y,s,t) == pair_kernel(Y,X,t,s).
  double pair_kernel(Part X, Part Y, UnitCoord s, UnitCoord t) const {
    const Cell& cell = cells_[static_cast<int>(X)][static_cast<int>(Y)];
    return cell.flip ? kernel_value(cell, t, s) : kernel_value(cell, s, t);
  }

  double eval(UnitCoord x, UnitCoord y) const {
    const Part px = part_of(x);
    const Part py = part_of(y);
    return pair_kernel(px, py, scaled_or_zero(px, x), scaled_or_zero(py, y));
  }

  // ---- analytic degree machinery -----------------------------------------

  // Relative degree of the vertex of X at scaled position t in part Y,
  // computed by closed-form per-level integration of the kernel table.
  // Infinite level sums are truncated at the configured depth; the dropped
  // tail is bounded by 2^-depth.
  double relative_degree(Part X, UnitCoord t, Part Y) const;

  // Sum of the relative degrees of the vertex of X at t over the parts
  // A0..A3, B1..B5, C and D; this is the aggregate behind the E1 row.
  double sum_partner_degrees(Part X, UnitCoord t) const {
    static constexpr Part partners[] = {Part::A0, Part::A1, Part::A2, Part::A3,
                                        Part::B1, Part::B2, Part::B3, Part::B4,
                                        Part::B5, Part::C,  Part::D};
    double s = 0.0;
    for (Part y : partners) s += relative_degree(X, t, y);
    return s;
  }

  // Sum of the relative degrees of a D vertex in B1, B2, B4, B5; the
  // aggregate behind the E2 row.
  double d_row_sum(UnitCoord t) const {
    return relative_degree(Part::D, t, Part::B1) + relative_degree(Part::D, t, Part::B2) +
           relative_degree(Part::D, t, Part::B4) + relative_degree(Part::D, t, Part::B5);
  }

  // Total degree of the vertex of X at scaled position t.
  double degree(Part X, UnitCoord t) const {
    double s = 0.0;
    for (int y = 0; y < hypercube_part_count; ++y)
      s += part_measure(static_cast<Part>(y)).value() *
           relative_degree(X, t, static_cast<Part>(y));
    return s;
  }

  // Monte Carlo estimates of the mean degrees on E1 and E2.
  std::pair<DensityEstimate, DensityEstimate> estimate_e1_e2(std::uint64_t samples,
                                                             std::uint64_t seed) const {
    static constexpr Part row_parts[] = {Part::A0, Part::A1, Part::A2, Part::A3,
                                         Part::B1, Part::B2, Part::B3, Part::B4,
                                         Part::B5, Part::C};
    CounterRng rng(seed);
    McMoments m1 = mc_moments(samples, [&](std::uint64_t i) {
      const Part X = row_parts[rng.raw(10, i) % 10];
      const UnitCoord t = rng.coord(11, i);
      return 1.0 - sum_partner_degrees(X, t) / 11.0;
    });
    McMoments m2 = mc_moments(samples, [&](std::uint64_t i) {
      const UnitCoord t = rng.coord(12, i);
      return 1.0 - d_row_sum(t) / 4.0;
    });
    return {DensityEstimate::from_moments(m1, 10.0 / 27.0),
            DensityEstimate::from_moments(m2, 1.0 / 27.0)};
  }

  // ---- analytic pair densities --------------------------------------------

  // Mean of W over the product of two parts (order-independent).
  double pair_density(Part X, Part Y) const;

  // Part-averaged value of the partner-degree aggregate behind the E1 row.
  static double mean_partner_sum(Part X);

  // Edge density of the whole graphon from the pair-density table.
  double edge_density() const {
    double s = 0.0;
    for (int i = 0; i < hypercube_part_count; ++i)
      for (int j = 0; j < hypercube_part_count; ++j)
        s += part_measure(static_cast<Part>(i)).value() *
             part_measure(static_cast<Part>(j)).value() *
             pair_density(static_cast<Part>(i), static_cast<Part>(j));
    return s;
  }

  bool is_zero_pair(Part X, Part Y) const {
    return cells_[static_cast<int>(X)][static_cast<int>(Y)].code == Code::zero;
  }

  // The explicit zero blocks forced by the construction (unordered pairs).
  static std::vector<std::pair<Part, Part>> zero_pair_list();

  // Adapter for the density engine.
  Graphon as_graphon() const;

 private:
  enum class Code : int {
    zero, a0a1, checker, half, shift_a1a3, c_b1,
    b1b1, b1b2, b1b3, b1b4, b1b5,
    d_b1, d_b2, d_b4, d_b5,
    e1_row, e2_row, f_row
  };

  struct Cell {
    Code code = Code::zero;
    bool flip = false;     // definition written for (row, col); flip swaps args
    double value = 0.0;    // constant rows
    Part partner = Part::A0;
  };

  static PartitionedLayout make_layout() {
    std::vector<PartInfo> parts;
    for (int i = 0; i < hypercube_part_count; ++i) {
      const Part p = static_cast<Part>(i);
      parts.push_back(PartInfo{part_name(p), part_measure(p), table_degree(p)});
    }
    return PartitionedLayout(std::move(parts));
  }

  UnitCoord scaled_or_zero(Part p, UnitCoord x) const {
    // E1/E2 kernels never read their own scaled coordinate, so the rounding
    // in the non-unit-width scaling is immaterial there.
    return layout_.to_part_coord(static_cast<int>(p), x);
  }

  void set(Part a, Part b, Code code, double value = 0.0) {
    Cell fwd{code, false, value, b};
    Cell rev{code, true, value, b};
    cells_[static_cast<int>(a)][static_cast<int>(b)] = fwd;
    if (a != b) {
      rev.partner = b;  // the non-constant side keeps the defining partner
      cells_[static_cast<int>(b)][static_cast<int>(a)] = rev;
    }
  }

  void build_kernel_table();

  double kernel_value(const Cell& cell, UnitCoord s, UnitCoord t) const;

  // prod_{i<=m} c_i and prod_{i<=m} (1-c_i) for the recipe coordinates of a
  // B1 vertex (lanes = level) or a D vertex (infinite lanes).
  double prefix_product(LaneCount lanes, UnitCoord rel, int m, bool complement) const {
    double p = 1.0;
    for (int i = 1; i <= m; ++i) {
      const double c =
          Recipe::coordinate(lanes, rel, i, opt_.coord_digits, true).value();
      p *= complement ? (1.0 - c) : c;
    }
    return p;
  }

  HypercubeOptions opt_;
  PartitionedLayout layout_;
  std::array<std::array<Cell, hypercube_part_count>, hypercube_part_count> cells_{};
};

inline void HypercubeGraphon::build_kernel_table() {
  // default: everything zero
  set(Part::A0, Part::A1, Code::a0a1);

  const Part checker_pairs[][2] = {
      {Part::A1, Part::A1}, {Part::A1, Part::A2}, {Part::A1, Part::B1},
      {Part::A1, Part::B2}, {Part::A1, Part::B3}, {Part::A1, Part::B4},
      {Part::A1, Part::B5}, {Part::A2, Part::A3}, {Part::A2, Part::B2}};
  for (auto& pr : checker_pairs) set(pr[0], pr[1], Code::checker);

  const Part half_partners[] = {Part::A0, Part::A1, Part::A2, Part::A3, Part::B2,
                                Part::B3, Part::B4, Part::B5, Part::C};
  for (Part x : half_partners) set(Part::C, x, Code::half);

  set(Part::A1, Part::A3, Code::shift_a1a3);
  set(Part::C, Part::B1, Code::c_b1);

  set(Part::B1, Part::B1, Code::b1b1);
  set(Part::B1, Part::B2, Code::b1b2);
  set(Part::B1, Part::B3, Code::b1b3);
  set(Part::B1, Part::B4, Code::b1b4);
  set(Part::B1, Part::B5, Code::b1b5);

  set(Part::D, Part::B1, Code::d_b1);
  set(Part::D, Part::B2, Code::d_b2);
  set(Part::D, Part::B4, Code::d_b4);
  set(Part::D, Part::B5, Code::d_b5);

  const Part e1_partners[] = {Part::A0, Part::A1, Part::A2, Part::A3, Part::B1,
                              Part::B2, Part::B3, Part::B4, Part::B5, Part::C};
  for (Part x : e1_partners) {
    Cell fwd{Code::e1_row, false, 0.0, x};
    cells_[static_cast<int>(Part::E1)][static_cast<int>(x)] = fwd;
    Cell rev{Code::e1_row, true, 0.0, x};
    cells_[static_cast<int>(x)][static_cast<int>(Part::E1)] = rev;
  }
  {
    Cell fwd{Code::e2_row, false, 0.0, Part::D};
    cells_[static_cast<int>(Part::E2)][static_cast<int>(Part::D)] = fwd;
    Cell rev{Code::e2_row, true, 0.0, Part::D};
    cells_[static_cast<int>(Part::D)][static_cast<int>(Part::E2)] = rev;
  }

  const std::pair<Part, double> f_row[] = {
      {Part::A1, 0.1}, {Part::A2, 0.2}, {Part::A3, 0.3},
      {Part::B1, 0.4}, {Part::B2, 0.5}, {Part::B3, 0.6},
      {Part::B4, 0.7}, {Part::B5, 0.8}, {Part::C, 0.9}};
  for (auto& [x, v] : f_row) {
    double dv = v;
    if (opt_.mutation == Mutation::f_row_density && x == Part::C) dv = 0.8;
    Cell fwd{Code::f_row, false, dv, x};
    cells_[static_cast<int>(Part::F)][static_cast<int>(x)] = fwd;
    Cell rev{Code::f_row, true, dv, x};
    cells_[static_cast<int>(x)][static_cast<int>(Part::F)] = rev;
  }

  if (opt_.mutation == Mutation::zero_block_leak) {
    Cell leak{Code::f_row, false, 0.05, Part::D};
    cells_[static_cast<int>(Part::A2)][static_cast<int>(Part::D)] = leak;
    cells_[static_cast<int>(Part::D)][static_cast<int>(Part::A2)] = leak;
  }
}

inline double HypercubeGraphon::kernel_value(const Cell& cell, UnitCoord s,
                                             UnitCoord t) const {
  switch (cell.code) {
    case Code::zero:
      return 0.0;
    case Code::a0a1:
      // 1 on [0,1] x [0,1/2)
      return t.numerator() < (UnitCoord::one >> 1) ? 1.0 : 0.0;
    case Code::checker:
      return level_of(s).level == level_of(t).level ? 1.0 : 0.0;
    case Code::half:
      return s.numerator() + t.numerator() >= UnitCoord::one ? 1.0 : 0.0;
    case Code::shift_a1a3:
      return level_of(s).level == level_of(t).level + 1 ? 1.0 : 0.0;
    case Code::c_b1: {
      // x in C, y in B1: connected iff x + v(y) >= 1, where v(y) places y at
      // its first recipe coordinate within its level interval.
      const LevelPos p = level_of(t);
      const UnitCoord c1 = b1_coordinate(p.level, p.rel, 1);
      const int lvl = p.level;
      const std::uint64_t base =
          UnitCoord::one - (lvl - 1 >= 64 ? 0 : (UnitCoord::one >> (lvl - 1)));
      const std::uint64_t v_num = base + (c1.numerator() >> lvl);
      return s.numerator() + v_num >= UnitCoord::one ? 1.0 : 0.0;
    }
    case Code::b1b1: {
      // Comparability in the coordinatewise partial order: the vertex of the
      // lower level must be dominated by (or dominate, at equal levels) the
      // other on the shared coordinate prefix.
      const LevelPos ps = level_of(s);
      const LevelPos pt = level_of(t);
      const int m = std::min(ps.level, pt.level);
      bool le = true, ge = true;
      for (int i = 1; i <= m && (le || ge); ++i) {
        const UnitCoord cs = b1_coordinate(ps.level, ps.rel, i);
        const UnitCoord ct = b1_coordinate(pt.level, pt.rel, i);
        if (cs > ct) le = false;
        if (cs < ct) ge = false;
      }
      if (ps.level < pt.level) return le ? 1.0 : 0.0;
      if (ps.level > pt.level) return ge ? 1.0 : 0.0;
      return (le || ge) ? 1.0 : 0.0;
    }
    case Code::b1b2: {
      const LevelPos ps = level_of(s);
      const LevelPos pt = level_of(t);
      if (ps.level < pt.level) return 0.0;
      return pt.rel <= b1_coordinate(ps.level, ps.rel, pt.level) ? 1.0 : 0.0;
    }
    case Code::b1b3: {
      return level_of(s).level >= level_of(t).level ? 1.0 : 0.0;
    }
    case Code::b1b4: {
      const LevelPos ps = level_of(s);
      const LevelPos pt = level_of(t);
      if (ps.level < pt.level) return 0.0;
      return pt.rel.value() <= prefix_product(ps.level, ps.rel, pt.level, false) ? 1.0
                                                                                 : 0.0;
    }
    case Code::b1b5: {
      const LevelPos ps = level_of(s);
      const LevelPos pt = level_of(t);
      if (ps.level < pt.level) return 0.0;
      return pt.rel.value() <= prefix_product(ps.level, ps.rel, pt.level, true) ? 1.0
                                                                                : 0.0;
    }
    case Code::d_b1: {
      // Dominance of the B1 vertex's coordinate prefix by the infinite-lane
      // coordinates of the D vertex.
      const LevelPos pt = level_of(t);
      for (int i = 1; i <= pt.level; ++i) {
        if (b1_coordinate(pt.level, pt.rel, i) > d_coordinate(s, i)) return 0.0;
      }
      return 1.0;
    }
    case Code::d_b2: {
      const LevelPos pt = level_of(t);
      return pt.rel <= d_coordinate(s, pt.level) ? 1.0 : 0.0;
    }
    case Code::d_b4: {
      const LevelPos pt = level_of(t);
      return pt.rel.value() <= prefix_product(infinite_lanes, s, pt.level, false)
                 ? 1.0 : 0.0;
    }
    case Code::d_b5: {
      const LevelPos pt = level_of(t);
      return pt.rel.value() <= prefix_product(infinite_lanes, s, pt.level, true)
                 ? 1.0 : 0.0;
    }
    case Code::e1_row:
      return 1.0 - sum_partner_degrees(cell.partner, t) / 11.0;
    case Code::e2_row:
      return 1.0 - d_row_sum(t) / 4.0;
    case Code::f_row:
      return cell.value;
  }
  throw error("unreachable kernel code");
}

inline double HypercubeGraphon::relative_degree(Part X, UnitCoord t, Part Y) const {
  const int L = opt_.depth;
  auto lvl = [&] { return level_of(t).level; };
  auto pow2 = [](int k) { return std::ldexp(1.0, -k); };

  // Mutated kernels are constant rows; reflect them in the profile so the
  // analytic machinery stays consistent with pointwise evaluation.
  {
    const Cell& cell = cells_[static_cast<int>(X)][static_cast<int>(Y)];
    if (cell.code == Code::f_row) return cell.value;
    if (cell.code == Code::zero) return 0.0;
  }

  switch (X) {
    case Part::A0:
      if (Y == Part::A1) return 0.5;
      if (Y == Part::C) return t.value();
      if (Y == Part::E1) return 1.0 - sum_partner_degrees(X, t) / 11.0;
      return 0.0;
    case Part::A1: {
      const int k = lvl();
      if (Y == Part::A0) return k == 1 ? 1.0 : 0.0;
      if (Y == Part::A1 || Y == Part::A2 || Y == Part::B1 || Y == Part::B2 ||
          Y == Part::B3 || Y == Part::B4 || Y == Part::B5)
        return pow2(k);
      if (Y == Part::A3) return k >= 2 ? pow2(k - 1) : 0.0;
      if (Y == Part::C) return t.value();
      if (Y == Part::E1) return 1.0 - sum_partner_degrees(X, t) / 11.0;
      return 0.0;
    }
    case Part::A2: {
      const int k = lvl();
      if (Y == Part::A1 || Y == Part::A3 || Y == Part::B2) return pow2(k);
      if (Y == Part::C) return t.value();
      if (Y == Part::E1) return 1.0 - sum_partner_degrees(X, t) / 11.0;
      return 0.0;
    }
    case Part::A3: {
      const int k = lvl();
      if (Y == Part::A1) return pow2(k + 1);
      if (Y == Part::A2) return pow2(k);
      if (Y == Part::C) return t.value();
      if (Y == Part::E1) return 1.0 - sum_partner_degrees(X, t) / 11.0;
      return 0.0;
    }
    case Part::B1: {
      const LevelPos p = level_of(t);
      const int k = p.level;
      if (Y == Part::A1) return pow2(k);
      if (Y == Part::B3) return 1.0 - pow2(k);
      if (Y == Part::C) {
        const UnitCoord c1 = b1_coordinate(k, p.rel, 1);
        return 1.0 - pow2(k - 1) + c1.value() * pow2(k);
      }
      if (Y == Part::D) return prefix_product(k, p.rel, k, true);
      if (Y == Part::B1 || Y == Part::B2 || Y == Part::B4 || Y == Part::B5) {
        double sum = 0.0;
        double pc = 1.0;  // prod_{i<=m} c_i along the way
        for (int m = 1; m <= k; ++m) {
          const double cm = b1_coordinate(k, p.rel, m).value();
          pc *= cm;
          if (Y == Part::B2) sum += pow2(m) * cm;
          if (Y == Part::B4) sum += pow2(m) * pc;
          if (Y == Part::B1 && m < k) sum += pow2(m) * pc;
        }
        if (Y == Part::B5) {
          double q = 1.0;
          for (int m = 1; m <= k; ++m) {
            q *= 1.0 - b1_coordinate(k, p.rel, m).value();
            sum += pow2(m) * q;
          }
        }
        if (Y == Part::B1) {
          const double qk = prefix_product(k, p.rel, k, true);
          sum += pow2(k) * (pc + qk) + pow2(k) * qk;
        }
        return sum;
      }
      if (Y == Part::E1) return 1.0 - sum_partner_degrees(X, t) / 11.0;
      return 0.0;
    }
    case Part::B2: {
      const LevelPos p = level_of(t);
      const int k = p.level;
      const double rho = p.rel.value();
      if (Y == Part::A1 || Y == Part::A2) return pow2(k);
      if (Y == Part::B1) return (1.0 - rho) * pow2(k - 1);
      if (Y == Part::D) return 1.0 - rho;
      if (Y == Part::C) return t.value();
      if (Y == Part::E1) return 1.0 - sum_partner_degrees(X, t) / 11.0;
      return 0.0;
    }
    case Part::B3: {
      const int k = lvl();
      if (Y == Part::A1) return pow2(k);
      if (Y == Part::B1) return pow2(k - 1);
      if (Y == Part::C) return t.value();
      if (Y == Part::E1) return 1.0 - sum_partner_degrees(X, t) / 11.0;
      return 0.0;
    }
    case Part::B4:
    case Part::B5: {
      const LevelPos p = level_of(t);
      const int k = p.level;
      const double v = product_tail_measure(k, p.rel.value());
      if (Y == Part::A1) return pow2(k);
      if (Y == Part::B1) return v * pow2(k - 1);
      if (Y == Part::D) return v;
      if (Y == Part::C) return t.value();
      if (Y == Part::E1) return 1.0 - sum_partner_degrees(X, t) / 11.0;
      return 0.0;
    }
    case Part::C: {
      if (Y == Part::B1) {
        // level-sum of the first-coordinate placement; equals t up to the
        // truncation tail
        double sum = 0.0;
        const double tv = t.value();
        for (int k = 1; k <= L; ++k) {
          const double frac = tv * std::ldexp(1.0, k) - 1.0;
          sum += pow2(k) * (frac < 0.0 ? 0.0 : (frac > 1.0 ? 1.0 : frac));
        }
        return sum;
      }
      if (Y == Part::A0 || Y == Part::A1 || Y == Part::A2 || Y == Part::A3 ||
          Y == Part::B2 || Y == Part::B3 || Y == Part::B4 || Y == Part::B5 ||
          Y == Part::C)
        return t.value();
      if (Y == Part::E1) return 1.0 - sum_partner_degrees(X, t) / 11.0;
      return 0.0;
    }
    case Part::D: {
      if (Y == Part::B1 || Y == Part::B2 || Y == Part::B4 || Y == Part::B5) {
        double sum = 0.0, pu = 1.0, qu = 1.0;
        for (int m = 1; m <= L; ++m) {
          const double um = d_coordinate(t, m).value();
          pu *= um;
          qu *= 1.0 - um;
          if (Y == Part::B2) sum += pow2(m) * um;
          if (Y == Part::B1 || Y == Part::B4) sum += pow2(m) * pu;
          if (Y == Part::B5) sum += pow2(m) * qu;
        }
        return sum;
      }
      if (Y == Part::E2) return 1.0 - d_row_sum(t) / 4.0;
      return 0.0;
    }
    case Part::E1: {
      const Cell& cell = cells_[static_cast<int>(Part::E1)][static_cast<int>(Y)];
      if (cell.code == Code::e1_row) return 1.0 - mean_partner_sum(Y) / 11.0;
      return 0.0;
    }
    case Part::E2:
      return Y == Part::D ? 5.0 / 8.0 : 0.0;
    case Part::F:
      return cells_[static_cast<int>(Part::F)][static_cast<int>(Y)].code == Code::f_row
                 ? cells_[static_cast<int>(Part::F)][static_cast<int>(Y)].value
                 : 0.0;
  }
  throw error("unreachable part");
}

// Part-averaged value of the partner-degree aggregate; closed forms obtained
// by integrating the per-part profiles over the part.
inline double HypercubeGraphon::mean_partner_sum(Part X) {
  switch (X) {
    case Part::A0: return 1.0;
    case Part::A1: return 3.5;
    case Part::A2: return 1.5;
    case Part::A3: return 1.0;
    case Part::B1: return 139.0 / 42.0;
    case Part::B2: return 2.0;
    case Part::B3: return 1.5;
    case Part::B4: return 61.0 / 42.0;
    case Part::B5: return 61.0 / 42.0;
    case Part::C:  return 5.0;
    default: throw error("no partner-sum mean for this part");
  }
}

inline double HypercubeGraphon::pair_density(Part X, Part Y) const {
  const Cell& cell = cells_[static_cast<int>(X)][static_cast<int>(Y)];
  switch (cell.code) {
    case Code::zero: return 0.0;
    case Code::a0a1: return 0.5;
    case Code::checker: return 1.0 / 3.0;
    case Code::half: return 0.5;
    case Code::shift_a1a3: return 1.0 / 6.0;
    case Code::c_b1: return 0.5;
    case Code::b1b1: return 4.0 / 7.0;
    case Code::b1b2: return 1.0 / 3.0;
    case Code::b1b3: return 2.0 / 3.0;
    case Code::b1b4: return 2.0 / 7.0;
    case Code::b1b5: return 2.0 / 7.0;
    case Code::d_b1: return 1.0 / 3.0;
    case Code::d_b2: return 0.5;
    case Code::d_b4: return 1.0 / 3.0;
    case Code::d_b5: return 1.0 / 3.0;
    case Code::e1_row: return 1.0 - mean_partner_sum(cell.partner) / 11.0;
    case Code::e2_row: return 5.0 / 8.0;
    case Code::f_row: return cell.value;
  }
  throw error("unreachable kernel code");
}

inline std::vector<std::pair<Part, Part>> HypercubeGraphon::zero_pair_list() {
  using P = Part;
  std::vector<std::pair<Part, Part>> out;
  auto add = [&out](P a, std::initializer_list<P> bs) {
    for (P b : bs) out.emplace_back(a, b);
  };
  add(P::A0, {P::A0, P::A2, P::A3, P::B1, P::B3, P::B4, P::B5, P::D, P::E2, P::F});
  add(P::A1, {P::D, P::E2});
  add(P::A2, {P::A2, P::B1, P::B3, P::B4, P::B5, P::D, P::E2});
  add(P::A3, {P::A3, P::B1, P::B2, P::B3, P::B4, P::B5, P::D, P::E2});
  add(P::B2, {P::B2, P::B3, P::B4, P::B5, P::E2});
  add(P::B3, {P::B3, P::B4, P::B5, P::D, P::E2});
  add(P::B4, {P::B4, P::B5, P::E2});
  add(P::B5, {P::B5, P::E2});
  add(P::C, {P::D, P::E2});
  add(P::D, {P::D, P::E1});
  add(P::E1, {P::E1, P::E2, P::F});
  add(P::E2, {P::E2, P::F});
  add(P::F, {P::F});
  return out;
}

inline Graphon HypercubeGraphon::as_graphon() const {
  auto self = std::make_shared<HypercubeGraphon>(*this);
  Graphon g("hypercubical", [self](UnitCoord x, UnitCoord y) { return self->eval(x, y); });
  g.layout = self->layout();
  g.edge_density = [self] { return self->edge_density(); };
  g.pair_density = [self](int a, int b) {
    return self->pair_density(static_cast<Part>(a), static_cast<Part>(b));
  };
  g.part_pair_eval = [self](int a, int b, UnitCoord s, UnitCoord t) {
    return self->pair_kernel(static_cast<Part>(a), static_cast<Part>(b), s, t);
  };
  g.part_relative_degree = [self](UnitCoord x, int y) {
    const Part px = self->part_of(x);
    return self->relative_degree(px, self->scaled(px, x), static_cast<Part>(y));
  };
  return g;
}

}  // namespace graphonlab
