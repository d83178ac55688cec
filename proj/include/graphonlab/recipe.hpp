#pragma once

#include <cstdint>
#include <vector>

#include "graphonlab/dyadic.hpp"
#include "graphonlab/estimate.hpp"
#include "graphonlab/rng.hpp"

namespace graphonlab {

// Lane count for the measure-preserving maps r_n : [0,1] -> [0,1]^n.
// lanes == infinite_lanes encodes n = infinity.
using LaneCount = int;
inline constexpr LaneCount infinite_lanes = 0;

// Input digit position feeding digit j of coordinate `coord`.
//
// Finite n distributes digits round-robin: coordinate i receives input
// digits i, i+n, i+2n, ...  The infinite map assigns positions along the
// diagonals of the (coordinate, digit) grid, so every coordinate of
// r_inf(x) still draws on a disjoint, unbounded set of input digits.
inline std::int64_t digit_position(LaneCount n, int coord, int j) {
  if (n == infinite_lanes) {
    const std::int64_t d = coord + j;
    return (d - 1) * (d - 2) / 2 + coord;
  }
  return coord + static_cast<std::int64_t>(j - 1) * n;
}

// How many digits of coordinate `coord` are backed by real input bits when
// the input carries `bits` fractional bits.
inline int digit_budget(LaneCount n, int coord, int bits = UnitCoord::precision) {
  int j = 0;
  while (digit_position(n, coord, j + 1) <= bits) ++j;
  return j;
}

// The concrete bijective recipe used throughout: binary digit interleaving.
// All operations are pure and shared freely across threads.
class Recipe {
 public:
  static constexpr int precision = UnitCoord::precision;

  // Digit p of the input stream of x.  Positions beyond the stored precision
  // carry no information; with `extend` they are filled from a keyed hash so
  // that deep coordinates remain statistically uniform instead of collapsing
  // to zero.  Exactness guarantees apply to the first `precision` digits.
  static bool digit(UnitCoord x, std::int64_t p, bool extend = false) {
    if (p <= precision) return x.bit(static_cast<int>(p));
    if (!extend) return false;
    const std::uint64_t q = static_cast<std::uint64_t>(p - precision - 1);
    const std::uint64_t word = mix64(x.numerator() + (q / 64 + 1) * 0xd1342543de82ef95ULL);
    return (word >> (q % 64)) & 1u;
  }

  // Coordinate `coord` of r_n(x), assembled from `digits` binary digits.
  static UnitCoord coordinate(LaneCount n, UnitCoord x, int coord, int digits,
                              bool extend = false) {
    if (digits > precision) digits = precision;
    std::uint64_t num = 0;
    for (int j = 1; j <= digits; ++j) {
      if (digit(x, digit_position(n, coord, j), extend))
        num |= UnitCoord::one >> j;
    }
    return UnitCoord(num);
  }

  // r_n(x) with every coordinate carrying exactly its in-budget digits.
  // For the infinite map the caller chooses how many coordinates to
  // materialize; any finite prefix is computable.
  static std::vector<UnitCoord> apply(LaneCount n, UnitCoord x,
                                      int infinite_prefix = 30) {
    if (x.numerator() == UnitCoord::one) throw no_level_error();
    const int count = (n == infinite_lanes) ? infinite_prefix : n;
    std::vector<UnitCoord> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 1; i <= count; ++i)
      out.push_back(coordinate(n, x, i, digit_budget(n, i), false));
    return out;
  }

  // Inverse of apply for finite n.  Coordinates must fit their digit
  // budgets; a set digit that would land beyond the input precision is a
  // precision_error rather than silent rounding.
  static UnitCoord invert(int n, const std::vector<UnitCoord>& coords) {
    if (n < 1 || static_cast<int>(coords.size()) != n)
      throw error("invert: coordinate count must equal n");
    std::uint64_t num = 0;
    for (int i = 1; i <= n; ++i) {
      const UnitCoord& c = coords[static_cast<std::size_t>(i - 1)];
      if (c.numerator() == UnitCoord::one)
        throw precision_error("invert: coordinate must lie in [0,1)");
      for (int j = 1; j <= precision; ++j) {
        if (!c.bit(j)) continue;
        const std::int64_t p = digit_position(n, i, j);
        if (p > precision)
          throw precision_error("invert: coordinate exceeds the digit budget");
        num |= UnitCoord::one >> p;
      }
    }
    return UnitCoord(num);
  }

  // Monte Carlo check of the product-measure identity: estimates
  // lambda({x : (r_n(x))_i <= a_i for all i <= k}) whose target is the
  // product of the thresholds.
  static DensityEstimate verify_product_measure(LaneCount n,
                                                const std::vector<UnitCoord>& thresholds,
                                                std::uint64_t samples,
                                                std::uint64_t seed) {
    const int k = static_cast<int>(thresholds.size());
    if (n != infinite_lanes && k > n) throw error("more thresholds than lanes");
    CounterRng rng(seed);
    const int digits = 24;
    McMoments m = mc_moments(samples, [&](std::uint64_t i) {
      const UnitCoord x = rng.coord(0, i);
      for (int c = 1; c <= k; ++c) {
        if (coordinate(n, x, c, digits, true) > thresholds[static_cast<std::size_t>(c - 1)])
          return 0.0;
      }
      return 1.0;
    });
    return DensityEstimate::from_moments(m);
  }
};

// Exhaustive verification of the product-measure identity on a small input
// lattice.  Counts lattice points whose coordinate vector is strictly below
// the threshold tuple (half-open cells match the continuum measure of the
// closed event) and checks the count equals the product of the threshold
// numerators for EVERY threshold tuple on the per-coordinate lattices.
//
// Returns true when the identity holds exhaustively.
inline bool recipe_product_measure_exhaustive(int n, int bits) {
  if (n < 1 || bits < 1 || bits > 24) throw error("unsupported lattice size");
  std::vector<int> budget(static_cast<std::size_t>(n));
  int total_bits = 0;
  for (int i = 1; i <= n; ++i) {
    budget[static_cast<std::size_t>(i - 1)] = digit_budget(n, i, bits);
    total_bits += budget[static_cast<std::size_t>(i - 1)];
  }
  if (total_bits != bits) return false;  // digit positions must partition [1, bits]

  // Dimensions of the cumulative table: c_i in [0, 2^{t_i}].
  std::vector<std::size_t> dim(static_cast<std::size_t>(n));
  std::size_t table_size = 1;
  for (int i = 0; i < n; ++i) {
    dim[static_cast<std::size_t>(i)] = (std::size_t{1} << budget[static_cast<std::size_t>(i)]) + 1;
    table_size *= dim[static_cast<std::size_t>(i)];
  }
  std::vector<std::uint64_t> table(table_size, 0);

  auto flat = [&](const std::vector<std::size_t>& idx) {
    std::size_t f = 0;
    for (int i = 0; i < n; ++i) f = f * dim[static_cast<std::size_t>(i)] + idx[static_cast<std::size_t>(i)];
    return f;
  };

  // Histogram of coordinate tuples over the whole lattice, placed at
  // (v_1+1, ..., v_n+1) so the cumulative table directly counts v_i < c_i.
  const std::uint64_t lattice = std::uint64_t{1} << bits;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n));
  for (std::uint64_t v = 0; v < lattice; ++v) {
    const UnitCoord x(v << (UnitCoord::precision - bits));
    for (int i = 1; i <= n; ++i) {
      const int t = budget[static_cast<std::size_t>(i - 1)];
      std::uint64_t coord_val = 0;
      for (int j = 1; j <= t; ++j)
        coord_val = (coord_val << 1) | (Recipe::digit(x, digit_position(n, i, j)) ? 1u : 0u);
      idx[static_cast<std::size_t>(i - 1)] = static_cast<std::size_t>(coord_val) + 1;
    }
    table[flat(idx)] += 1;
  }

  // Cumulative sums along each axis turn the histogram into
  // T[c] = #{x : v_i(x) < c_i for all i}.
  for (int axis = 0; axis < n; ++axis) {
    std::size_t stride = 1;
    for (int i = axis + 1; i < n; ++i) stride *= dim[static_cast<std::size_t>(i)];
    for (std::size_t f = 0; f < table_size; ++f) {
      const std::size_t pos = (f / stride) % dim[static_cast<std::size_t>(axis)];
      if (pos > 0) table[f] += table[f - stride];
    }
  }

  // The expected count for threshold tuple (c_i / 2^{t_i}) is
  // 2^bits * prod(c_i / 2^{t_i}) = prod(c_i) since the budgets sum to bits.
  std::vector<std::size_t> c(static_cast<std::size_t>(n), 0);
  for (;;) {
    std::uint64_t expected = 1;
    for (int i = 0; i < n; ++i) expected *= static_cast<std::uint64_t>(c[static_cast<std::size_t>(i)]);
    if (table[flat(c)] != expected) return false;
    int axis = n - 1;
    while (axis >= 0) {
      if (++c[static_cast<std::size_t>(axis)] < dim[static_cast<std::size_t>(axis)]) break;
      c[static_cast<std::size_t>(axis)] = 0;
      --axis;
    }
    if (axis < 0) break;
  }
  return true;
}

// Exhaustive injectivity check of r_n on a `bits`-bit input lattice.
inline bool recipe_injective_exhaustive(int n, int bits) {
  if (bits > 24) throw error("unsupported lattice size");
  const std::uint64_t lattice = std::uint64_t{1} << bits;
  std::vector<std::uint64_t> keys;
  keys.reserve(lattice);
  for (std::uint64_t v = 0; v < lattice; ++v) {
    const UnitCoord x(v << (UnitCoord::precision - bits));
    std::uint64_t key = 0;
    for (int i = 1; i <= n; ++i) {
      const int t = digit_budget(n, i, bits);
      for (int j = 1; j <= t; ++j)
        key = (key << 1) | (Recipe::digit(x, digit_position(n, i, j)) ? 1u : 0u);
    }
    keys.push_back(key);
  }
  std::sort(keys.begin(), keys.end());
  return std::adjacent_find(keys.begin(), keys.end()) == keys.end();
}

}  // namespace graphonlab
