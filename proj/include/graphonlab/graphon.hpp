#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "graphonlab/dyadic.hpp"

namespace graphonlab {

struct invalid_step_error : error {
  explicit invalid_step_error(const std::string& what) : error(what) {}
};

// Small exact rational with positive denominator, for part boundaries and
// measures that are not dyadic (1/27 and friends).
struct Frac {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Frac& a, const Frac& b) {
    return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
  }
};

// Exact comparison of a lattice coordinate against a rational bound.
inline bool coord_less(UnitCoord x, const Frac& q) {
  return static_cast<__int128>(x.numerator()) * q.den <
         static_cast<__int128>(q.num) << UnitCoord::precision;
}
inline bool coord_ge(UnitCoord x, const Frac& q) { return !coord_less(x, q); }

struct PartInfo {
  std::string name;
  Frac measure;
  double degree = 0.0;  // expected degree of the part's vertices
};

// Consecutive-interval layout of named parts on [0,1].  All measures share a
// common denominator; membership tests are exact integer comparisons, and
// scaling into a part is exact whenever the part's measure is 1/den.
class PartitionedLayout {
 public:
  explicit PartitionedLayout(std::vector<PartInfo> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw layout_error("layout needs at least one part");
    den_ = 1;
    for (const auto& p : parts_) {
      if (p.measure.num <= 0 || p.measure.den <= 0)
        throw layout_error("part measures must be positive");
      den_ = lcm64(den_, p.measure.den);
    }
    cum_.push_back(0);
    for (const auto& p : parts_) {
      const std::int64_t scaled = p.measure.num * (den_ / p.measure.den);
      cum_.push_back(cum_.back() + scaled);
    }
    if (cum_.back() != den_) throw layout_error("part measures must sum to 1");
    for (std::size_t i = 0; i < parts_.size(); ++i)
      for (std::size_t j = i + 1; j < parts_.size(); ++j)
        if (parts_[i].degree == parts_[j].degree)
          throw layout_error("expected degrees must be pairwise distinct");
  }

  int part_count() const { return static_cast<int>(parts_.size()); }
  const PartInfo& part(int i) const { return parts_[static_cast<std::size_t>(i)]; }

  int index_of(const std::string& name) const {
    for (std::size_t i = 0; i < parts_.size(); ++i)
      if (parts_[i].name == name) return static_cast<int>(i);
    return -1;
  }

  Frac measure(int i) const {
    return Frac{cum_[static_cast<std::size_t>(i) + 1] - cum_[static_cast<std::size_t>(i)], den_};
  }
  Frac lower(int i) const { return Frac{cum_[static_cast<std::size_t>(i)], den_}; }
  Frac upper(int i) const { return Frac{cum_[static_cast<std::size_t>(i) + 1], den_}; }

  // Index of the part whose half-open interval contains x; the right
  // endpoint x = 1 is assigned to the last part.
  int part_of(UnitCoord x) const {
    const __int128 scaled = static_cast<__int128>(x.numerator()) * den_;
    std::int64_t cell = static_cast<std::int64_t>(scaled >> UnitCoord::precision);
    if (cell >= den_) cell = den_ - 1;
    int lo = 0, hi = part_count() - 1;
    while (lo < hi) {
      const int mid = (lo + hi) / 2;
      if (cell < cum_[static_cast<std::size_t>(mid) + 1])
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;
  }

  // Affine rescaling of x into [0,1) relative to part i.  Exact (same
  // lattice) when the part's width is 1/den; nearest-lattice otherwise.
  UnitCoord to_part_coord(int i, UnitCoord x) const {
    const std::size_t k = static_cast<std::size_t>(i);
    const std::int64_t width = cum_[k + 1] - cum_[k];
    const __int128 t = static_cast<__int128>(x.numerator()) * den_ -
                       (static_cast<__int128>(cum_[k]) << UnitCoord::precision);
    if (t < 0) throw layout_error("coordinate left of the part");
    if (width == 1) {
      const std::uint64_t num = static_cast<std::uint64_t>(t);
      if (num > UnitCoord::one) throw layout_error("coordinate right of the part");
      return UnitCoord(num);
    }
    const std::uint64_t num = static_cast<std::uint64_t>((t + width / 2) / width);
    return UnitCoord(num > UnitCoord::one ? UnitCoord::one : num);
  }

  // Global coordinate of the point at scaled position t within part i
  // (nearest lattice point).
  UnitCoord from_part_coord(int i, UnitCoord t) const {
    const std::size_t k = static_cast<std::size_t>(i);
    const std::int64_t width = cum_[k + 1] - cum_[k];
    const __int128 num = (static_cast<__int128>(cum_[k]) << UnitCoord::precision) +
                         static_cast<__int128>(t.numerator()) * width;
    return UnitCoord(static_cast<std::uint64_t>((num + den_ / 2) / den_));
  }

 private:
  static std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    std::int64_t x = a, y = b;
    while (y) {
      const std::int64_t r = x % y;
      x = y;
      y = r;
    }
    return a / x * b;
  }

  std::vector<PartInfo> parts_;
  std::int64_t den_ = 1;
  std::vector<std::int64_t> cum_;  // boundaries in units of 1/den_
};

// Exact cell decomposition of a piecewise-constant graphon: cell widths plus
// the value matrix.  Widths must sum to 1; quadrature over such graphons is a
// finite sum.
struct StepStructure {
  std::vector<double> widths;
  std::vector<std::vector<double>> value;
};

// Closed-form joint moments for graphs on up to 3 vertices:
// edge = int W, cherry = int W(x,y)W(y,z), triangle = int W(xy)W(yz)W(zx).
struct MomentTable {
  double edge = 0.0;
  double cherry = 0.0;
  double triangle = 0.0;
};

// An evaluable symmetric kernel [0,1]^2 -> [0,1].
//
// The evaluator is a closed function of exact lattice coordinates; optional
// hooks expose analytic structure (cell decompositions, closed-form moments,
// per-part-pair evaluation and densities) that the density engine uses for
// exact quadrature.  Instances are immutable after construction and safe for
// unrestricted concurrent evaluation.
struct Graphon {
  using Eval = std::function<double(UnitCoord, UnitCoord)>;

  std::string name;
  Eval eval;
  std::optional<PartitionedLayout> layout;
  std::shared_ptr<const StepStructure> step;
  std::optional<MomentTable> moments;

  // Analytic fast paths (all optional).
  std::function<double()> edge_density;                        // int int W
  std::function<double(int, int)> pair_density;                // mean over part pair
  std::function<double(int, int, UnitCoord, UnitCoord)> part_pair_eval;
  std::function<double(UnitCoord, int)> part_relative_degree;  // deg of x in part

  Graphon() = default;
  Graphon(std::string n, Eval e) : name(std::move(n)), eval(std::move(e)) {}

  double operator()(UnitCoord x, UnitCoord y) const { return eval(x, y); }
};

inline Graphon constant_graphon(double p) {
  if (p < 0.0 || p > 1.0) throw error("constant density outside [0,1]");
  Graphon g("constant", [p](UnitCoord, UnitCoord) { return p; });
  auto step = std::make_shared<StepStructure>();
  step->widths = {1.0};
  step->value = {{p}};
  g.step = std::move(step);
  g.moments = MomentTable{p, p * p, p * p * p};
  g.edge_density = [p] { return p; };
  return g;
}

// Piecewise-constant graphon over consecutive blocks.
inline Graphon step_graphon(const std::vector<std::vector<double>>& blocks,
                            const std::vector<double>& widths) {
  const std::size_t m = widths.size();
  if (m == 0 || blocks.size() != m)
    throw invalid_step_error("block matrix and widths must agree");
  double total = 0.0;
  for (double w : widths) {
    if (w <= 0.0) throw invalid_step_error("widths must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw invalid_step_error("widths must sum to 1");
  for (std::size_t i = 0; i < m; ++i) {
    if (blocks[i].size() != m) throw invalid_step_error("block matrix must be square");
    for (std::size_t j = 0; j < m; ++j) {
      if (blocks[i][j] < 0.0 || blocks[i][j] > 1.0)
        throw invalid_step_error("block densities must lie in [0,1]");
      if (blocks[i][j] != blocks[j][i])
        throw invalid_step_error("block matrix must be symmetric");
    }
  }
  std::vector<double> cum(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) cum[i + 1] = cum[i] + widths[i];
  cum[m] = 1.0;
  auto cell_of = [cum, m](UnitCoord x) {
    const double v = x.value();
    std::size_t lo = 0, hi = m - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (v < cum[mid + 1])
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;
  };
  Graphon g("step", [blocks, cell_of](UnitCoord x, UnitCoord y) {
    return blocks[cell_of(x)][cell_of(y)];
  });
  auto step = std::make_shared<StepStructure>();
  step->widths = widths;
  step->value = blocks;
  g.step = std::move(step);
  double e = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) e += widths[i] * widths[j] * blocks[i][j];
  g.edge_density = [e] { return e; };
  return g;
}

// W(x,y) = 1 iff x + y >= 1.  The closed-form moments below are the exact
// volumes of the corresponding constraint polytopes.
inline Graphon half_graphon() {
  Graphon g("half", [](UnitCoord x, UnitCoord y) {
    return x.numerator() + y.numerator() >= UnitCoord::one ? 1.0 : 0.0;
  });
  g.moments = MomentTable{0.5, 1.0 / 3.0, 0.25};
  g.edge_density = [] { return 0.5; };
  return g;
}

namespace detail {
inline int level_or_none(UnitCoord x) {
  if (x.numerator() == UnitCoord::one) return -1;
  return level_of(x).level;
}

inline std::shared_ptr<StepStructure> level_cells(int depth,
                                                  const std::function<double(int, int)>& v) {
  auto step = std::make_shared<StepStructure>();
  step->widths.resize(static_cast<std::size_t>(depth) + 1);
  double tail = 1.0;
  for (int k = 1; k <= depth; ++k) {
    step->widths[static_cast<std::size_t>(k - 1)] = std::ldexp(1.0, -k);
    tail -= step->widths[static_cast<std::size_t>(k - 1)];
  }
  step->widths[static_cast<std::size_t>(depth)] = tail;
  step->value.assign(static_cast<std::size_t>(depth) + 1,
                     std::vector<double>(static_cast<std::size_t>(depth) + 1, 0.0));
  for (int i = 1; i <= depth + 1; ++i)
    for (int j = 1; j <= depth + 1; ++j)
      step->value[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = v(i, j);
  return step;
}
}  // namespace detail

// kappa(x, y) = 1 iff x and y fall in the same level interval.
inline Graphon diagonal_checker(int depth = 40) {
  Graphon g("checker", [](UnitCoord x, UnitCoord y) {
    const int a = detail::level_or_none(x);
    const int b = detail::level_or_none(y);
    return (a > 0 && a == b) ? 1.0 : 0.0;
  });
  g.step = detail::level_cells(depth, [](int i, int j) { return i == j ? 1.0 : 0.0; });
  g.moments = MomentTable{1.0 / 3.0, 1.0 / 7.0, 1.0 / 7.0};
  g.edge_density = [] { return 1.0 / 3.0; };
  return g;
}

// Directed block function: 1 iff <x> = <y> + 1.  Used as a component of
// partitioned assemblies; its integral over the square is sum_k 2^-(k+1) 2^-k.
inline double shifted_checker_kernel(UnitCoord x, UnitCoord y) {
  const int a = detail::level_or_none(x);
  const int b = detail::level_or_none(y);
  return (a > 0 && b > 0 && a == b + 1) ? 1.0 : 0.0;
}

// Symmetric closure of the shifted checker: 1 iff the levels differ by one.
inline Graphon shifted_checker(int depth = 40) {
  Graphon g("shifted-checker", [](UnitCoord x, UnitCoord y) {
    const int a = detail::level_or_none(x);
    const int b = detail::level_or_none(y);
    return (a > 0 && b > 0 && (a == b + 1 || b == a + 1)) ? 1.0 : 0.0;
  });
  g.step = detail::level_cells(
      depth, [](int i, int j) { return (i == j + 1 || j == i + 1) ? 1.0 : 0.0; });
  g.edge_density = [] { return 1.0 / 3.0; };
  return g;
}

}  // namespace graphonlab
