#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphonlab/estimate.hpp"
#include "graphonlab/graph_spec.hpp"
#include "graphonlab/graphon.hpp"
#include "graphonlab/rng.hpp"

namespace graphonlab {

struct roots_error : error {
  explicit roots_error(const std::string& what) : error(what) {}
};

// Root coordinates together with the probability weight of the tuple
// inducing the root graph.
struct RootAssignment {
  std::vector<UnitCoord> coords;
  double weight = 0.0;
};

namespace detail {

// A graph with its free pairs resolved one way, together with the counting
// multiplier in the density formula: (movable re-labelings) / |Aut|, where
// movable vertices are the non-roots grouped by decoration.
struct Resolution {
  GraphSpec g;
  double multiplier = 1.0;
};

inline double movable_factor(const GraphSpec& g) {
  std::map<std::string, int> groups;
  for (int v = 0; v < g.order(); ++v)
    if (!g.is_root(v)) ++groups[g.label(v)];
  double f = 1.0;
  for (const auto& [label, count] : groups)
    for (int i = 2; i <= count; ++i) f *= i;
  return f;
}

inline std::vector<Resolution> resolutions_of(const GraphSpec& g,
                                              bool resolve_root_pairs) {
  std::vector<std::pair<int, int>> free_pairs;
  for (int i = 0; i < g.order(); ++i)
    for (int j = i + 1; j < g.order(); ++j) {
      if (g.state(i, j) != EdgeState::free_pair) continue;
      if (!resolve_root_pairs && g.is_root(i) && g.is_root(j)) continue;
      free_pairs.emplace_back(i, j);
    }
  if (free_pairs.size() > 16) throw error("too many free pairs to resolve");
  std::vector<Resolution> out;
  const std::uint32_t combos = 1u << free_pairs.size();
  out.reserve(combos);
  for (std::uint32_t mask = 0; mask < combos; ++mask) {
    GraphSpec r = g;
    for (std::size_t p = 0; p < free_pairs.size(); ++p)
      r.set_state(free_pairs[p].first, free_pairs[p].second,
                  (mask >> p) & 1u ? EdgeState::edge : EdgeState::nonedge);
    out.push_back({r, movable_factor(r) / static_cast<double>(aut_count(r))});
  }
  return out;
}

// Per-vertex sampling/evaluation context: decorated vertices live on their
// part's scaled coordinates, everything else on global coordinates.
struct VertexPlan {
  bool decorated = false;
  std::vector<int> part;  // per vertex, when decorated
};

inline VertexPlan plan_vertices(const GraphSpec& g, const Graphon& W) {
  VertexPlan plan;
  plan.decorated = g.decorated();
  if (!plan.decorated) return plan;
  if (!W.layout) throw layout_error("decorated graph needs a partitioned graphon");
  plan.part.resize(static_cast<std::size_t>(g.order()));
  for (int v = 0; v < g.order(); ++v) {
    const std::string& label = g.label(v);
    const int idx = W.layout->index_of(label);
    if (idx < 0) throw layout_error("unknown part label: " + label);
    plan.part[static_cast<std::size_t>(v)] = idx;
  }
  return plan;
}

inline double pair_value(const Graphon& W, const VertexPlan& plan,
                         const std::vector<UnitCoord>& coords, int i, int j) {
  if (plan.decorated) {
    const int pi = plan.part[static_cast<std::size_t>(i)];
    const int pj = plan.part[static_cast<std::size_t>(j)];
    if (W.part_pair_eval)
      return W.part_pair_eval(pi, pj, coords[static_cast<std::size_t>(i)],
                              coords[static_cast<std::size_t>(j)]);
    return W.eval(W.layout->from_part_coord(pi, coords[static_cast<std::size_t>(i)]),
                  W.layout->from_part_coord(pj, coords[static_cast<std::size_t>(j)]));
  }
  return W.eval(coords[static_cast<std::size_t>(i)], coords[static_cast<std::size_t>(j)]);
}

inline double state_factor(EdgeState s, double w) {
  switch (s) {
    case EdgeState::edge: return w;
    case EdgeState::nonedge: return 1.0 - w;
    case EdgeState::free_pair: return 1.0;
  }
  return 1.0;
}

}  // namespace detail

// Induced density d(H, W) by Monte Carlo.  Free pairs are evaluated as the
// sum over their resolutions, sharing one coordinate stream so the two
// resolutions of a pair are antithetically coupled.
inline DensityEstimate density(const GraphSpec& H, const Graphon& W,
                               std::uint64_t budget, std::uint64_t seed) {
  if (H.rooted()) throw error("density: use rooted_density for rooted graphs");
  const int n = H.order();
  if (n == 1) return DensityEstimate::exact(1.0);
  const detail::VertexPlan plan = detail::plan_vertices(H, W);
  const auto resolutions = detail::resolutions_of(H, false);

  CounterRng rng(seed);
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);

  McMoments m = parallel_reduce(
      budget, McMoments{},
      [&](std::uint64_t b, std::uint64_t e, McMoments& acc) {
        std::vector<UnitCoord> coords(static_cast<std::size_t>(n));
        std::vector<double> w(pairs.size());
        for (std::uint64_t s = b; s < e; ++s) {
          for (int v = 0; v < n; ++v)
            coords[static_cast<std::size_t>(v)] =
                rng.coord(100 + static_cast<std::uint64_t>(v), s);
          for (std::size_t p = 0; p < pairs.size(); ++p)
            w[p] = detail::pair_value(W, plan, coords, pairs[p].first, pairs[p].second);
          double total = 0.0;
          for (const auto& res : resolutions) {
            double prod = res.multiplier;
            for (std::size_t p = 0; p < pairs.size() && prod != 0.0; ++p)
              prod *= detail::state_factor(
                  res.g.state(pairs[p].first, pairs[p].second), w[p]);
            total += prod;
          }
          acc.add(total);
        }
      },
      [](McMoments& a, const McMoments& b) { a.merge(b); });
  return DensityEstimate::from_moments(m);
}

// Conditional density of a rooted graph given fixed root coordinates:
// the probability that uniformly sampled non-roots complete the root tuple
// to an induced copy of H.
inline DensityEstimate rooted_density(const GraphSpec& H, const Graphon& W,
                                      const RootAssignment& roots,
                                      std::uint64_t budget, std::uint64_t seed) {
  if (!H.rooted()) throw error("rooted_density needs a rooted graph");
  const auto& ridx = H.roots();
  if (roots.coords.size() != ridx.size())
    throw roots_error("root coordinate count mismatch");
  const int n = H.order();
  const detail::VertexPlan plan = detail::plan_vertices(H, W);

  // weight of the tuple inducing the root graph
  double c = 1.0;
  for (std::size_t a = 0; a < ridx.size(); ++a)
    for (std::size_t b = a + 1; b < ridx.size(); ++b) {
      std::vector<UnitCoord> rc(static_cast<std::size_t>(n));
      rc[static_cast<std::size_t>(ridx[a])] = roots.coords[a];
      rc[static_cast<std::size_t>(ridx[b])] = roots.coords[b];
      const double w = detail::pair_value(W, plan, rc, ridx[a], ridx[b]);
      c *= detail::state_factor(H.state(ridx[a], ridx[b]), w);
    }
  if (c <= 0.0) throw roots_error("root tuple incompatible with the root graph");

  const auto resolutions = detail::resolutions_of(H, false);
  std::vector<int> nonroots;
  for (int v = 0; v < n; ++v)
    if (!H.is_root(v)) nonroots.push_back(v);
  std::vector<std::pair<int, int>> pairs;  // pairs with at least one non-root
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!(H.is_root(i) && H.is_root(j))) pairs.emplace_back(i, j);

  CounterRng rng(seed);
  McMoments m = parallel_reduce(
      budget, McMoments{},
      [&](std::uint64_t b, std::uint64_t e, McMoments& acc) {
        std::vector<UnitCoord> coords(static_cast<std::size_t>(n));
        for (std::size_t a = 0; a < ridx.size(); ++a)
          coords[static_cast<std::size_t>(ridx[a])] = roots.coords[a];
        std::vector<double> w(pairs.size());
        for (std::uint64_t s = b; s < e; ++s) {
          for (int v : nonroots)
            coords[static_cast<std::size_t>(v)] =
                rng.coord(200 + static_cast<std::uint64_t>(v), s);
          for (std::size_t p = 0; p < pairs.size(); ++p)
            w[p] = detail::pair_value(W, plan, coords, pairs[p].first, pairs[p].second);
          double total = 0.0;
          for (const auto& res : resolutions) {
            double prod = res.multiplier;
            for (std::size_t p = 0; p < pairs.size() && prod != 0.0; ++p)
              prod *= detail::state_factor(
                  res.g.state(pairs[p].first, pairs[p].second), w[p]);
            total += prod;
          }
          acc.add(total);
        }
      },
      [](McMoments& a, const McMoments& b) { a.merge(b); });
  return DensityEstimate::from_moments(m);
}

// Density of a decorated graph: vertices are sampled uniformly within their
// labeled parts (the conditional law given the decoration event).
inline DensityEstimate decorated_density(const GraphSpec& H, const Graphon& W,
                                         std::uint64_t budget, std::uint64_t seed) {
  if (!H.decorated()) throw layout_error("decorated_density needs decorations");
  return density(H, W, budget, seed);
}

// Draws a root tuple from the root-graph-conditioned measure by rejection:
// proposals are uniform (within parts, when decorated) and accepted with
// probability c(tuple).
inline RootAssignment sample_roots(const GraphSpec& H, const Graphon& W,
                                   std::uint64_t seed, std::uint64_t index) {
  if (!H.rooted()) throw error("sample_roots needs a rooted graph");
  const auto& ridx = H.roots();
  const detail::VertexPlan plan = detail::plan_vertices(H, W);
  CounterRng rng(seed);
  const int n = H.order();
  for (std::uint64_t attempt = 0; attempt < 100000; ++attempt) {
    std::vector<UnitCoord> coords(static_cast<std::size_t>(n));
    for (std::size_t a = 0; a < ridx.size(); ++a)
      coords[static_cast<std::size_t>(ridx[a])] =
          rng.coord(300 + static_cast<std::uint64_t>(a),
                    index * 100000 + attempt);
    double c = 1.0;
    for (std::size_t a = 0; a < ridx.size() && c > 0.0; ++a)
      for (std::size_t b = a + 1; b < ridx.size() && c > 0.0; ++b) {
        const double w = detail::pair_value(W, plan, coords, ridx[a], ridx[b]);
        c *= detail::state_factor(H.state(ridx[a], ridx[b]), w);
      }
    if (c <= 0.0) continue;
    const double u = rng.u01(399, index * 100000 + attempt);
    if (u < c) {
      RootAssignment out;
      for (std::size_t a = 0; a < ridx.size(); ++a)
        out.coords.push_back(coords[static_cast<std::size_t>(ridx[a])]);
      out.weight = c;
      return out;
    }
  }
  throw roots_error("root sampling failed: root graph has vanishing probability");
}

// ---- quadrature ------------------------------------------------------------

namespace detail {

// Joint moment of a pair set on <=3 vertices from the closed-form table.
inline double moment_of(const MomentTable& mt, int n,
                        const std::vector<std::pair<int, int>>& set) {
  switch (set.size()) {
    case 0: return 1.0;
    case 1: return mt.edge;
    case 2: return mt.cherry;  // on <=3 vertices two pairs always share a vertex
    case 3: return mt.triangle;
  }
  throw error("moment table limited to 3 vertices");
  (void)n;
}

inline double integral_by_moments(const GraphSpec& g, const MomentTable& mt) {
  std::vector<std::pair<int, int>> edges, nonedges;
  for (int i = 0; i < g.order(); ++i)
    for (int j = i + 1; j < g.order(); ++j) {
      if (g.state(i, j) == EdgeState::edge) edges.emplace_back(i, j);
      if (g.state(i, j) == EdgeState::nonedge) nonedges.emplace_back(i, j);
    }
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << nonedges.size()); ++mask) {
    auto set = edges;
    int bits = 0;
    for (std::size_t p = 0; p < nonedges.size(); ++p)
      if ((mask >> p) & 1u) {
        set.push_back(nonedges[p]);
        ++bits;
      }
    total += (bits % 2 ? -1.0 : 1.0) * moment_of(mt, g.order(), set);
  }
  return total;
}

inline double integral_by_cells(const GraphSpec& g, const StepStructure& st) {
  const int n = g.order();
  const std::size_t m = st.widths.size();
  std::vector<std::size_t> cell(static_cast<std::size_t>(n), 0);
  double total = 0.0;
  for (;;) {
    double term = 1.0;
    for (int v = 0; v < n; ++v) term *= st.widths[cell[static_cast<std::size_t>(v)]];
    for (int i = 0; i < n && term != 0.0; ++i)
      for (int j = i + 1; j < n && term != 0.0; ++j)
        term *= state_factor(g.state(i, j),
                             st.value[cell[static_cast<std::size_t>(i)]]
                                     [cell[static_cast<std::size_t>(j)]]);
    total += term;
    int v = n - 1;
    while (v >= 0) {
      if (++cell[static_cast<std::size_t>(v)] < m) break;
      cell[static_cast<std::size_t>(v)] = 0;
      --v;
    }
    if (v < 0) break;
  }
  return total;
}

inline double integral_by_grid(const GraphSpec& g, const Graphon& W,
                               const VertexPlan& plan, int grid) {
  const int n = g.order();
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  std::vector<UnitCoord> coords(static_cast<std::size_t>(n));
  const std::uint64_t two53 = UnitCoord::one;
  double total = 0.0;
  std::uint64_t cells = 0;
  for (;;) {
    for (int v = 0; v < n; ++v) {
      const double mid =
          (static_cast<double>(idx[static_cast<std::size_t>(v)]) + 0.5) / grid;
      coords[static_cast<std::size_t>(v)] =
          UnitCoord(static_cast<std::uint64_t>(mid * static_cast<double>(two53)));
    }
    double term = 1.0;
    for (int i = 0; i < n && term != 0.0; ++i)
      for (int j = i + 1; j < n && term != 0.0; ++j)
        term *= state_factor(g.state(i, j), pair_value(W, plan, coords, i, j));
    total += term;
    ++cells;
    int v = n - 1;
    while (v >= 0) {
      if (++idx[static_cast<std::size_t>(v)] < static_cast<std::size_t>(grid)) break;
      idx[static_cast<std::size_t>(v)] = 0;
      --v;
    }
    if (v < 0) break;
  }
  return total / static_cast<double>(cells);
}

}  // namespace detail

// Induced density by quadrature.  Exact when the graphon carries analytic
// structure (closed-form moments, a cell decomposition, or pair densities);
// otherwise a deterministic product-grid rule at a resolution shrinking with
// the graph order (2^10 points per axis for pairs).
inline DensityEstimate density_quadrature(const GraphSpec& H, const Graphon& W) {
  if (H.rooted()) throw error("quadrature for rooted graphs is not supported");
  const int n = H.order();
  if (n == 1) return DensityEstimate::exact(1.0);
  if (n > 4) throw too_large_error("quadrature limited to 4 vertices");
  const detail::VertexPlan plan = detail::plan_vertices(H, W);
  const auto resolutions = detail::resolutions_of(H, false);

  double total = 0.0;
  for (const auto& res : resolutions) {
    double integral = 0.0;
    if (!H.decorated() && W.moments && n <= 3) {
      integral = detail::integral_by_moments(res.g, *W.moments);
    } else if (!H.decorated() && W.step) {
      integral = detail::integral_by_cells(res.g, *W.step);
    } else if (!H.decorated() && n == 2 && W.edge_density) {
      const double e = W.edge_density();
      integral = res.g.state(0, 1) == EdgeState::edge ? e : 1.0 - e;
    } else if (H.decorated() && n == 2 && W.pair_density) {
      const double e = W.pair_density(plan.part[0], plan.part[1]);
      integral = res.g.state(0, 1) == EdgeState::edge ? e : 1.0 - e;
    } else {
      const int grid = n == 2 ? 1024 : (n == 3 ? 160 : 40);
      integral = detail::integral_by_grid(res.g, W, plan, grid);
    }
    total += res.multiplier * integral;
  }
  return DensityEstimate::exact(total);
}

// Relative degree of the vertex at x in the named part of a partitioned
// graphon.  Uses the graphon's analytic profile when present; otherwise a
// deterministic midpoint rule over the part's interval.
inline DensityEstimate relative_degree(const Graphon& W, UnitCoord x, int part,
                                       int grid = 4096) {
  if (!W.layout) throw layout_error("relative_degree needs a partitioned graphon");
  if (part < 0 || part >= W.layout->part_count()) throw layout_error("bad part index");
  if (W.part_relative_degree)
    return DensityEstimate::exact(W.part_relative_degree(x, part));
  double sum = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double mid = (static_cast<double>(i) + 0.5) / grid;
    const UnitCoord y = W.layout->from_part_coord(part, UnitCoord::from_double(mid));
    sum += W.eval(x, y);
  }
  return DensityEstimate::exact(sum / grid);
}

inline DensityEstimate relative_degree(const Graphon& W, UnitCoord x,
                                       const std::string& part_name, int grid = 4096) {
  if (!W.layout) throw layout_error("relative_degree needs a partitioned graphon");
  const int idx = W.layout->index_of(part_name);
  if (idx < 0) throw layout_error("unknown part label: " + part_name);
  return relative_degree(W, x, idx, grid);
}

}  // namespace graphonlab
