// SPDX-License-Identifier: Apache-2.0
#pragma once

// Seeded generators and brute-force references shared by the test suites.
// The references enumerate explicitly and share no code with the library.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "algexpr/algexpr.hpp"

namespace testing_support {

using namespace algexpr;

inline Graph random_graph(GraphKind kind, std::size_t n, double p, std::mt19937_64& rng) {
  Graph g(kind);
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
  std::bernoulli_distribution coin(p);
  for (VertexIndex u = 0; u < n; ++u) {
    for (VertexIndex v = 0; v < n; ++v) {
      if (u == v || (kind == GraphKind::undirected && v < u)) continue;
      if (coin(rng)) g.add_edge_unchecked(u, v);
    }
  }
  g.sort_adjacency();
  return g;
}

/// Multiples of 1/16 in [-5, 5].
inline std::vector<double> random_weights(std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(-80, 80);
  std::vector<double> w(n);
  for (auto& x : w) x = pick(rng) / 16.0;
  return w;
}

inline WeightMap weight_map(const Graph& g, const std::vector<double>& w) {
  WeightMap m;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) m[g.name(v)] = w[v];
  return m;
}

inline std::uint64_t brute_triangles(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::uint64_t t = 0;
  for (VertexIndex a = 0; a < n; ++a) {
    for (VertexIndex b = a + 1; b < n; ++b) {
      if (!g.has_edge(a, b)) continue;
      for (VertexIndex c = b + 1; c < n; ++c) {
        if (g.has_edge(a, c) && g.has_edge(b, c)) ++t;
      }
    }
  }
  return t;
}

/// Walks every simple path from every start; visit(start, end, weight).
inline void for_each_simple_path(const Graph& g, const std::vector<double>& w,
                                 const std::function<void(VertexIndex, VertexIndex, double)>& visit) {
  const std::size_t n = g.vertex_count();
  std::vector<char> on(n, 0);
  std::function<void(VertexIndex, VertexIndex, double)> walk = [&](VertexIndex s, VertexIndex u,
                                                                   double acc) {
    visit(s, u, acc);
    on[u] = 1;
    for (VertexIndex v : g.out_neighbors(u)) {
      if (!on[v]) walk(s, v, acc + w[v]);
    }
    on[u] = 0;
  };
  for (VertexIndex s = 0; s < n; ++s) walk(s, s, w[s]);
}

/// Some simple cycle has negative weight.
inline bool brute_negative_cycle(const Graph& g, const std::vector<double>& w) {
  bool found = false;
  for_each_simple_path(g, w, [&](VertexIndex s, VertexIndex u, double acc) {
    if (u != s && g.has_edge(u, s) && acc < -1e-12) found = true;
  });
  return found;
}

/// Distances by enumerating simple paths; only meaningful without negative
/// cycles.
inline DistMatrix brute_apsp(const Graph& g, const std::vector<double>& w) {
  DistMatrix d(g.vertex_count());
  for_each_simple_path(g, w, [&](VertexIndex s, VertexIndex u, double acc) {
    d(s, u) = std::min(d(s, u), acc);
  });
  return d;
}

struct Shape {
  std::size_t k, h, l;
};

/// The seven parameter shapes plus cographs.
inline std::vector<Shape> shapes() {
  return {{0, 0, 0}, {0, 4, 0}, {3, 0, 0}, {0, 0, 3}, {2, 3, 0}, {2, 0, 2}, {0, 3, 2}, {2, 3, 2}};
}

inline GenSpec spec_for(GraphKind mode, Shape s, std::size_t budget, std::uint64_t seed,
                        Orientation o = Orientation::cyclic) {
  GenSpec spec;
  spec.mode = mode;
  spec.k = s.k;
  spec.h = s.h;
  spec.l = s.l;
  spec.budget = std::max(budget, min_budget(spec));
  spec.seed = seed;
  spec.orientation = o;
  return spec;
}

/// Seeded corpus cycling through shapes, budgets in [1, max_budget].
inline std::vector<GenSpec> corpus(GraphKind mode, std::size_t count, std::size_t max_budget,
                                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto all = shapes();
  std::vector<GenSpec> out;
  for (std::size_t i = 0; i < count; ++i) {
    Shape s = all[i % all.size()];
    std::size_t budget = std::uniform_int_distribution<std::size_t>(1, max_budget)(rng);
    auto o = static_cast<Orientation>(i % 3);
    out.push_back(spec_for(mode, s, budget, rng(), o));
  }
  return out;
}

/// Binds every pattern vertex of a subst-td node to a fresh expression
/// and returns the same substitution with the pattern made explicit.
inline ExprNode explicit_pattern(const ExprNode& subst_td, GraphKind mode) {
  Graph h = evaluate_node(*subst_td.pattern_expr, mode);
  std::vector<ExprNode> children(subst_td.children.begin(), subst_td.children.end());
  return make_subst(std::move(h), subst_td.bindings, std::move(children));
}

/// A td-pattern prepared both ways: as the layout a subst-td handler sees
/// and as the explicit pattern (vertex s is binding s) a subst handler sees.
struct TdPatternCase {
  std::unique_ptr<ExprNode> root;  // normalized pattern expression
  Layout layout;
  std::vector<std::size_t> where;  // binding s -> layout index
  Graph ordered;

  SubstTdContext context() const { return {layout, where, {}, {}}; }
  std::size_t size() const { return where.size(); }
};

inline TdPatternCase td_pattern_case(const ExprNode& pattern_expr, GraphKind mode,
                                     std::mt19937_64& rng) {
  TdPatternCase c;
  c.root = std::make_unique<ExprNode>(normalize_node(pattern_expr, mode));
  c.layout = build_layout(*c.root, mode, EdgePolicy::all);
  const Graph& h = c.layout.graph;
  std::vector<std::size_t> perm(h.vertex_count());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  c.where = perm;
  std::vector<VertexIndex> slot(h.vertex_count());
  c.ordered = Graph(mode);
  for (std::size_t s = 0; s < perm.size(); ++s) {
    slot[perm[s]] = static_cast<VertexIndex>(s);
    c.ordered.add_vertex(h.name(static_cast<VertexIndex>(perm[s])));
  }
  for (auto [u, v] : h.edges()) c.ordered.add_edge_unchecked(slot[u], slot[v]);
  c.ordered.sort_adjacency();
  return c;
}

}  // namespace testing_support
