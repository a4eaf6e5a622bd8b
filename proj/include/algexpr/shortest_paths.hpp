// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <queue>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "algexpr/error.hpp"
#include "algexpr/graph.hpp"

namespace algexpr {

/// Marker result: the graph has a cycle of negative total vertex weight.
struct NegativeCycle {
  bool operator==(const NegativeCycle&) const = default;
};

/// Edge costs aligned with Graph::out_neighbors: costs[u][i] belongs to the
/// edge from u to out_neighbors(u)[i].
using EdgeCosts = std::vector<std::vector<double>>;

/// Moves vertex weights onto outgoing edges: cost(x, y) = w(x).
inline EdgeCosts edge_shift(const Graph& g, std::span<const double> w) {
  if (!g.directed()) throw ModeError("edge shifting needs a directed graph");
  if (w.size() != g.vertex_count()) throw WeightError("weight vector size mismatch");
  EdgeCosts costs(g.vertex_count());
  for (VertexIndex u = 0; u < g.vertex_count(); ++u) {
    costs[u].assign(g.out_neighbors(u).size(), w[u]);
  }
  return costs;
}

inline EdgeCosts edge_shift(const Graph& g, const WeightMap& w) {
  auto dense = dense_weights(g, w);
  return edge_shift(g, dense);
}

/// True iff every reduced cost c(e) + pi(tail) - pi(head) is >= -tolerance.
inline bool check_potential(const Graph& g, const EdgeCosts& c,
                            std::span<const double> pi,
                            double tolerance = kTolerance) {
  for (VertexIndex u = 0; u < g.vertex_count(); ++u) {
    auto out = g.out_neighbors(u);
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (c[u][i] + pi[u] - pi[out[i]] < -tolerance) return false;
    }
  }
  return true;
}

struct SourceLabel {
  std::size_t vertex;
  double label;
};

/// Multi-source Dijkstra. `reduced(u, v)` gives the cost of edge u->v and must
/// be non-negative up to kTolerance; source labels may be negative. Tiny
/// negative costs inside the tolerance are clamped to zero.
template <AdjacencyView View, class Reduced>
std::vector<double> dijkstra(const View& view, Reduced&& reduced,
                             std::span<const SourceLabel> sources) {
  std::vector<double> dist(view.size(), kInfinity);
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  for (const auto& s : sources) {
    if (s.label < dist[s.vertex]) {
      dist[s.vertex] = s.label;
      queue.emplace(s.label, s.vertex);
    }
  }
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    view.for_each_out(u, [&](std::size_t v) {
      double cost = reduced(u, v);
      if (cost < 0) {
        if (cost < -kTolerance) {
          throw ContractViolation("negative reduced cost in Dijkstra");
        }
        cost = 0;
      }
      double candidate = d + cost;
      if (candidate < dist[v]) {
        dist[v] = candidate;
        queue.emplace(candidate, v);
      }
    });
  }
  return dist;
}

/// Labels under reduced costs c_pi; convert back with
/// c(P) = label + pi(v) - pi(start) as needed.
inline std::vector<double> dijkstra_reduced(const Graph& g, const EdgeCosts& c,
                                            std::span<const double> pi,
                                            std::span<const SourceLabel> sources) {
  if (!g.directed()) throw ModeError("dijkstra_reduced needs a directed graph");
  std::vector<double> dist(g.vertex_count(), kInfinity);
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  for (const auto& s : sources) {
    if (s.label < dist[s.vertex]) {
      dist[s.vertex] = s.label;
      queue.emplace(s.label, s.vertex);
    }
  }
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    auto out = g.out_neighbors(static_cast<VertexIndex>(u));
    for (std::size_t i = 0; i < out.size(); ++i) {
      VertexIndex v = out[i];
      double cost = c[u][i] + pi[u] - pi[v];
      if (cost < 0) {
        if (cost < -kTolerance) {
          throw ContractViolation("infeasible potential on edge " + g.name(
              static_cast<VertexIndex>(u)) + " " + g.name(v));
        }
        cost = 0;
      }
      if (d + cost < dist[v]) {
        dist[v] = d + cost;
        queue.emplace(dist[v], v);
      }
    }
  }
  return dist;
}

using FloydResult = std::variant<NegativeCycle, DistMatrix>;

/// Vertex-weighted all-pairs distances: a path weighs the sum of all its
/// vertices, endpoints included, and dist(u, u) = w(u).
inline FloydResult floyd_vertex_weighted(const Graph& g,
                                         std::span<const double> w) {
  const std::size_t n = g.vertex_count();
  DistMatrix d(n);
  for (std::size_t u = 0; u < n; ++u) {
    d(u, u) = w[u];
    for (VertexIndex v : g.out_neighbors(static_cast<VertexIndex>(u))) {
      d(u, v) = std::min(d(u, v), w[u] + w[v]);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double via = d(i, k);
      if (via == kInfinity) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const double candidate = via + d(k, j) - w[k];
        if (candidate < d(i, j)) d(i, j) = candidate;
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (d(i, i) < w[i] - kTolerance) return NegativeCycle{};
    }
  }
  return d;
}

inline FloydResult floyd_vertex_weighted(const Graph& g, const WeightMap& w) {
  auto dense = dense_weights(g, w);
  return floyd_vertex_weighted(g, dense);
}

inline Graph reverse(const Graph& g) {
  if (!g.directed()) throw ModeError("reverse needs a directed graph");
  return g.reversed();
}

}  // namespace algexpr
