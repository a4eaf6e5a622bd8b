// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "algexpr/error.hpp"
#include "algexpr/graph.hpp"
#include "algexpr/shortest_paths.hpp"

namespace algexpr {

/// Reference implementations kept deliberately simple and independent of
/// the fold code.

inline std::uint64_t oracle_triangles(const Graph& g) {
  if (g.directed()) throw ModeError("triangle oracle needs an undirected graph");
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<VertexIndex>> higher(n);
  for (VertexIndex u = 0; u < n; ++u) {
    for (VertexIndex v : g.neighbors(u)) {
      if (v > u) higher[u].push_back(v);
    }
    std::sort(higher[u].begin(), higher[u].end());
  }
  std::uint64_t count = 0;
  for (VertexIndex u = 0; u < n; ++u) {
    for (VertexIndex v : higher[u]) {
      const auto& a = higher[u];
      const auto& b = higher[v];
      auto i = a.begin();
      auto j = b.begin();
      while (i != a.end() && j != b.end()) {
        if (*i < *j) {
          ++i;
        } else if (*j < *i) {
          ++j;
        } else {
          ++count;
          ++i;
          ++j;
        }
      }
    }
  }
  return count;
}

/// Bellman-Ford from a zero-cost super-source on edge-shifted costs.
inline bool oracle_ncd(const Graph& g, std::span<const double> w) {
  const std::size_t n = g.vertex_count();
  std::vector<double> d(n, 0.0);
  for (std::size_t round = 0; round <= n; ++round) {
    bool changed = false;
    for (VertexIndex u = 0; u < n; ++u) {
      for (VertexIndex v : g.out_neighbors(u)) {
        if (d[u] + w[u] < d[v] - kTolerance) {
          d[v] = d[u] + w[u];
          changed = true;
        }
      }
    }
    if (!changed) return false;
  }
  return true;
}

/// Vertex-weighted distances by one Bellman-Ford run per source.
inline FloydResult oracle_apsp(const Graph& g, std::span<const double> w) {
  if (oracle_ncd(g, w)) return NegativeCycle{};
  const std::size_t n = g.vertex_count();
  DistMatrix d(n);
  std::vector<double> row(n);
  for (std::size_t s = 0; s < n; ++s) {
    std::fill(row.begin(), row.end(), kInfinity);
    row[s] = w[s];
    for (std::size_t round = 0; round < n; ++round) {
      bool changed = false;
      for (VertexIndex u = 0; u < n; ++u) {
        if (row[u] == kInfinity) continue;
        for (VertexIndex v : g.out_neighbors(u)) {
          if (row[u] + w[v] < row[v]) {
            row[v] = row[u] + w[v];
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    for (std::size_t v = 0; v < n; ++v) d(s, v) = row[v];
  }
  return d;
}

/// Exact tree-depth by memoized vertex deletion (directed edges are read
/// as undirected). Refuses graphs above `limit` vertices.
inline std::size_t oracle_treedepth(const Graph& g, std::size_t limit = 10) {
  const std::size_t n = g.vertex_count();
  if (n > limit || n > 20) {
    throw Error("tree-depth oracle refuses " + std::to_string(n) + " vertices (limit " +
                std::to_string(limit) + ")");
  }
  std::vector<std::uint32_t> adj(n, 0);
  for (auto [u, v] : g.edges()) {
    adj[u] |= 1u << v;
    adj[v] |= 1u << u;
  }
  const std::uint32_t full = (1u << n) - 1;
  std::vector<int> memo(std::size_t{1} << n, -1);
  memo[0] = 0;

  // Connected component of `set` containing its lowest vertex.
  auto component = [&](std::uint32_t set) {
    std::uint32_t seen = set & (~set + 1);
    std::uint32_t frontier = seen;
    while (frontier) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f; f &= f - 1) {
        next |= adj[__builtin_ctz(f)];
      }
      next &= set & ~seen;
      seen |= next;
      frontier = next;
    }
    return seen;
  };

  // Iterate subsets by increasing popcount so smaller sets are ready.
  std::vector<std::uint32_t> order(std::size_t{1} << n);
  for (std::uint32_t s = 0; s <= full; ++s) order[s] = s;
  std::sort(order.begin(), order.end(), [](std::uint32_t a, std::uint32_t b) {
    return __builtin_popcount(a) < __builtin_popcount(b);
  });
  for (std::uint32_t set : order) {
    if (set == 0) continue;
    std::uint32_t comp = component(set);
    if (comp != set) {
      int best = 0;
      for (std::uint32_t rest = set; rest;) {
        std::uint32_t c = component(rest);
        best = std::max(best, memo[c]);
        rest &= ~c;
      }
      memo[set] = best;
      continue;
    }
    int best = static_cast<int>(n) + 1;
    for (std::uint32_t f = set; f; f &= f - 1) {
      std::uint32_t v = f & (~f + 1);
      best = std::min(best, 1 + memo[set & ~v]);
    }
    memo[set] = best;
  }
  return static_cast<std::size_t>(memo[full]);
}

}  // namespace algexpr
