// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "algexpr/error.hpp"

namespace algexpr {

using VertexIndex = std::uint32_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Absolute tolerance for feasibility and equality checks on weights.
inline constexpr double kTolerance = 1e-9;

enum class GraphKind { directed, undirected };

inline std::string_view to_string(GraphKind kind) {
  return kind == GraphKind::directed ? "directed" : "undirected";
}

/// Vertex names are `[A-Za-z0-9_.-]+`.
inline bool is_valid_name(std::string_view name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '_' || c == '.' || c == '-';
  });
}

/// Half-open interval of vertex indices.
struct NodeRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool empty() const { return begin == end; }
  bool contains(std::size_t v) const { return v >= begin && v < end; }
  bool operator==(const NodeRange&) const = default;
};

/// Simple graph (no loops, no parallel edges) with named vertices.
///
/// Undirected graphs keep a single neighbour list per vertex; for them
/// out_neighbors() and in_neighbors() coincide.
class Graph {
 public:
  explicit Graph(GraphKind kind = GraphKind::directed) : kind_(kind) {}

  GraphKind kind() const { return kind_; }
  bool directed() const { return kind_ == GraphKind::directed; }
  std::size_t vertex_count() const { return names_.size(); }
  std::size_t size() const { return names_.size(); }
  std::size_t edge_count() const { return edge_count_; }

  VertexIndex add_vertex(std::string name) {
    if (!is_valid_name(name)) throw Error("invalid vertex name '" + name + "'");
    auto index = static_cast<VertexIndex>(names_.size());
    if (!index_.emplace(name, index).second) {
      throw Error("duplicate vertex name '" + name + "'");
    }
    names_.push_back(std::move(name));
    out_.emplace_back();
    if (directed()) in_.emplace_back();
    return index;
  }

  void add_edge(VertexIndex u, VertexIndex v) {
    if (u >= vertex_count() || v >= vertex_count()) {
      throw Error("edge endpoint out of range");
    }
    if (u == v) throw Error("loop at vertex '" + names_[u] + "'");
    if (has_edge(u, v)) {
      throw Error("parallel edge " + names_[u] + " " + names_[v]);
    }
    add_edge_unchecked(u, v);
  }

  void add_edge(std::string_view u, std::string_view v) {
    add_edge(require(u), require(v));
  }

  /// Caller guarantees u != v, both in range, and the edge is new.
  void add_edge_unchecked(VertexIndex u, VertexIndex v) {
    out_[u].push_back(v);
    if (directed()) {
      in_[v].push_back(u);
    } else {
      out_[v].push_back(u);
    }
    ++edge_count_;
    sorted_ = false;
  }

  bool has_edge(VertexIndex u, VertexIndex v) const {
    const auto& from_u = out_[u];
    const auto& into_v = directed() ? in_[v] : out_[v];
    const auto& shorter = from_u.size() <= into_v.size() ? from_u : into_v;
    const VertexIndex target = &shorter == &from_u ? v : u;
    if (sorted_) return std::binary_search(shorter.begin(), shorter.end(), target);
    return std::find(shorter.begin(), shorter.end(), target) != shorter.end();
  }

  std::span<const VertexIndex> out_neighbors(VertexIndex u) const {
    return out_[u];
  }
  std::span<const VertexIndex> in_neighbors(VertexIndex u) const {
    return directed() ? std::span<const VertexIndex>(in_[u])
                      : std::span<const VertexIndex>(out_[u]);
  }
  std::span<const VertexIndex> neighbors(VertexIndex u) const {
    return out_[u];
  }

  template <class Fn>
  void for_each_out(std::size_t u, Fn&& fn) const {
    for (VertexIndex v : out_[u]) fn(static_cast<std::size_t>(v));
  }
  template <class Fn>
  void for_each_in(std::size_t u, Fn&& fn) const {
    for (VertexIndex v : in_neighbors(static_cast<VertexIndex>(u))) {
      fn(static_cast<std::size_t>(v));
    }
  }

  /// Sorts every adjacency list; required by SubgraphView.
  void sort_adjacency() {
    for (auto& list : out_) std::sort(list.begin(), list.end());
    for (auto& list : in_) std::sort(list.begin(), list.end());
    sorted_ = true;
  }
  bool adjacency_sorted() const { return sorted_ || names_.empty(); }

  const std::string& name(VertexIndex u) const { return names_[u]; }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<VertexIndex> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  VertexIndex require(std::string_view name) const {
    auto found = find(name);
    if (!found) throw Error("unknown vertex '" + std::string(name) + "'");
    return *found;
  }

  /// Every edge once; undirected edges as (smaller index, larger index).
  std::vector<std::pair<VertexIndex, VertexIndex>> edges() const {
    std::vector<std::pair<VertexIndex, VertexIndex>> result;
    result.reserve(edge_count_);
    for (VertexIndex u = 0; u < out_.size(); ++u) {
      for (VertexIndex v : out_[u]) {
        if (directed() || u < v) result.emplace_back(u, v);
      }
    }
    return result;
  }

  /// Same vertex set and order, every edge flipped.
  Graph reversed() const {
    Graph result(kind_);
    for (const auto& n : names_) result.add_vertex(n);
    for (auto [u, v] : edges()) {
      if (directed()) {
        result.add_edge_unchecked(v, u);
      } else {
        result.add_edge_unchecked(u, v);
      }
    }
    if (sorted_) result.sort_adjacency();
    return result;
  }

  /// Induced subgraph on a contiguous index range, indices shifted to 0.
  Graph induced(NodeRange range) const {
    Graph result(kind_);
    for (std::size_t u = range.begin; u < range.end; ++u) {
      result.add_vertex(names_[u]);
    }
    for (std::size_t u = range.begin; u < range.end; ++u) {
      for (VertexIndex v : out_[u]) {
        if (!range.contains(v)) continue;
        if (!directed() && v < u) continue;
        result.add_edge_unchecked(static_cast<VertexIndex>(u - range.begin),
                                  static_cast<VertexIndex>(v - range.begin));
      }
    }
    result.sort_adjacency();
    return result;
  }

  /// Same vertices, edges and kind; vertex order may differ.
  bool same_as(const Graph& other) const {
    if (kind_ != other.kind_ || vertex_count() != other.vertex_count() ||
        edge_count() != other.edge_count()) {
      return false;
    }
    for (const auto& n : names_) {
      if (!other.find(n)) return false;
    }
    for (auto [u, v] : edges()) {
      if (!other.has_edge(other.require(names_[u]), other.require(names_[v]))) {
        return false;
      }
    }
    return true;
  }

 private:
  GraphKind kind_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexIndex> index_;
  std::vector<std::vector<VertexIndex>> out_;
  std::vector<std::vector<VertexIndex>> in_;
  std::size_t edge_count_ = 0;
  bool sorted_ = true;
};

/// Induced subgraph on a contiguous index range, without copying.
/// Local index i stands for global index range.begin + i.
class SubgraphView {
 public:
  SubgraphView(const Graph& graph, NodeRange range)
      : graph_(&graph), range_(range) {
    assert(graph.adjacency_sorted());
  }

  std::size_t size() const { return range_.size(); }
  NodeRange range() const { return range_; }
  const Graph& graph() const { return *graph_; }

  template <class Fn>
  void for_each_out(std::size_t u, Fn&& fn) const {
    visit(graph_->out_neighbors(global(u)), fn);
  }
  template <class Fn>
  void for_each_in(std::size_t u, Fn&& fn) const {
    visit(graph_->in_neighbors(global(u)), fn);
  }

  /// Neighbours of global vertex u that fall inside the range (global ids).
  std::span<const VertexIndex> out_within(VertexIndex u) const {
    return clip(graph_->out_neighbors(u));
  }
  std::span<const VertexIndex> in_within(VertexIndex u) const {
    return clip(graph_->in_neighbors(u));
  }

 private:
  VertexIndex global(std::size_t local) const {
    return static_cast<VertexIndex>(range_.begin + local);
  }

  std::span<const VertexIndex> clip(std::span<const VertexIndex> list) const {
    auto lo = std::lower_bound(list.begin(), list.end(),
                               static_cast<VertexIndex>(range_.begin));
    auto hi = std::lower_bound(lo, list.end(),
                               static_cast<VertexIndex>(range_.end));
    return {lo, hi};
  }

  template <class Fn>
  void visit(std::span<const VertexIndex> list, Fn& fn) const {
    for (VertexIndex v : clip(list)) fn(static_cast<std::size_t>(v - range_.begin));
  }

  const Graph* graph_;
  NodeRange range_;
};

/// Adaptor flipping edge directions of another view.
template <class View>
class ReversedView {
 public:
  explicit ReversedView(const View& view) : view_(&view) {}

  std::size_t size() const { return view_->size(); }

  template <class Fn>
  void for_each_out(std::size_t u, Fn&& fn) const {
    view_->for_each_in(u, fn);
  }
  template <class Fn>
  void for_each_in(std::size_t u, Fn&& fn) const {
    view_->for_each_out(u, fn);
  }

 private:
  const View* view_;
};

template <class V>
concept AdjacencyView = requires(const V& view, std::size_t u) {
  { view.size() } -> std::convertible_to<std::size_t>;
  view.for_each_out(u, [](std::size_t) {});
  view.for_each_in(u, [](std::size_t) {});
};

/// Vertex weights by name, as read from a weight file.
using WeightMap = std::map<std::string, double, std::less<>>;

/// Weights aligned with the vertex order of `graph`.
inline std::vector<double> dense_weights(const Graph& graph,
                                         const WeightMap& weights) {
  std::vector<double> result(graph.vertex_count());
  for (VertexIndex u = 0; u < graph.vertex_count(); ++u) {
    auto it = weights.find(graph.name(u));
    if (it == weights.end()) {
      throw WeightError("no weight for vertex '" + graph.name(u) + "'");
    }
    result[u] = it->second;
  }
  return result;
}

/// Dense square matrix of extended reals; +inf marks unreachable pairs.
class DistMatrix {
 public:
  DistMatrix() = default;
  explicit DistMatrix(std::size_t n, double fill = kInfinity)
      : n_(n), values_(n * n, fill) {}

  std::size_t size() const { return n_; }
  double& operator()(std::size_t i, std::size_t j) { return values_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const {
    return values_[i * n_ + j];
  }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(values_).subspan(i * n_, n_);
  }
  std::span<double> row(std::size_t i) {
    return std::span<double>(values_).subspan(i * n_, n_);
  }

  bool operator==(const DistMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

}  // namespace algexpr
