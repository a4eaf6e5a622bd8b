// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "algexpr/error.hpp"
#include "algexpr/evaluate.hpp"
#include "algexpr/expr.hpp"
#include "algexpr/normalize.hpp"
#include "algexpr/params.hpp"

namespace algexpr {

struct LeafContext {
  NodeRange self;
};

struct VertexContext {
  const std::string& name;
  std::size_t index;  // layout index of the vertex
};

/// Payload of an inc node: the new vertex x plus read-only access to the
/// already built edges of its child.
struct IncContext {
  const std::string& name;
  std::size_t vertex;
  NodeRange child;
  NodeRange self;
  const Graph* graph;

  SubgraphView child_view() const { return SubgraphView(*graph, child); }
  /// Heads of x's out-edges (layout indices, sorted).
  std::span<const VertexIndex> out_targets() const {
    return child_view().out_within(static_cast<VertexIndex>(vertex));
  }
  /// Tails of x's in-edges; equals out_targets() for undirected graphs.
  std::span<const VertexIndex> in_sources() const {
    return child_view().in_within(static_cast<VertexIndex>(vertex));
  }
};

/// Payload of a subst node. Pattern vertex i corresponds to children[i].
struct SubstContext {
  const Graph& pattern;
  std::span<const NodeRange> parts;
  NodeRange self;
};

/// Pattern that comes as a tree-depth expression. `layout` is val(pattern)
/// built from the normalized pattern expression; binding i sits at layout
/// index layout_of_binding[i].
struct SubstTdContext {
  const Layout& layout;
  std::span<const std::size_t> layout_of_binding;
  std::span<const NodeRange> parts;
  NodeRange self;
};

struct FoldStats {
  std::size_t empty_count = 0;
  std::size_t vertex_count = 0;
  std::size_t inc_count = 0;
  std::size_t subst_count = 0;
  std::size_t subst_td_count = 0;
  std::size_t sum_pattern_order = 0;
  std::size_t max_inc_nesting = 0;
  std::size_t leaf_count = 0;
  std::size_t max_subst_order = 0;
  std::size_t max_pattern_td = 0;
  std::size_t graph_order = 0;  // |V| of the folded graph

  bool operator==(const FoldStats&) const = default;
};

template <class F>
struct FoldResult {
  F value;
  FoldStats stats;
};

struct NoObserver {
  template <class F>
  void operator()(std::size_t, NodeRange, const F&) const {}
};

/// Handler sets provide value_type plus base_empty, base_vertex, on_inc,
/// on_subst and on_subst_td with the context types above.
template <class H>
concept FoldHandlers = requires { typename H::value_type; };

namespace detail {

/// Pattern graph re-indexed so that vertex i is the pattern vertex bound to
/// child i. Returns the original when bindings already follow its order.
inline const Graph& ordered_pattern(const ExprNode& node, Graph& scratch) {
  const Graph& p = node.pattern->graph;
  bool identity = true;
  for (std::size_t i = 0; i < node.bindings.size() && identity; ++i) {
    identity = p.name(static_cast<VertexIndex>(i)) == node.bindings[i];
  }
  if (identity) return p;
  scratch = Graph(p.kind());
  std::vector<VertexIndex> to_slot(p.vertex_count());
  for (std::size_t i = 0; i < node.bindings.size(); ++i) {
    scratch.add_vertex(node.bindings[i]);
    to_slot[p.require(node.bindings[i])] = static_cast<VertexIndex>(i);
  }
  for (auto [u, v] : p.edges()) scratch.add_edge_unchecked(to_slot[u], to_slot[v]);
  scratch.sort_adjacency();
  return scratch;
}

}  // namespace detail

/// Bottom-up fold over a built layout, by explicit stack in post-order.
/// `observe(index, range, value)` runs after every node.
template <FoldHandlers H, class Observer = NoObserver>
FoldResult<typename H::value_type> fold_layout(const Layout& layout, H& handlers,
                                               Observer&& observe = {}) {
  using F = typename H::value_type;
  const PostOrder& order = layout.order;
  const Graph& g = layout.graph;
  FoldStats stats;
  stats.graph_order = g.vertex_count();
  std::vector<F> values;
  std::vector<std::size_t> nesting;
  std::vector<NodeRange> parts;

  for (std::size_t i = 0; i < order.size(); ++i) {
    const ExprNode& node = *order.nodes[i];
    const NodeRange self = layout.ranges[i];
    std::size_t depth = 0;
    try {
      switch (node.kind) {
        case NodeKind::empty:
          ++stats.empty_count;
          ++stats.leaf_count;
          values.push_back(handlers.base_empty(LeafContext{self}));
          break;
        case NodeKind::vertex:
          ++stats.vertex_count;
          ++stats.leaf_count;
          values.push_back(handlers.base_vertex(VertexContext{node.name, self.begin}));
          break;
        case NodeKind::inc: {
          ++stats.inc_count;
          depth = nesting.back() + 1;
          nesting.pop_back();
          F child = std::move(values.back());
          values.pop_back();
          IncContext ctx{node.name, self.end - 1, NodeRange{self.begin, self.end - 1},
                         self, &g};
          values.push_back(handlers.on_inc(std::move(child), ctx));
          break;
        }
        case NodeKind::subst:
        case NodeKind::subst_td: {
          const std::size_t t = node.children.size();
          for (std::size_t c = nesting.size() - t; c < nesting.size(); ++c) {
            depth = std::max(depth, nesting[c]);
          }
          nesting.resize(nesting.size() - t);
          parts.clear();
          for (std::size_t c : order.children(i)) parts.push_back(layout.ranges[c]);
          std::span<F> children(values.data() + values.size() - t, t);
          stats.sum_pattern_order += t;
          F result;
          if (node.kind == NodeKind::subst) {
            ++stats.subst_count;
            stats.max_subst_order = std::max(stats.max_subst_order, t);
            Graph scratch;
            const Graph& pattern = detail::ordered_pattern(node, scratch);
            result = handlers.on_subst(SubstContext{pattern, parts, self}, children);
          } else {
            ++stats.subst_td_count;
            stats.max_pattern_td =
                std::max(stats.max_pattern_td, inc_nesting(*node.pattern_expr));
            ExprNode pattern_root = normalize_node(*node.pattern_expr, g.kind());
            Layout pattern = build_layout(pattern_root, g.kind(), EdgePolicy::all);
            std::vector<std::size_t> where(t);
            for (std::size_t s = 0; s < t; ++s) {
              where[s] = pattern.graph.require(node.bindings[s]);
            }
            result = handlers.on_subst_td(SubstTdContext{pattern, where, parts, self},
                                          children);
          }
          values.resize(values.size() - t);
          values.push_back(std::move(result));
          break;
        }
        case NodeKind::union_:
        case NodeKind::join:
          throw Error("fold needs a normalized expression (found " +
                      std::string(keyword(node.kind)) + ")");
      }
    } catch (const FoldError&) {
      throw;
    } catch (const ContractViolation& e) {
      throw FoldError(node_path(order, i), e.what(), true);
    } catch (const std::exception& e) {
      throw FoldError(node_path(order, i), e.what());
    }
    nesting.push_back(depth);
    stats.max_inc_nesting = std::max(stats.max_inc_nesting, depth);
    observe(i, self, values.back());
  }
  if (values.empty()) throw Error("fold over an empty tree");
  return {std::move(values.back()), stats};
}

/// Folds a normalized expression. With `EdgePolicy::inc_subtrees` only the
/// edges inc handlers can see are built.
template <FoldHandlers H, class Observer = NoObserver>
FoldResult<typename H::value_type> fold(const Expression& e, H& handlers,
                                        EdgePolicy policy = EdgePolicy::inc_subtrees,
                                        Observer&& observe = {}) {
  if (!is_normalized(e.root)) throw Error("fold needs a normalized expression");
  Layout layout = build_layout(e.root, e.mode, policy);
  return fold_layout(layout, handlers, std::forward<Observer>(observe));
}

/// Checks the accounting bounds of a fold: sum of pattern orders at most
/// 2n, inc nesting at most k, explicit patterns of order at most max(h, 2),
/// pattern expressions of inc nesting at most l. Returns the failed bounds.
inline std::vector<std::string> assert_stats(const FoldStats& s, std::size_t n,
                                             const Params& p) {
  std::vector<std::string> failed;
  if (s.sum_pattern_order > 2 * n) {
    failed.push_back("sum_pattern_order=" + std::to_string(s.sum_pattern_order) +
                     " exceeds 2n=" + std::to_string(2 * n));
  }
  if (s.max_inc_nesting > p.k) {
    failed.push_back("max_inc_nesting=" + std::to_string(s.max_inc_nesting) +
                     " exceeds k=" + std::to_string(p.k));
  }
  if (s.subst_count > 0 && s.max_subst_order > std::max<std::size_t>(p.h, 2)) {
    failed.push_back("max_subst_order=" + std::to_string(s.max_subst_order) +
                     " exceeds h=" + std::to_string(p.h));
  }
  if (s.max_pattern_td > p.l) {
    failed.push_back("max_pattern_td=" + std::to_string(s.max_pattern_td) +
                     " exceeds l=" + std::to_string(p.l));
  }
  return failed;
}

/// Rebuilds val(e) from summaries alone (inc handlers read their own
/// edges); used to tie the fold to evaluate().
class ReconstructHandlers {
 public:
  struct Value {
    std::vector<std::string> names;
    std::vector<std::pair<std::size_t, std::size_t>> edges;  // local indices
  };
  using value_type = Value;

  explicit ReconstructHandlers(GraphKind mode) : mode_(mode) {}

  Value base_empty(const LeafContext&) { return {}; }
  Value base_vertex(const VertexContext& v) { return {{v.name}, {}}; }

  Value on_inc(Value child, const IncContext& ctx) {
    const std::size_t x = child.names.size();
    for (VertexIndex v : ctx.out_targets()) child.edges.emplace_back(x, v - ctx.self.begin);
    if (mode_ == GraphKind::directed) {
      for (VertexIndex u : ctx.in_sources()) child.edges.emplace_back(u - ctx.self.begin, x);
    }
    child.names.push_back(ctx.name);
    return child;
  }

  Value on_subst(const SubstContext& ctx, std::span<Value> children) {
    return compose(ctx.pattern, {}, children);
  }

  Value on_subst_td(const SubstTdContext& ctx, std::span<Value> children) {
    const Graph& h = ctx.layout.graph;
    std::vector<std::size_t> slot_of(h.vertex_count());
    for (std::size_t s = 0; s < ctx.layout_of_binding.size(); ++s) {
      slot_of[ctx.layout_of_binding[s]] = s;
    }
    return compose(h, slot_of, children);
  }

 private:
  Value compose(const Graph& pattern, const std::vector<std::size_t>& slot_of,
                std::span<Value> children) {
    Value out;
    std::vector<std::size_t> offset;
    for (auto& c : children) {
      offset.push_back(out.names.size());
      for (auto [u, v] : c.edges) out.edges.emplace_back(u + offset.back(), v + offset.back());
      out.names.insert(out.names.end(), c.names.begin(), c.names.end());
    }
    for (auto [p, q] : pattern.edges()) {
      std::size_t i = slot_of.empty() ? p : slot_of[p];
      std::size_t j = slot_of.empty() ? q : slot_of[q];
      for (std::size_t a = 0; a < children[i].names.size(); ++a) {
        for (std::size_t b = 0; b < children[j].names.size(); ++b) {
          out.edges.emplace_back(offset[i] + a, offset[j] + b);
        }
      }
    }
    return out;
  }

  GraphKind mode_;
};

/// Graph from a reconstructed fold value.
inline Graph to_graph(const ReconstructHandlers::Value& v, GraphKind mode) {
  Graph g(mode);
  for (const auto& n : v.names) g.add_vertex(n);
  for (auto [a, b] : v.edges) {
    g.add_edge(static_cast<VertexIndex>(a), static_cast<VertexIndex>(b));
  }
  g.sort_adjacency();
  return g;
}

}  // namespace algexpr
