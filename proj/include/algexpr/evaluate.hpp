// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "algexpr/error.hpp"
#include "algexpr/expr.hpp"
#include "algexpr/graph.hpp"

namespace algexpr {

inline constexpr std::size_t kNoParent = std::numeric_limits<std::size_t>::max();

/// Nodes of an expression tree in post-order (pattern expressions of
/// subst-td nodes are not entered).
struct PostOrder {
  std::vector<const ExprNode*> nodes;
  std::vector<std::size_t> parent;
  std::vector<std::size_t> slot;    // position among the parent's children
  std::vector<std::size_t> extent;  // nodes in the subtree, itself included

  std::size_t size() const { return nodes.size(); }

  /// Post-order indices of the children of node i, left to right.
  std::vector<std::size_t> children(std::size_t i) const {
    std::vector<std::size_t> result(nodes[i]->children.size());
    std::size_t j = i;
    for (std::size_t c = result.size(); c-- > 0;) {
      --j;
      result[c] = j;
      j -= extent[j] - 1;
    }
    return result;
  }
};

inline PostOrder post_order(const ExprNode& root) {
  PostOrder order;
  struct Frame {
    const ExprNode* node;
    std::size_t next;
    std::size_t slot;
  };
  std::vector<Frame> stack{{&root, 0, 0}};
  // Post-order indices of finished children, per open frame.
  std::vector<std::vector<std::size_t>> pending(1);
  while (!stack.empty()) {
    Frame& top = stack.back();
    if (top.next < top.node->children.size()) {
      std::size_t slot = top.next++;
      stack.push_back({&top.node->children[slot], 0, slot});
      pending.emplace_back();
      continue;
    }
    std::size_t index = order.nodes.size();
    order.nodes.push_back(top.node);
    order.parent.push_back(kNoParent);
    order.slot.push_back(top.slot);
    std::size_t extent = 1;
    for (std::size_t c : pending.back()) {
      order.parent[c] = index;
      extent += order.extent[c];
    }
    order.extent.push_back(extent);
    stack.pop_back();
    pending.pop_back();
    if (!pending.empty()) pending.back().push_back(index);
  }
  return order;
}

/// Node path for diagnostics, e.g. "subst/0:inc(x)/0:vertex(a)".
inline std::string node_path(const PostOrder& order, std::size_t index) {
  std::vector<std::size_t> chain;
  for (std::size_t i = index; i != kNoParent; i = order.parent[i]) chain.push_back(i);
  std::string path;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    if (!path.empty()) {
      path += "/" + std::to_string(order.slot[*it]) + ":";
    }
    path += node_label(*order.nodes[*it]);
  }
  return path;
}

/// Vertex index ranges per post-order node. Vertices are numbered in the
/// order leaves and inc vertices complete, so every subtree owns a
/// contiguous range and an inc vertex directly follows its child's range.
inline std::vector<NodeRange> vertex_ranges(const PostOrder& order) {
  std::vector<NodeRange> ranges(order.size());
  std::vector<NodeRange> stack;
  std::size_t next = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const ExprNode& node = *order.nodes[i];
    NodeRange range{next, next};
    switch (node.kind) {
      case NodeKind::empty:
        break;
      case NodeKind::vertex:
        range.end = ++next;
        break;
      case NodeKind::inc:
        range.begin = stack.back().begin;
        stack.pop_back();
        range.end = ++next;
        break;
      default: {
        std::size_t t = node.children.size();
        range.begin = stack[stack.size() - t].begin;
        range.end = stack.back().end;
        stack.resize(stack.size() - t);
        break;
      }
    }
    ranges[i] = range;
    stack.push_back(range);
  }
  return ranges;
}

/// Which substitution edges to materialize. `inc_subtrees` keeps only edges
/// inside subtrees of inc nodes, which is all the fold handlers look at.
enum class EdgePolicy { all, inc_subtrees };

struct Layout {
  Graph graph;
  PostOrder order;
  std::vector<NodeRange> ranges;
};

Layout build_layout(const ExprNode& root, GraphKind mode,
                    EdgePolicy policy = EdgePolicy::all);

/// val(e) for a pattern expression or any subtree, vertices in layout order.
inline Graph evaluate_node(const ExprNode& root, GraphKind mode) {
  return build_layout(root, mode, EdgePolicy::all).graph;
}

inline Layout build_layout(const ExprNode& root, GraphKind mode,
                           EdgePolicy policy) {
  Layout layout{Graph(mode), post_order(root), {}};
  layout.ranges = vertex_ranges(layout.order);
  const PostOrder& order = layout.order;
  Graph& g = layout.graph;
  const bool directed = mode == GraphKind::directed;

  std::vector<char> under_inc(order.size(), 0);
  for (std::size_t i = order.size(); i-- > 0;) {
    std::size_t p = order.parent[i];
    if (p != kNoParent) {
      under_inc[i] = under_inc[p] || order.nodes[p]->kind == NodeKind::inc;
    }
  }

  // Vertices first, in index order.
  for (std::size_t i = 0; i < order.size(); ++i) {
    const ExprNode& node = *order.nodes[i];
    if (node.kind == NodeKind::vertex || node.kind == NodeKind::inc) {
      g.add_vertex(node.name);
    }
  }

  auto connect = [&](NodeRange a, NodeRange b) {
    for (std::size_t u = a.begin; u < a.end; ++u) {
      for (std::size_t v = b.begin; v < b.end; ++v) {
        g.add_edge_unchecked(static_cast<VertexIndex>(u), static_cast<VertexIndex>(v));
      }
    }
  };

  for (std::size_t i = 0; i < order.size(); ++i) {
    const ExprNode& node = *order.nodes[i];
    const NodeRange range = layout.ranges[i];
    switch (node.kind) {
      case NodeKind::empty:
      case NodeKind::vertex:
      case NodeKind::union_:
        break;
      case NodeKind::inc: {
        auto x = static_cast<VertexIndex>(range.end - 1);
        NodeRange child{range.begin, range.end - 1};
        auto resolve = [&](const std::string& name) {
          auto found = g.find(name);
          if (!found || !child.contains(*found)) {
            throw ValidationError("unknown Inc target '" + name + "' at " +
                                  node_path(order, i));
          }
          return *found;
        };
        for (const auto& v : node.out_edges) g.add_edge_unchecked(x, resolve(v));
        for (const auto& u : node.in_edges) g.add_edge_unchecked(resolve(u), x);
        break;
      }
      case NodeKind::join:
      case NodeKind::subst:
      case NodeKind::subst_td: {
        if (policy == EdgePolicy::inc_subtrees && !under_inc[i]) break;
        std::vector<NodeRange> parts;
        for (std::size_t c : order.children(i)) parts.push_back(layout.ranges[c]);
        if (node.kind == NodeKind::join) {
          for (std::size_t a = 0; a < parts.size(); ++a) {
            for (std::size_t b = a + 1; b < parts.size(); ++b) {
              connect(parts[a], parts[b]);
              if (directed) connect(parts[b], parts[a]);
            }
          }
          break;
        }
        Graph evaluated;
        const Graph* pattern = nullptr;
        if (node.kind == NodeKind::subst) {
          pattern = &node.pattern->graph;
        } else {
          evaluated = evaluate_node(*node.pattern_expr, mode);
          pattern = &evaluated;
        }
        std::vector<std::size_t> slot_of(pattern->vertex_count(), kNoParent);
        for (std::size_t s = 0; s < node.bindings.size(); ++s) {
          auto p = pattern->find(node.bindings[s]);
          if (!p) {
            throw ValidationError("unknown binding '" + node.bindings[s] + "' at " +
                                  node_path(order, i));
          }
          slot_of[*p] = s;
        }
        for (auto [p, q] : pattern->edges()) {
          if (slot_of[p] == kNoParent || slot_of[q] == kNoParent) {
            throw ValidationError("missing binding at " + node_path(order, i));
          }
          connect(parts[slot_of[p]], parts[slot_of[q]]);
        }
        break;
      }
    }
  }
  g.sort_adjacency();
  return layout;
}

/// The graph val(e). Vertices are numbered in post-order of the tree.
inline Graph evaluate(const Expression& e) {
  return build_layout(e.root, e.mode, EdgePolicy::all).graph;
}

}  // namespace algexpr
