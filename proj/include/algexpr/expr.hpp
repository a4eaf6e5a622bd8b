// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "algexpr/graph.hpp"

namespace algexpr {

enum class NodeKind { empty, vertex, union_, join, inc, subst, subst_td };

inline const char* keyword(NodeKind kind) {
  switch (kind) {
    case NodeKind::empty: return "empty";
    case NodeKind::vertex: return "vertex";
    case NodeKind::union_: return "union";
    case NodeKind::join: return "join";
    case NodeKind::inc: return "inc";
    case NodeKind::subst: return "subst";
    case NodeKind::subst_td: return "subst-td";
  }
  return "?";
}

struct SourcePos {
  std::size_t line = 0;
  std::size_t column = 0;
};

/// Pattern graph H of a substitution; vertex order is the declared order.
struct Pattern {
  Graph graph;
};

/// One operation node. Which fields are meaningful depends on `kind`:
///   vertex:   name
///   union/join: children (>= 2)
///   inc:      name, out_edges, in_edges, children[0]
///             (undirected neighbours are kept in out_edges)
///   subst:    pattern, bindings[i] names the pattern vertex for children[i]
///   subst_td: pattern_expr, bindings and children as for subst
struct ExprNode {
  NodeKind kind = NodeKind::empty;
  std::string name;
  std::vector<std::string> out_edges;
  std::vector<std::string> in_edges;
  std::shared_ptr<const Pattern> pattern;
  std::shared_ptr<const ExprNode> pattern_expr;
  std::vector<std::string> bindings;
  std::vector<ExprNode> children;
  SourcePos pos;

  const ExprNode& child() const { return children.front(); }
};

struct Expression {
  GraphKind mode = GraphKind::directed;
  ExprNode root;
};

inline ExprNode make_empty() { return ExprNode{}; }

inline ExprNode make_vertex(std::string name) {
  ExprNode node;
  node.kind = NodeKind::vertex;
  node.name = std::move(name);
  return node;
}

inline ExprNode make_union(std::vector<ExprNode> children) {
  ExprNode node;
  node.kind = NodeKind::union_;
  node.children = std::move(children);
  return node;
}

inline ExprNode make_join(std::vector<ExprNode> children) {
  ExprNode node;
  node.kind = NodeKind::join;
  node.children = std::move(children);
  return node;
}

inline ExprNode make_inc(std::string name, std::vector<std::string> out_edges,
                         std::vector<std::string> in_edges, ExprNode child) {
  ExprNode node;
  node.kind = NodeKind::inc;
  node.name = std::move(name);
  node.out_edges = std::move(out_edges);
  node.in_edges = std::move(in_edges);
  node.children.push_back(std::move(child));
  return node;
}

inline ExprNode make_subst(Graph pattern, std::vector<std::string> bindings,
                           std::vector<ExprNode> children) {
  ExprNode node;
  node.kind = NodeKind::subst;
  node.pattern = std::make_shared<const Pattern>(Pattern{std::move(pattern)});
  node.bindings = std::move(bindings);
  node.children = std::move(children);
  return node;
}

inline ExprNode make_subst_td(ExprNode pattern_expr,
                              std::vector<std::string> bindings,
                              std::vector<ExprNode> children) {
  ExprNode node;
  node.kind = NodeKind::subst_td;
  node.pattern_expr = std::make_shared<const ExprNode>(std::move(pattern_expr));
  node.bindings = std::move(bindings);
  node.children = std::move(children);
  return node;
}

/// Complete graph or edgeless graph on vertices named by `names`.
inline Graph make_pattern(GraphKind kind, const std::vector<std::string>& names,
                          bool complete) {
  Graph g(kind);
  for (const auto& n : names) g.add_vertex(n);
  if (complete) {
    for (VertexIndex u = 0; u < names.size(); ++u) {
      for (VertexIndex v = 0; v < names.size(); ++v) {
        if (u == v) continue;
        if (kind == GraphKind::undirected && v < u) continue;
        g.add_edge_unchecked(u, v);
      }
    }
  }
  g.sort_adjacency();
  return g;
}

/// Same declared vertex order and same edge set.
inline bool same_pattern(const Graph& a, const Graph& b) {
  if (a.kind() != b.kind() || a.names() != b.names()) return false;
  auto ea = a.edges();
  auto eb = b.edges();
  std::sort(ea.begin(), ea.end());
  std::sort(eb.begin(), eb.end());
  return ea == eb;
}

/// Structural equality; source positions are ignored.
inline bool operator==(const ExprNode& a, const ExprNode& b) {
  if (a.kind != b.kind || a.name != b.name || a.out_edges != b.out_edges ||
      a.in_edges != b.in_edges || a.bindings != b.bindings ||
      a.children != b.children) {
    return false;
  }
  if (static_cast<bool>(a.pattern) != static_cast<bool>(b.pattern)) return false;
  if (a.pattern && !same_pattern(a.pattern->graph, b.pattern->graph)) return false;
  if (static_cast<bool>(a.pattern_expr) != static_cast<bool>(b.pattern_expr)) {
    return false;
  }
  if (a.pattern_expr && !(*a.pattern_expr == *b.pattern_expr)) return false;
  return true;
}

inline bool operator==(const Expression& a, const Expression& b) {
  return a.mode == b.mode && a.root == b.root;
}

/// Short description of a node for diagnostics, e.g. "inc(x)".
inline std::string node_label(const ExprNode& node) {
  std::string label = keyword(node.kind);
  if (node.kind == NodeKind::vertex || node.kind == NodeKind::inc) {
    label += "(" + node.name + ")";
  }
  return label;
}

}  // namespace algexpr
