// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "algexpr/error.hpp"
#include "algexpr/evaluate.hpp"
#include "algexpr/expr.hpp"

namespace algexpr {

struct Violation {
  std::string path;
  SourcePos pos;
  std::string message;
};

namespace detail {

inline bool is_td_node(NodeKind kind) {
  return kind == NodeKind::empty || kind == NodeKind::vertex ||
         kind == NodeKind::union_ || kind == NodeKind::inc;
}

inline void check_bindings(const ExprNode& node, const Graph& pattern,
                           const std::vector<NodeRange>& child_ranges,
                           const std::string& path, std::vector<Violation>& out) {
  if (pattern.vertex_count() < 2) {
    out.push_back({path, node.pos, "pattern has fewer than two vertices"});
  }
  if (node.bindings.size() != node.children.size()) {
    out.push_back({path, node.pos, "binding count does not match operands"});
    return;
  }
  std::vector<char> bound(pattern.vertex_count(), 0);
  for (std::size_t s = 0; s < node.bindings.size(); ++s) {
    const std::string& name = node.bindings[s];
    auto p = pattern.find(name);
    if (!p) {
      out.push_back({path, node.pos, "unknown binding '" + name + "'"});
      continue;
    }
    if (bound[*p]) {
      out.push_back({path, node.pos, "duplicate binding '" + name + "'"});
    }
    bound[*p] = 1;
    if (child_ranges[s].empty()) {
      out.push_back({path, node.children[s].pos, "empty-graph binding '" + name + "'"});
    }
  }
  for (VertexIndex p = 0; p < pattern.vertex_count(); ++p) {
    if (!bound[p]) {
      out.push_back({path, node.pos, "missing binding '" + pattern.name(p) + "'"});
    }
  }
}

inline void validate_tree(const ExprNode& root, GraphKind mode,
                          const std::string& prefix, bool pattern_only,
                          std::vector<Violation>& out) {
  const PostOrder order = post_order(root);
  const std::vector<NodeRange> ranges = vertex_ranges(order);
  auto path_of = [&](std::size_t i) {
    std::string own = node_path(order, i);
    return prefix.empty() ? own : prefix + "/" + own;
  };

  if (pattern_only) {
    bool pure = true;
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (!is_td_node(order.nodes[i]->kind)) {
        out.push_back({path_of(i), order.nodes[i]->pos,
                       "pattern is not a tree-depth expression"});
        pure = false;
      }
    }
    if (!pure) return;
  }

  std::unordered_map<std::string, std::size_t> index_of;
  std::size_t next = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const ExprNode& node = *order.nodes[i];
    if (node.kind != NodeKind::vertex && node.kind != NodeKind::inc) continue;
    if (!is_valid_name(node.name)) {
      out.push_back({path_of(i), node.pos, "invalid vertex name '" + node.name + "'"});
    }
    if (!index_of.emplace(node.name, next).second) {
      out.push_back({path_of(i), node.pos, "duplicate vertex name '" + node.name + "'"});
    }
    ++next;
  }

  for (std::size_t i = 0; i < order.size(); ++i) {
    const ExprNode& node = *order.nodes[i];
    switch (node.kind) {
      case NodeKind::empty:
      case NodeKind::vertex:
        break;
      case NodeKind::union_:
      case NodeKind::join:
        if (node.children.size() < 2) {
          out.push_back({path_of(i), node.pos, "arity violation"});
        }
        break;
      case NodeKind::inc: {
        NodeRange child{ranges[i].begin, ranges[i].end - 1};
        auto check = [&](const std::vector<std::string>& names) {
          std::set<std::string> seen;
          for (const auto& name : names) {
            auto it = index_of.find(name);
            if (name == node.name) {
              out.push_back({path_of(i), node.pos, "loop at inc vertex '" + name + "'"});
            } else if (it == index_of.end() || !child.contains(it->second)) {
              out.push_back({path_of(i), node.pos, "unknown Inc target '" + name + "'"});
            }
            if (!seen.insert(name).second) {
              out.push_back({path_of(i), node.pos, "duplicate Inc edge to '" + name + "'"});
            }
          }
        };
        check(node.out_edges);
        check(node.in_edges);
        if (mode == GraphKind::undirected && !node.in_edges.empty()) {
          out.push_back({path_of(i), node.pos, "directed inc edges in undirected mode"});
        }
        break;
      }
      case NodeKind::subst:
      case NodeKind::subst_td: {
        std::vector<NodeRange> child_ranges;
        for (std::size_t c : order.children(i)) child_ranges.push_back(ranges[c]);
        if (node.kind == NodeKind::subst) {
          if (!node.pattern || node.pattern->graph.kind() != mode) {
            out.push_back({path_of(i), node.pos, "pattern mode does not match expression"});
            break;
          }
          check_bindings(node, node.pattern->graph, child_ranges, path_of(i), out);
          break;
        }
        std::size_t before = out.size();
        validate_tree(*node.pattern_expr, mode, path_of(i) + "/pattern", true, out);
        if (out.size() != before) break;
        Graph pattern = evaluate_node(*node.pattern_expr, mode);
        check_bindings(node, pattern, child_ranges, path_of(i), out);
        break;
      }
    }
  }
}

}  // namespace detail

/// Every violation found; empty means the expression is valid.
inline std::vector<Violation> validate(const Expression& e) {
  std::vector<Violation> out;
  detail::validate_tree(e.root, e.mode, "", false, out);
  return out;
}

inline std::string format_violation(const Violation& v) {
  std::string text;
  if (v.pos.line) {
    text += std::to_string(v.pos.line) + ":" + std::to_string(v.pos.column) + ": ";
  }
  return text + v.message + " at " + v.path;
}

/// Throws ValidationError listing all violations.
inline void require_valid(const Expression& e) {
  auto violations = validate(e);
  if (violations.empty()) return;
  std::string message;
  for (const auto& v : violations) {
    if (!message.empty()) message += "\n";
    message += format_violation(v);
  }
  throw ValidationError(message);
}

}  // namespace algexpr
