// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "algexpr/expr.hpp"

namespace algexpr {

namespace detail {

inline std::shared_ptr<const Pattern> binary_pattern(GraphKind mode, bool complete) {
  return std::make_shared<const Pattern>(
      Pattern{make_pattern(mode, {"left", "right"}, complete)});
}

class Normalizer {
 public:
  explicit Normalizer(GraphKind mode)
      : disjoint_(binary_pattern(mode, false)), complete_(binary_pattern(mode, true)) {}

  ExprNode run(const ExprNode& node) {
    switch (node.kind) {
      case NodeKind::empty:
      case NodeKind::vertex:
        return node;
      case NodeKind::union_:
      case NodeKind::join: {
        std::vector<ExprNode> parts;
        for (const auto& c : node.children) {
          ExprNode n = run(c);
          if (n.kind != NodeKind::empty) parts.push_back(std::move(n));
        }
        if (parts.empty()) return make_empty();
        const auto& pattern = node.kind == NodeKind::union_ ? disjoint_ : complete_;
        ExprNode acc = std::move(parts[0]);
        for (std::size_t i = 1; i < parts.size(); ++i) {
          ExprNode s;
          s.kind = NodeKind::subst;
          s.pattern = pattern;
          s.bindings = {"left", "right"};
          s.children.push_back(std::move(acc));
          s.children.push_back(std::move(parts[i]));
          s.pos = node.pos;
          acc = std::move(s);
        }
        return acc;
      }
      case NodeKind::inc:
      case NodeKind::subst:
      case NodeKind::subst_td: {
        ExprNode copy;
        copy.kind = node.kind;
        copy.name = node.name;
        copy.out_edges = node.out_edges;
        copy.in_edges = node.in_edges;
        copy.pattern = node.pattern;
        copy.pattern_expr = node.pattern_expr;
        copy.bindings = node.bindings;
        copy.pos = node.pos;
        copy.children.reserve(node.children.size());
        for (const auto& c : node.children) copy.children.push_back(run(c));
        return copy;
      }
    }
    return node;
  }

 private:
  std::shared_ptr<const Pattern> disjoint_;
  std::shared_ptr<const Pattern> complete_;
};

}  // namespace detail

/// Replaces every union/join by a left-folded chain of binary
/// substitutions into I2 / K2 (directed K2 has both arcs). Empty operands
/// are dropped and single survivors collapse. Pattern expressions of
/// subst-td nodes are left as written.
inline Expression normalize(const Expression& e) {
  return Expression{e.mode, detail::Normalizer(e.mode).run(e.root)};
}

inline ExprNode normalize_node(const ExprNode& node, GraphKind mode) {
  return detail::Normalizer(mode).run(node);
}

inline bool is_normalized(const ExprNode& root) {
  if (root.kind == NodeKind::union_ || root.kind == NodeKind::join) return false;
  for (const auto& c : root.children) {
    if (!is_normalized(c)) return false;
  }
  return true;
}

}  // namespace algexpr
