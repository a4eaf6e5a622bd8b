// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "algexpr/evaluate.hpp"
#include "algexpr/expr.hpp"

namespace algexpr {

/// (k, h, l): inc nesting depth, largest explicit pattern order, largest inc
/// nesting depth among subst-td pattern expressions.
struct Params {
  std::size_t k = 0;
  std::size_t h = 0;
  std::size_t l = 0;

  bool operator==(const Params&) const = default;
};

inline std::string to_string(const Params& p) {
  return "(" + std::to_string(p.k) + "," + std::to_string(p.h) + "," +
         std::to_string(p.l) + ")";
}

/// Largest number of inc nodes on a root-to-leaf path; pattern expressions
/// of subst-td nodes are not part of the path.
inline std::size_t inc_nesting(const ExprNode& root) {
  const PostOrder order = post_order(root);
  std::vector<std::size_t> depth(order.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) {
    if (order.nodes[i]->kind == NodeKind::inc) ++depth[i];
    std::size_t p = order.parent[i];
    if (p != kNoParent) depth[p] = std::max(depth[p], depth[i]);
  }
  return order.size() ? depth.back() : 0;
}

inline Params params(const Expression& e) {
  Params result;
  result.k = inc_nesting(e.root);
  const PostOrder order = post_order(e.root);
  for (const ExprNode* node : order.nodes) {
    if (node->kind == NodeKind::subst) {
      result.h = std::max(result.h, node->pattern->graph.vertex_count());
    } else if (node->kind == NodeKind::subst_td) {
      result.l = std::max(result.l, inc_nesting(*node->pattern_expr));
    }
  }
  return result;
}

/// Componentwise params(e) <= (k, h, l).
inline bool member(const Expression& e, std::size_t k, std::size_t h, std::size_t l) {
  Params p = params(e);
  return p.k <= k && p.h <= h && p.l <= l;
}

}  // namespace algexpr
