// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "algexpr/error.hpp"
#include "algexpr/expr.hpp"
#include "algexpr/framework.hpp"
#include "algexpr/graph.hpp"
#include "algexpr/normalize.hpp"

namespace algexpr {

/// Vertex, edge and triangle counts of a graph.
struct TriFold {
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t t = 0;

  bool operator==(const TriFold&) const = default;
};

namespace detail {

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("triangle counter overflow");
  return r;
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("triangle counter overflow");
  return r;
}

}  // namespace detail

/// Substitution into an explicit pattern; pattern vertex i carries children[i].
inline TriFold tc_sub(const Graph& pattern, std::span<const TriFold> children) {
  using detail::add;
  using detail::mul;
  if (children.size() != pattern.vertex_count()) {
    throw Error("tc_sub: pattern has " + std::to_string(pattern.vertex_count()) +
                " vertices but " + std::to_string(children.size()) + " operands");
  }
  TriFold r;
  for (const auto& c : children) {
    r.n = add(r.n, c.n);
    r.m = add(r.m, c.m);
    r.t = add(r.t, c.t);
  }
  for (auto [i, j] : pattern.edges()) {
    const TriFold& a = children[i];
    const TriFold& b = children[j];
    r.m = add(r.m, mul(a.n, b.n));
    r.t = add(r.t, add(mul(a.m, b.n), mul(a.n, b.m)));
  }
  // Pattern triangles i < j < k by intersecting sorted neighbourhoods.
  for (auto [i, j] : pattern.edges()) {
    auto ni = pattern.neighbors(i);
    auto nj = pattern.neighbors(j);
    auto a = ni.begin();
    auto b = nj.begin();
    while (a != ni.end() && b != nj.end()) {
      if (*a < *b) {
        ++a;
      } else if (*b < *a) {
        ++b;
      } else {
        if (*a > j) {
          r.t = add(r.t, mul(mul(children[i].n, children[j].n), children[*a].n));
        }
        ++a;
        ++b;
      }
    }
  }
  return r;
}

/// Adds x, whose module is `x_module`, to the graph summarized by `child`.
/// `neighbors` are x's neighbours in `view` (global ids); module(u) gives the
/// module substituted for vertex u, or nullptr for a single vertex.
template <class ModuleOf>
TriFold tc_inc(const TriFold& child, const TriFold& x_module,
               std::span<const VertexIndex> neighbors, const SubgraphView& view,
               std::vector<char>& mark, ModuleOf&& module) {
  using detail::add;
  using detail::mul;
  static const TriFold unit{1, 0, 0};
  auto of = [&](VertexIndex u) -> const TriFold& {
    const TriFold* p = module(u);
    return p ? *p : unit;
  };
  TriFold r;
  r.n = add(child.n, x_module.n);
  r.m = add(child.m, x_module.m);
  r.t = add(child.t, x_module.t);
  std::uint64_t pair_sum = 0;
  for (VertexIndex u : neighbors) {
    const TriFold& mu = of(u);
    r.m = add(r.m, mul(x_module.n, mu.n));
    r.t = add(r.t, add(mul(x_module.m, mu.n), mul(x_module.n, mu.m)));
    mark[u] = 1;
  }
  for (VertexIndex u : neighbors) {
    for (VertexIndex v : view.out_within(u)) {
      if (v > u && mark[v]) pair_sum = add(pair_sum, mul(of(u).n, of(v).n));
    }
  }
  for (VertexIndex u : neighbors) mark[u] = 0;
  r.t = add(r.t, mul(x_module.n, pair_sum));
  return r;
}

/// Triangle counting handlers. Without modules every leaf and inc vertex is
/// a single vertex; with modules (pattern folds) layout vertex u stands for
/// the graph summarized by modules[u].
class TriangleHandlers {
 public:
  using value_type = TriFold;

  TriangleHandlers() = default;
  explicit TriangleHandlers(std::span<const TriFold> modules) : modules_(modules) {}

  TriFold base_empty(const LeafContext&) { return {}; }
  TriFold base_vertex(const VertexContext& v) {
    return modules_.empty() ? TriFold{1, 0, 0} : modules_[v.index];
  }

  TriFold on_inc(TriFold child, const IncContext& ctx) {
    if (mark_.size() < ctx.graph->vertex_count()) mark_.resize(ctx.graph->vertex_count(), 0);
    const TriFold x_module = modules_.empty() ? TriFold{1, 0, 0} : modules_[ctx.vertex];
    auto module = [&](VertexIndex u) -> const TriFold* {
      return modules_.empty() ? nullptr : &modules_[u];
    };
    return tc_inc(child, x_module, ctx.out_targets(), ctx.child_view(), mark_, module);
  }

  TriFold on_subst(const SubstContext& ctx, std::span<TriFold> children) {
    return tc_sub(ctx.pattern, children);
  }

  TriFold on_subst_td(const SubstTdContext& ctx, std::span<TriFold> children) {
    return tc_subtd(ctx, children);
  }

  /// Folds the pattern expression with the children as modules, never
  /// listing the pattern's triangles.
  static TriFold tc_subtd(const SubstTdContext& ctx, std::span<const TriFold> children) {
    std::vector<TriFold> modules(ctx.layout.graph.vertex_count());
    for (std::size_t s = 0; s < children.size(); ++s) {
      modules[ctx.layout_of_binding[s]] = children[s];
    }
    TriangleHandlers inner(modules);
    return fold_layout(ctx.layout, inner).value;
  }

 private:
  std::span<const TriFold> modules_;
  std::vector<char> mark_;
};

/// Counts for val(e); e must be undirected. Union/join are normalized first.
inline FoldResult<TriFold> solve_triangles(const Expression& e,
                                           EdgePolicy policy = EdgePolicy::inc_subtrees) {
  if (e.mode != GraphKind::undirected) {
    throw ModeError("triangle counting needs an undirected expression");
  }
  Expression normalized = is_normalized(e.root) ? e : normalize(e);
  TriangleHandlers handlers;
  return fold(normalized, handlers, policy);
}

inline std::uint64_t count_triangles(const Expression& e) {
  return solve_triangles(e).value.t;
}

}  // namespace algexpr
