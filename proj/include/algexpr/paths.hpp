// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "algexpr/error.hpp"
#include "algexpr/expr.hpp"
#include "algexpr/framework.hpp"
#include "algexpr/graph.hpp"
#include "algexpr/normalize.hpp"
#include "algexpr/shortest_paths.hpp"

namespace algexpr {

/// Shortest-path potential from a zero-cost virtual source under
/// edge-shifted costs. Throws ContractViolation on a negative cycle.
inline std::vector<double> shortest_path_potential(const Graph& g,
                                                   std::span<const double> w) {
  if (!g.directed()) throw ModeError("potentials need a directed graph");
  const std::size_t n = g.vertex_count();
  std::vector<double> pi(n, 0.0);
  for (std::size_t round = 0; round <= n; ++round) {
    bool changed = false;
    for (VertexIndex u = 0; u < n; ++u) {
      for (VertexIndex v : g.out_neighbors(u)) {
        if (pi[u] + w[u] < pi[v] - kTolerance) {
          pi[v] = pi[u] + w[u];
          changed = true;
        }
      }
    }
    if (!changed) return pi;
  }
  throw ContractViolation("negative cycle while computing a potential");
}

inline std::vector<double> shortest_path_potential(const Graph& g, const WeightMap& w) {
  auto dense = dense_weights(g, w);
  return shortest_path_potential(g, dense);
}

struct WeightedGraph {
  Graph graph;
  std::vector<double> weights;
};

/// H_w: the pattern with each vertex weighted by its module's msp.
inline WeightedGraph build_Hw(const Graph& pattern, std::span<const double> msp) {
  if (msp.size() != pattern.vertex_count()) throw Error("build_Hw: arity mismatch");
  return {pattern, std::vector<double>(msp.begin(), msp.end())};
}

/// Summary for negative cycle detection: a shortest-path potential (local
/// indices of the node's range) and the minimum path weight.
struct NcdSummary {
  std::vector<double> potential;
  double msp = kInfinity;
};

using NcdValue = std::variant<NegativeCycle, NcdSummary>;

/// Everything the inc step learns about x and the child G'.
struct IncExtension {
  bool negative_cycle = false;
  std::vector<double> from_x;  // c^w distance x -> v, i.e. w(P) - w(v)
  std::vector<double> to_x;    // c^w distance v -> x, i.e. w(P) - w(x)
  std::vector<double> potential;  // over G' then x
  double msp = kInfinity;
};

/// Adds x to G' given a shortest-path potential `pi` of G'. Two Dijkstra
/// passes under reduced costs: forward from x (negative first-hop labels
/// allowed) and backward into x on the reversed child.
inline IncExtension extend_inc(const IncContext& ctx, std::span<const double> w,
                               std::span<const double> pi, double child_msp) {
  const SubgraphView view = ctx.child_view();
  const std::size_t base = ctx.child.begin;
  const std::size_t nc = view.size();
  const std::size_t x = ctx.vertex;
  auto reduced = [&](std::size_t a, std::size_t b) {
    return w[base + a] + pi[a] - pi[b];
  };

  std::vector<SourceLabel> sources;
  for (VertexIndex u : ctx.out_targets()) {
    sources.push_back({u - base, w[x] - pi[u - base]});
  }
  IncExtension ext;
  ext.from_x = dijkstra(view, reduced, sources);
  for (std::size_t v = 0; v < nc; ++v) ext.from_x[v] += pi[v];

  auto in_sources = ctx.in_sources();
  for (VertexIndex u : in_sources) {
    if (ext.from_x[u - base] + w[u] < -kTolerance) {
      ext.negative_cycle = true;
      return ext;
    }
  }

  sources.clear();
  for (VertexIndex u : in_sources) sources.push_back({u - base, w[u] + pi[u - base]});
  ReversedView<SubgraphView> back(view);
  ext.to_x = dijkstra(back, [&](std::size_t a, std::size_t b) { return reduced(b, a); },
                      sources);
  for (std::size_t v = 0; v < nc; ++v) ext.to_x[v] -= pi[v];

  double phi_x = 0;
  for (VertexIndex u : in_sources) phi_x = std::min(phi_x, pi[u - base] + w[u]);
  ext.potential.resize(nc + 1);
  for (std::size_t v = 0; v < nc; ++v) {
    ext.potential[v] = std::min(pi[v], phi_x + ext.from_x[v]);
  }
  ext.potential[nc] = phi_x;

  double into = w[x];
  double out_of = w[x];
  for (std::size_t v = 0; v < nc; ++v) {
    into = std::min(into, ext.to_x[v] + w[x]);
    out_of = std::min(out_of, ext.from_x[v] + w[base + v]);
  }
  ext.msp = std::min(child_msp, into + out_of - w[x]);
  return ext;
}

namespace detail {

/// pi_H(i) = min(0, min_j D(j, i) - w_i): shortest-path potential of H_w.
inline std::vector<double> pattern_potential(const DistMatrix& d,
                                             std::span<const double> omega) {
  std::vector<double> pi(omega.size(), 0.0);
  for (std::size_t j = 0; j < omega.size(); ++j) {
    for (std::size_t i = 0; i < omega.size(); ++i) {
      pi[i] = std::min(pi[i], d(j, i) - omega[i]);
    }
  }
  return pi;
}

inline double min_entry(const DistMatrix& d) {
  double best = kInfinity;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (double v : d.row(i)) best = std::min(best, v);
  }
  return best;
}

}  // namespace detail

/// Negative cycle detection handlers; `weights` are indexed by layout
/// index (vertex weights, or module msp values inside pattern folds).
class NcdHandlers {
 public:
  using value_type = NcdValue;

  explicit NcdHandlers(std::span<const double> weights) : w_(weights) {}

  NcdValue base_empty(const LeafContext&) { return NcdSummary{}; }
  NcdValue base_vertex(const VertexContext& v) { return NcdSummary{{0.0}, w_[v.index]}; }

  NcdValue on_inc(NcdValue child, const IncContext& ctx) {
    if (std::holds_alternative<NegativeCycle>(child)) return NegativeCycle{};
    auto& s = std::get<NcdSummary>(child);
    IncExtension ext = extend_inc(ctx, w_, s.potential, s.msp);
    if (ext.negative_cycle) return NegativeCycle{};
    return NcdSummary{std::move(ext.potential), ext.msp};
  }

  NcdValue on_subst(const SubstContext& ctx, std::span<NcdValue> children) {
    return ncd_sub(ctx.pattern, children);
  }

  NcdValue on_subst_td(const SubstTdContext& ctx, std::span<NcdValue> children) {
    return ncd_subtd(ctx, children);
  }

  /// Floyd on H_w decides the cycle question; msp(H_w) is the msp of the
  /// substituted graph and potentials compose as pi_i(v) + pi_H(v_i).
  static NcdValue ncd_sub(const Graph& pattern, std::span<const NcdValue> children) {
    std::vector<double> omega;
    if (!module_weights(children, omega)) return NegativeCycle{};
    auto floyd = floyd_vertex_weighted(pattern, omega);
    if (std::holds_alternative<NegativeCycle>(floyd)) return NegativeCycle{};
    const auto& d = std::get<DistMatrix>(floyd);
    return compose(children, detail::pattern_potential(d, omega), detail::min_entry(d));
  }

  /// Same result as ncd_sub on val(pattern), by folding the pattern
  /// expression over H_w with these handlers.
  static NcdValue ncd_subtd(const SubstTdContext& ctx, std::span<const NcdValue> children) {
    std::vector<double> omega;
    if (!module_weights(children, omega)) return NegativeCycle{};
    std::vector<double> by_layout(ctx.layout.graph.vertex_count());
    for (std::size_t s = 0; s < omega.size(); ++s) by_layout[ctx.layout_of_binding[s]] = omega[s];
    NcdHandlers inner(by_layout);
    NcdValue r = fold_layout(ctx.layout, inner).value;
    if (std::holds_alternative<NegativeCycle>(r)) return NegativeCycle{};
    const auto& h = std::get<NcdSummary>(r);
    std::vector<double> pi_h(omega.size());
    for (std::size_t s = 0; s < omega.size(); ++s) pi_h[s] = h.potential[ctx.layout_of_binding[s]];
    return compose(children, pi_h, h.msp);
  }

 private:
  static bool module_weights(std::span<const NcdValue> children, std::vector<double>& omega) {
    omega.clear();
    for (const auto& c : children) {
      if (std::holds_alternative<NegativeCycle>(c)) return false;
      omega.push_back(std::get<NcdSummary>(c).msp);
    }
    return true;
  }

  static NcdValue compose(std::span<const NcdValue> children, const std::vector<double>& pi_h,
                          double msp) {
    NcdSummary out;
    out.msp = msp;
    for (std::size_t i = 0; i < children.size(); ++i) {
      for (double p : std::get<NcdSummary>(children[i]).potential) {
        out.potential.push_back(p + pi_h[i]);
      }
    }
    return out;
  }

  std::span<const double> w_;
};

// ---------------------------------------------------------------------------
// All-pairs shortest paths.

/// Fields shared by both summary kinds; vectors use local indices.
struct PathCore {
  std::vector<double> potential;
  double msp = kInfinity;
  std::vector<double> min_out;  // min_v dist(u, v)
  std::vector<double> min_in;   // min_v dist(v, u)

  std::size_t size() const { return potential.size(); }
};

/// Summary at inc nodes and leaves: full distance matrix.
struct PathSummaryI : PathCore {
  DistMatrix dist;
};

struct PathSummaryS;
using PathChild =
    std::variant<std::shared_ptr<const PathSummaryS>, std::shared_ptr<const PathSummaryI>>;

/// Summary at substitution nodes: distances in H_w only, plus the
/// children's summaries for the later conversion to a PathSummaryI.
struct PathSummaryS : PathCore {
  DistMatrix pattern_dists;
  std::vector<double> module_weights;
  std::vector<PathChild> children;
};

using ApspValue = std::variant<NegativeCycle, std::shared_ptr<const PathSummaryS>,
                               std::shared_ptr<const PathSummaryI>>;

inline const PathCore& core(const PathChild& c) {
  return std::visit([](const auto& p) -> const PathCore& { return *p; }, c);
}

/// Full distances on val(T_r) for a substitution spine rooted at r, where
/// r's graph is no longer entered from outside (c_r = infinity).
inline std::shared_ptr<const PathSummaryI> fs_to_fi(const PathSummaryS& root) {
  auto result = std::make_shared<PathSummaryI>();
  static_cast<PathCore&>(*result) = root;
  const std::size_t n = root.size();
  DistMatrix& out = result->dist;
  out = DistMatrix(n);

  struct Task {
    const PathSummaryS* node;
    std::size_t offset;
    double detour;  // c_x: cheapest excursion outside the node and back
  };
  std::vector<Task> tasks{{&root, 0, kInfinity}};
  while (!tasks.empty()) {
    Task task = tasks.back();
    tasks.pop_back();
    const PathSummaryS& x = *task.node;
    const DistMatrix& d = x.pattern_dists;
    const auto& omega = x.module_weights;
    const std::size_t t = x.children.size();

    std::vector<std::size_t> start(t + 1, 0);
    for (std::size_t i = 0; i < t; ++i) start[i + 1] = start[i] + core(x.children[i]).size();

    for (std::size_t i = 0; i < t; ++i) {
      const PathCore& ci = core(x.children[i]);
      for (std::size_t j = 0; j < t; ++j) {
        if (i == j) continue;
        const PathCore& cj = core(x.children[j]);
        const double between = d(i, j) - omega[i] - omega[j];
        for (std::size_t a = 0; a < ci.size(); ++a) {
          const std::size_t ga = start[i] + a;
          const double inside = ci.min_out[a] + between;
          const double outside = x.min_out[ga] + task.detour;
          for (std::size_t b = 0; b < cj.size(); ++b) {
            const std::size_t gb = start[j] + b;
            out(task.offset + ga, task.offset + gb) =
                std::min(inside + cj.min_in[b], outside + x.min_in[gb]);
          }
        }
      }

      // c_i: a cycle through v_i inside H_w, or leave G(x) and come back.
      double cycle = kInfinity;
      double leave = 0;
      double enter = 0;
      for (std::size_t j = 0; j < t; ++j) {
        if (j != i) cycle = std::min(cycle, d(i, j) + d(j, i) - omega[j] - 2 * omega[i]);
        leave = std::min(leave, d(i, j) - omega[i]);
        enter = std::min(enter, d(j, i) - omega[i]);
      }
      const double detour = std::min(cycle, leave + task.detour + enter);

      if (auto s = std::get_if<std::shared_ptr<const PathSummaryS>>(&x.children[i])) {
        tasks.push_back({s->get(), task.offset + start[i], detour});
        continue;
      }
      const auto& leaf = *std::get<std::shared_ptr<const PathSummaryI>>(x.children[i]);
      const std::size_t off = task.offset + start[i];
      for (std::size_t a = 0; a < leaf.size(); ++a) {
        const double via = leaf.min_out[a] + detour;
        for (std::size_t b = 0; b < leaf.size(); ++b) {
          out(off + a, off + b) = std::min(leaf.dist(a, b), via + leaf.min_in[b]);
        }
      }
    }
  }
  return result;
}

inline std::shared_ptr<const PathSummaryI> finalize(const ApspValue& v) {
  if (auto s = std::get_if<std::shared_ptr<const PathSummaryS>>(&v)) return fs_to_fi(**s);
  return std::get<std::shared_ptr<const PathSummaryI>>(v);
}

class ApspHandlers {
 public:
  using value_type = ApspValue;

  explicit ApspHandlers(std::span<const double> weights) : w_(weights) {}

  ApspValue base_empty(const LeafContext&) {
    return std::make_shared<const PathSummaryI>();
  }

  ApspValue base_vertex(const VertexContext& v) {
    auto s = std::make_shared<PathSummaryI>();
    const double w = w_[v.index];
    s->potential = {0.0};
    s->msp = w;
    s->min_out = {w};
    s->min_in = {w};
    s->dist = DistMatrix(1, w);
    return s;
  }

  ApspValue on_inc(ApspValue child, const IncContext& ctx) {
    if (std::holds_alternative<NegativeCycle>(child)) return NegativeCycle{};
    return apsp_inc(*finalize(child), ctx, w_);
  }

  ApspValue on_subst(const SubstContext& ctx, std::span<ApspValue> children) {
    return apsp_sub(ctx.pattern, children);
  }

  ApspValue on_subst_td(const SubstTdContext& ctx, std::span<ApspValue> children) {
    return apsp_subtd(ctx, children);
  }

  /// dist(u, v) = min(dist'(u, v), dist(u, x) + dist(x, v) - w(x)).
  static ApspValue apsp_inc(const PathSummaryI& child, const IncContext& ctx,
                            std::span<const double> w) {
    IncExtension ext = extend_inc(ctx, w, child.potential, child.msp);
    if (ext.negative_cycle) return NegativeCycle{};
    const std::size_t nc = child.size();
    const std::size_t base = ctx.child.begin;
    const double wx = w[ctx.vertex];
    auto s = std::make_shared<PathSummaryI>();
    s->potential = std::move(ext.potential);
    s->msp = ext.msp;
    s->dist = DistMatrix(nc + 1);
    DistMatrix& d = s->dist;
    for (std::size_t u = 0; u < nc; ++u) {
      const double to_x = ext.to_x[u];
      for (std::size_t v = 0; v < nc; ++v) {
        d(u, v) = std::min(child.dist(u, v), to_x + ext.from_x[v] + w[base + v]);
      }
      d(u, nc) = to_x + wx;
      d(nc, u) = ext.from_x[u] + w[base + u];
    }
    d(nc, nc) = wx;
    s->min_out.assign(nc + 1, kInfinity);
    s->min_in.assign(nc + 1, kInfinity);
    for (std::size_t u = 0; u <= nc; ++u) {
      for (std::size_t v = 0; v <= nc; ++v) {
        s->min_out[u] = std::min(s->min_out[u], d(u, v));
        s->min_in[v] = std::min(s->min_in[v], d(u, v));
      }
    }
    return s;
  }

  static ApspValue apsp_sub(const Graph& pattern, std::span<const ApspValue> children) {
    std::vector<double> omega;
    if (!module_weights(children, omega)) return NegativeCycle{};
    auto floyd = floyd_vertex_weighted(pattern, omega);
    if (std::holds_alternative<NegativeCycle>(floyd)) return NegativeCycle{};
    return compose(children, std::move(std::get<DistMatrix>(floyd)), std::move(omega));
  }

  /// H_w distances from an inner fold over the pattern expression.
  static ApspValue apsp_subtd(const SubstTdContext& ctx, std::span<const ApspValue> children) {
    std::vector<double> omega;
    if (!module_weights(children, omega)) return NegativeCycle{};
    std::vector<double> by_layout(ctx.layout.graph.vertex_count());
    for (std::size_t s = 0; s < omega.size(); ++s) by_layout[ctx.layout_of_binding[s]] = omega[s];
    ApspHandlers inner(by_layout);
    ApspValue r = fold_layout(ctx.layout, inner).value;
    if (std::holds_alternative<NegativeCycle>(r)) return NegativeCycle{};
    auto full = finalize(r);
    const std::size_t t = omega.size();
    DistMatrix d(t);
    for (std::size_t i = 0; i < t; ++i) {
      for (std::size_t j = 0; j < t; ++j) {
        d(i, j) = full->dist(ctx.layout_of_binding[i], ctx.layout_of_binding[j]);
      }
    }
    return compose(children, std::move(d), std::move(omega));
  }

 private:
  static bool module_weights(std::span<const ApspValue> children, std::vector<double>& omega) {
    omega.clear();
    for (const auto& c : children) {
      if (std::holds_alternative<NegativeCycle>(c)) return false;
      omega.push_back(core(to_child(c)).msp);
    }
    return true;
  }

  static PathChild to_child(const ApspValue& v) {
    if (auto s = std::get_if<std::shared_ptr<const PathSummaryS>>(&v)) return *s;
    return std::get<std::shared_ptr<const PathSummaryI>>(v);
  }

  static ApspValue compose(std::span<const ApspValue> children, DistMatrix d,
                           std::vector<double> omega) {
    auto s = std::make_shared<PathSummaryS>();
    const std::size_t t = children.size();
    const std::vector<double> pi_h = detail::pattern_potential(d, omega);
    s->msp = detail::min_entry(d);
    for (std::size_t i = 0; i < t; ++i) {
      PathChild child = to_child(children[i]);
      const PathCore& c = core(child);
      double leave = kInfinity;
      double enter = kInfinity;
      for (std::size_t j = 0; j < t; ++j) {
        leave = std::min(leave, d(i, j) - omega[i]);
        enter = std::min(enter, d(j, i) - omega[i]);
      }
      for (std::size_t a = 0; a < c.size(); ++a) {
        s->potential.push_back(c.potential[a] + pi_h[i]);
        s->min_out.push_back(c.min_out[a] + leave);
        s->min_in.push_back(c.min_in[a] + enter);
      }
      s->children.push_back(std::move(child));
    }
    s->pattern_dists = std::move(d);
    s->module_weights = std::move(omega);
    return s;
  }

  std::span<const double> w_;
};

// ---------------------------------------------------------------------------
// Solvers.

/// Checks every emitted potential against the edge-shifted costs of its
/// node's subgraph; needs a layout with all edges built.
class PotentialVerifier {
 public:
  PotentialVerifier(const Graph& g, std::span<const double> w) : g_(&g), w_(w) {}

  void operator()(std::size_t, NodeRange range, const NcdValue& v) {
    if (auto s = std::get_if<NcdSummary>(&v)) check(range, s->potential);
  }

  void operator()(std::size_t, NodeRange range, const ApspValue& v) {
    if (auto s = std::get_if<std::shared_ptr<const PathSummaryS>>(&v)) {
      check(range, (*s)->potential);
    } else if (auto i = std::get_if<std::shared_ptr<const PathSummaryI>>(&v)) {
      check(range, (*i)->potential);
    }
  }

  std::size_t checked() const { return checked_; }
  std::size_t violations() const { return violations_; }

 private:
  void check(NodeRange range, const std::vector<double>& pi) {
    ++checked_;
    if (pi.size() != range.size()) {
      ++violations_;
      return;
    }
    SubgraphView view(*g_, range);
    for (std::size_t u = range.begin; u < range.end; ++u) {
      for (VertexIndex v : view.out_within(static_cast<VertexIndex>(u))) {
        if (w_[u] + pi[u - range.begin] - pi[v - range.begin] < -kTolerance) {
          ++violations_;
          return;
        }
      }
    }
  }

  const Graph* g_;
  std::span<const double> w_;
  std::size_t checked_ = 0;
  std::size_t violations_ = 0;
};

struct VerifyReport {
  bool enabled = false;
  std::size_t checked = 0;
  std::size_t violations = 0;
};

struct NcdResult {
  bool negative_cycle = false;
  double msp = kInfinity;
  FoldStats stats;
  VerifyReport verify;
};

struct ApspResult {
  bool negative_cycle = false;
  DistMatrix dist;                 // vertex order of `names`
  std::vector<std::string> names;  // evaluation order
  double msp = kInfinity;
  FoldStats stats;
  VerifyReport verify;
};

namespace detail {

inline Expression directed_normalized(const Expression& e) {
  if (e.mode != GraphKind::directed) {
    throw ModeError("path problems need a directed expression");
  }
  return is_normalized(e.root) ? e : normalize(e);
}

}  // namespace detail

inline NcdResult solve_ncd(const Expression& e, const WeightMap& weights, bool verify = false) {
  Expression ne = detail::directed_normalized(e);
  Layout layout = build_layout(ne.root, ne.mode,
                               verify ? EdgePolicy::all : EdgePolicy::inc_subtrees);
  std::vector<double> w = dense_weights(layout.graph, weights);
  NcdHandlers handlers(w);
  NcdResult result;
  FoldResult<NcdValue> r;
  if (verify) {
    PotentialVerifier verifier(layout.graph, w);
    r = fold_layout(layout, handlers, verifier);
    result.verify = {true, verifier.checked(), verifier.violations()};
  } else {
    r = fold_layout(layout, handlers);
  }
  result.stats = r.stats;
  if (std::holds_alternative<NegativeCycle>(r.value)) {
    result.negative_cycle = true;
  } else {
    result.msp = std::get<NcdSummary>(r.value).msp;
  }
  return result;
}

inline bool detect_negative_cycle(const Expression& e, const WeightMap& weights) {
  return solve_ncd(e, weights).negative_cycle;
}

inline ApspResult solve_apsp(const Expression& e, const WeightMap& weights, bool verify = false) {
  Expression ne = detail::directed_normalized(e);
  Layout layout = build_layout(ne.root, ne.mode,
                               verify ? EdgePolicy::all : EdgePolicy::inc_subtrees);
  std::vector<double> w = dense_weights(layout.graph, weights);
  ApspHandlers handlers(w);
  ApspResult result;
  result.names = layout.graph.names();
  FoldResult<ApspValue> r;
  if (verify) {
    PotentialVerifier verifier(layout.graph, w);
    r = fold_layout(layout, handlers, verifier);
    result.verify = {true, verifier.checked(), verifier.violations()};
  } else {
    r = fold_layout(layout, handlers);
  }
  result.stats = r.stats;
  if (std::holds_alternative<NegativeCycle>(r.value)) {
    result.negative_cycle = true;
    return result;
  }
  auto full = finalize(r.value);
  result.msp = full->msp;
  result.dist = full->dist;
  return result;
}

/// Distances in evaluate(e) vertex order, or NegativeCycle.
inline FloydResult all_pairs(const Expression& e, const WeightMap& weights) {
  ApspResult r = solve_apsp(e, weights);
  if (r.negative_cycle) return NegativeCycle{};
  return std::move(r.dist);
}

}  // namespace algexpr
