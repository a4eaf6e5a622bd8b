// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "algexpr/error.hpp"
#include "algexpr/evaluate.hpp"
#include "algexpr/expr.hpp"
#include "algexpr/params.hpp"
#include "algexpr/validate.hpp"

namespace algexpr {

/// How edges are oriented in directed expressions. `dag` never closes a
/// cycle, `sparse_back` closes few, `cyclic` orients freely.
enum class Orientation { dag, sparse_back, cyclic };

struct GenSpec {
  GraphKind mode = GraphKind::undirected;
  std::size_t k = 0;
  std::size_t h = 0;
  std::size_t l = 0;
  std::size_t budget = 10;  // exact number of vertices
  double weight_min = -5;
  double weight_max = 5;
  std::uint64_t seed = 1;
  Orientation orientation = Orientation::cyclic;
  std::size_t max_pattern = 12;  // order cap for subst-td patterns
};

/// Smallest budget for which the targets can be met.
inline std::size_t min_budget(const GenSpec& s) {
  if (s.h == 0 && s.l == 0) return std::max<std::size_t>(s.k, 1);
  std::size_t need = s.k + s.h + (s.l ? std::max<std::size_t>(s.l, 2) : 0);
  return std::max<std::size_t>(need, 1);
}

namespace detail {

class ExprGenerator {
 public:
  ExprGenerator(const GenSpec& spec, std::mt19937_64& rng, bool pattern,
                std::string prefix)
      : spec_(spec), rng_(rng), pattern_(pattern), prefix_(std::move(prefix)) {
    pure_td_ = pattern || (spec.k > 0 && spec.h == 0 && spec.l == 0);
    density_ = uniform(0.15, 0.7);
  }

  struct Built {
    ExprNode node;
    std::vector<std::string> names;
  };

  struct Needs {
    bool k = false;
    bool h = false;
    bool l = false;
    bool any() const { return k || h || l; }
  };

  /// Subtree with exactly b vertices and inc nesting <= kc (== kc when
  /// needs.k); needs.h / needs.l ask for a pattern of exactly h / l.
  Built gen(std::size_t b, std::size_t kc, Needs needs) {
    if (b == 0) return {make_empty(), {}};
    if (needs.any()) return gen_needy(b, kc, needs);
    if (b == 1) return leaf(kc);

    enum Op { inc, union_, join, subst, subst_td };
    std::vector<std::pair<Op, double>> ops;
    if (kc >= 1 && (!pure_td_ || kc >= 2 || pattern_)) ops.push_back({inc, 0.25});
    ops.push_back({union_, 0.35});
    if (join_allowed()) ops.push_back({join, 0.25});
    if (spec_.h >= 2 && !pattern_) ops.push_back({subst, 0.2});
    if (spec_.l >= 1 && !pattern_) ops.push_back({subst_td, 0.1});
    const Op op = pick(ops);
    switch (op) {
      case inc:
        return make_inc_node(b, kc, {});
      case union_:
      case join: {
        bool is_join = op == join;
        std::size_t t = between(2, std::min<std::size_t>(b, 4));
        auto parts = split(b, std::vector<std::size_t>(t, 1));
        std::vector<Built> kids;
        for (auto p : parts) kids.push_back(gen(p, kc, {}));
        return combine(is_join ? NodeKind::join : NodeKind::union_, std::move(kids));
      }
      case subst: {
        std::size_t q = between(2, std::min(spec_.h, b));
        return make_subst_node(b, kc, q, {});
      }
      case subst_td: {
        std::size_t q = between(2, std::min(spec_.max_pattern, b));
        std::size_t depth = between(1, std::min(spec_.l, q));
        return make_subst_td_node(b, kc, q, depth, {});
      }
    }
    return leaf(kc);
  }

  /// Pattern expression over q named vertices with inc nesting exactly depth.
  Built pattern_expression(std::size_t q, std::size_t depth) {
    return gen(q, depth, Needs{depth > 0, false, false});
  }

 private:
  std::size_t min_for(std::size_t kc, Needs n) const {
    std::size_t need = 0;
    if (n.k) need += kc;
    if (n.h) need += spec_.h;
    if (n.l) need += std::max<std::size_t>(spec_.l, 2);
    return std::max<std::size_t>(need, 1);
  }

  Built gen_needy(std::size_t b, std::size_t kc, Needs needs) {
    enum Choice { here_h, here_l, inc_top, split_up };
    std::vector<std::pair<Choice, double>> options;
    Needs rest_h = needs;
    rest_h.h = false;
    Needs rest_l = needs;
    rest_l.l = false;
    if (needs.h && b >= spec_.h - 1 + min_for(kc, rest_h)) options.push_back({here_h, 1.0});
    if (needs.l) {
      std::size_t q = std::max<std::size_t>(spec_.l, 2);
      if (b >= q - 1 + min_for(kc, rest_l)) options.push_back({here_l, 1.0});
    }
    if (needs.k && kc >= 1) {
      Needs child = needs;
      child.k = kc >= 2;
      bool ok = b >= 1 + (child.any() ? min_for(kc - 1, child) : 0);
      if (pure_td_ && !pattern_ && kc == 1) ok = ok && b == 1;
      if (ok) options.push_back({inc_top, b <= min_for(kc, needs) + 1 ? 3.0 : 1.0});
    }
    if (b >= min_for(kc, needs) + 1) options.push_back({split_up, 1.5});
    if (options.empty()) throw Error("generator ran out of budget");

    switch (pick(options)) {
      case here_h:
        return make_subst_node(b, kc, spec_.h, rest_h);
      case here_l:
        return make_subst_td_node(b, kc, std::max<std::size_t>(spec_.l, 2), spec_.l, rest_l);
      case inc_top: {
        Needs child = needs;
        child.k = kc >= 2;
        return make_inc_node(b, kc, child);
      }
      case split_up:
        break;
    }
    // Neutral split: the needs travel together into one operand.
    std::size_t t = between(2, std::min<std::size_t>(b - min_for(kc, needs) + 1, 4));
    std::vector<std::size_t> mins(t, 1);
    std::size_t carrier = between(0, t - 1);
    mins[carrier] = min_for(kc, needs);
    auto parts = split(b, mins);
    std::vector<Built> kids;
    for (std::size_t i = 0; i < t; ++i) kids.push_back(gen(parts[i], kc, i == carrier ? needs : Needs{}));
    bool use_join = join_allowed() && coin(0.4);
    return combine(use_join ? NodeKind::join : NodeKind::union_, std::move(kids));
  }

  Built leaf(std::size_t kc) {
    if (pure_td_ && !pattern_) return inc_leaf();
    if (kc >= 1 && coin(0.2)) return inc_leaf();
    std::string name = fresh();
    return {make_vertex(name), {name}};
  }

  Built inc_leaf() {
    std::string name = fresh();
    return {make_inc(name, {}, {}, make_empty()), {name}};
  }

  Built make_inc_node(std::size_t b, std::size_t kc, Needs child_needs) {
    Built child;
    if (pure_td_ && !pattern_ && kc == 1) {
      child = {make_empty(), {}};
    } else {
      child = gen(b - 1, kc - 1, child_needs);
    }
    std::string x = fresh();
    std::vector<std::string> out;
    std::vector<std::string> in;
    for (const auto& u : child.names) {
      if (!coin(density_)) continue;
      if (spec_.mode == GraphKind::undirected) {
        out.push_back(u);
        continue;
      }
      switch (spec_.orientation) {
        case Orientation::dag:
          out.push_back(u);
          break;
        case Orientation::sparse_back:
          (coin(0.85) ? out : in).push_back(u);
          break;
        case Orientation::cyclic: {
          double r = uniform(0, 1);
          if (r < 0.45) {
            out.push_back(u);
          } else if (r < 0.9) {
            in.push_back(u);
          } else {
            out.push_back(u);
            in.push_back(u);
          }
          break;
        }
      }
    }
    Built result{make_inc(x, std::move(out), std::move(in), std::move(child.node)),
                 std::move(child.names)};
    result.names.push_back(x);
    return result;
  }

  Graph random_pattern(std::size_t q) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < q; ++i) names.push_back("p" + std::to_string(i));
    Graph g(spec_.mode);
    for (const auto& n : names) g.add_vertex(n);
    double p = uniform(0.3, 0.9);
    for (VertexIndex i = 0; i < q; ++i) {
      for (VertexIndex j = i + 1; j < q; ++j) {
        if (spec_.mode == GraphKind::undirected) {
          if (coin(p)) g.add_edge_unchecked(i, j);
          continue;
        }
        switch (spec_.orientation) {
          case Orientation::dag:
            if (coin(p)) g.add_edge_unchecked(i, j);
            break;
          case Orientation::sparse_back:
            if (coin(p)) g.add_edge_unchecked(i, j);
            if (coin(p * 0.15)) g.add_edge_unchecked(j, i);
            break;
          case Orientation::cyclic:
            if (coin(p / 2)) g.add_edge_unchecked(i, j);
            if (coin(p / 2)) g.add_edge_unchecked(j, i);
            break;
        }
      }
    }
    g.sort_adjacency();
    return g;
  }

  Built make_subst_node(std::size_t b, std::size_t kc, std::size_t q, Needs rest) {
    Graph pattern = random_pattern(q);
    std::vector<std::size_t> mins(q, 1);
    std::size_t carrier = between(0, q - 1);
    if (rest.any()) mins[carrier] = min_for(kc, rest);
    auto parts = split(b, mins);
    std::vector<std::string> order;
    for (VertexIndex v = 0; v < q; ++v) order.push_back(pattern.name(v));
    return substitute(std::move(pattern), {}, order, parts, kc, carrier, rest);
  }

  Built make_subst_td_node(std::size_t b, std::size_t kc, std::size_t q, std::size_t depth,
                           Needs rest) {
    ExprGenerator inner(spec_, rng_, true, "p");
    Built pattern = inner.pattern_expression(q, depth);
    std::vector<std::size_t> mins(q, 1);
    std::size_t carrier = between(0, q - 1);
    if (rest.any()) mins[carrier] = min_for(kc, rest);
    auto parts = split(b, mins);
    return substitute(Graph(spec_.mode), std::move(pattern.node), pattern.names, parts, kc,
                      carrier, rest);
  }

  Built substitute(Graph pattern, ExprNode pattern_expr, std::vector<std::string> vertices,
                   const std::vector<std::size_t>& parts, std::size_t kc, std::size_t carrier,
                   Needs rest) {
    // Bindings are listed in a shuffled order, independent of the pattern.
    std::vector<std::size_t> perm(vertices.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng_);
    std::vector<std::string> bindings;
    std::vector<ExprNode> children;
    std::vector<std::string> names;
    for (std::size_t s : perm) {
      Built kid = gen(parts[s], kc, s == carrier ? rest : Needs{});
      bindings.push_back(vertices[s]);
      children.push_back(std::move(kid.node));
      names.insert(names.end(), kid.names.begin(), kid.names.end());
    }
    ExprNode node = pattern.vertex_count()
                        ? make_subst(std::move(pattern), std::move(bindings), std::move(children))
                        : make_subst_td(std::move(pattern_expr), std::move(bindings),
                                        std::move(children));
    return {std::move(node), std::move(names)};
  }

  Built combine(NodeKind kind, std::vector<Built> kids) {
    std::vector<ExprNode> nodes;
    std::vector<std::string> names;
    for (auto& k : kids) {
      nodes.push_back(std::move(k.node));
      names.insert(names.end(), k.names.begin(), k.names.end());
    }
    ExprNode node = kind == NodeKind::join ? make_join(std::move(nodes)) : make_union(std::move(nodes));
    return {std::move(node), std::move(names)};
  }

  bool join_allowed() const {
    if (pure_td_) return false;
    return !(spec_.mode == GraphKind::directed && spec_.orientation == Orientation::dag);
  }

  /// Splits b into mins.size() parts, part i >= mins[i].
  std::vector<std::size_t> split(std::size_t b, std::vector<std::size_t> mins) {
    std::size_t floor = 0;
    for (auto m : mins) floor += m;
    if (floor > b) throw Error("generator split below minimum");
    std::size_t rest = b - floor;
    std::vector<std::size_t> cuts;
    for (std::size_t i = 0; i + 1 < mins.size(); ++i) cuts.push_back(between(0, rest));
    cuts.push_back(0);
    cuts.push_back(rest);
    std::sort(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i < mins.size(); ++i) mins[i] += cuts[i + 1] - cuts[i];
    return mins;
  }

  template <class T>
  T pick(const std::vector<std::pair<T, double>>& options) {
    double total = 0;
    for (const auto& o : options) total += o.second;
    double r = uniform(0, total);
    for (const auto& o : options) {
      if (r < o.second) return o.first;
      r -= o.second;
    }
    return options.back().first;
  }

  std::size_t between(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  bool coin(double p) { return uniform(0, 1) < p; }
  std::string fresh() { return prefix_ + std::to_string(next_name_++); }

  const GenSpec& spec_;
  std::mt19937_64& rng_;
  bool pattern_;
  bool pure_td_;
  std::string prefix_;
  double density_;
  std::size_t next_name_ = 0;
};

}  // namespace detail

/// Random expression with params exactly (k, h, l) and exactly `budget`
/// vertices; deterministic in the seed.
inline Expression gen_random(const GenSpec& spec) {
  if (spec.h == 1) throw Error("infeasible spec: substitution patterns have at least two vertices");
  if (spec.budget < min_budget(spec)) {
    throw Error("infeasible spec: budget " + std::to_string(spec.budget) + " below " +
                std::to_string(min_budget(spec)));
  }
  std::mt19937_64 rng(spec.seed);
  const Params want{spec.k, spec.h, spec.l};
  for (int attempt = 0; attempt <= 100; ++attempt) {
    detail::ExprGenerator gen(spec, rng, false, "v");
    detail::ExprGenerator::Needs needs{spec.k > 0, spec.h > 0, spec.l > 0};
    Expression e{spec.mode, gen.gen(spec.budget, spec.k, needs).node};
    if (params(e) == want && validate(e).empty() &&
        evaluate(e).vertex_count() == spec.budget) {
      return e;
    }
  }
  throw Error("generator missed the targets " + to_string(want) + " after 100 retries");
}

/// Tree-depth expression over q vertices p0 .. p{q-1} with inc nesting
/// exactly `depth`, oriented as `spec` says.
inline ExprNode gen_td_pattern(const GenSpec& spec, std::size_t q, std::size_t depth) {
  if (q < 2 || depth < 1 || depth > q) throw Error("infeasible td-pattern request");
  std::mt19937_64 rng(spec.seed);
  for (int attempt = 0; attempt <= 100; ++attempt) {
    detail::ExprGenerator gen(spec, rng, true, "p");
    ExprNode node = gen.pattern_expression(q, depth).node;
    if (inc_nesting(node) == depth) return node;
  }
  throw Error("td-pattern generator missed its depth after 100 retries");
}

/// Weights for every vertex of g: multiples of 1/16 in [weight_min, weight_max],
/// so sums of a few thousand weights stay exact in double arithmetic.
inline WeightMap gen_weights(const Graph& g, const GenSpec& spec) {
  std::mt19937_64 rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  auto lo = static_cast<long>(std::ceil(spec.weight_min * 16));
  auto hi = static_cast<long>(std::floor(spec.weight_max * 16));
  std::uniform_int_distribution<long> pick(lo, hi);
  WeightMap w;
  for (const auto& name : g.names()) w[name] = static_cast<double>(pick(rng)) / 16.0;
  return w;
}

// ---------------------------------------------------------------------------
// Fixtures.

struct Fixture {
  Expression expr;
  std::string comment;  // derivation notes, written as '#' lines
};

namespace detail {

inline void edge_to(std::vector<std::string>& out, std::vector<std::string>& in,
                    GraphKind mode, const std::string& v) {
  out.push_back(v);
  if (mode == GraphKind::directed) in.push_back(v);
}

/// Subdivided star of degree p as a td-expression: centre c over middles
/// m_i, each over its pendant l_i.
inline ExprNode substar_expr(std::size_t p, GraphKind mode, const std::string& prefix) {
  std::vector<ExprNode> arms;
  std::vector<std::string> out;
  std::vector<std::string> in;
  for (std::size_t i = 1; i <= p; ++i) {
    std::string m = prefix + "m" + std::to_string(i);
    std::string l = prefix + "l" + std::to_string(i);
    std::vector<std::string> mo;
    std::vector<std::string> mi;
    edge_to(mo, mi, mode, l);
    arms.push_back(make_inc(m, mo, mi, make_inc(l, {}, {}, make_empty())));
    edge_to(out, in, mode, m);
  }
  return make_inc(prefix + "c", out, in, make_union(std::move(arms)));
}

inline ExprNode clique(const std::string& prefix, std::size_t size) {
  if (size == 1) return make_vertex(prefix + "1");
  std::vector<ExprNode> parts;
  for (std::size_t j = 1; j <= size; ++j) parts.push_back(make_vertex(prefix + std::to_string(j)));
  return make_join(std::move(parts));
}

}  // namespace detail

/// Hand-built expressions for the separating constructions: "apex-cograph",
/// "substar", "star-cliques" and "clique-pendant". `k` sizes the K_{k+1}
/// modules of the substitution fixtures.
inline Fixture gen_fixture(const std::string& name, std::size_t p, std::size_t k = 1,
                           GraphKind mode = GraphKind::undirected) {
  if (p < 2) throw Error("fixture parameter p must be at least 2");
  const std::string ps = std::to_string(p);
  Fixture f;
  f.expr.mode = mode;
  if (name == "apex-cograph") {
    // G - x is the join of p non-edges, a cograph; x sees every v_i_1.
    std::vector<ExprNode> pairs;
    std::vector<std::string> out;
    std::vector<std::string> in;
    for (std::size_t i = 1; i <= p; ++i) {
      std::string a = "v" + std::to_string(i) + "_1";
      std::string b = "v" + std::to_string(i) + "_2";
      pairs.push_back(make_union({make_vertex(a), make_vertex(b)}));
      detail::edge_to(out, in, mode, a);
    }
    f.expr.root = make_inc("x", out, in, make_join(std::move(pairs)));
    std::size_t m = 2 * p * (p - 1) + p;
    f.comment =
        "p = " + ps + " pairs v_i_1, v_i_2 (non-adjacent), every pair joined to every other pair;\n"
        "x is adjacent to v_1_1 .. v_" + ps + "_1.\n"
        "Without x the graph is join(union(v_i_1, v_i_2)), a cograph, so one inc on top\n"
        "gives params (1,0,0).\n"
        "n = 2p + 1 = " + std::to_string(2 * p + 1) + ", m = 4 C(p,2) + p = " + std::to_string(m) +
        (mode == GraphKind::directed ? " (each edge in both directions)" : "") + ".";
  } else if (name == "substar") {
    f.expr.root = detail::substar_expr(p, mode, "");
    f.comment =
        "Subdivided star of degree " + ps + ": centre c, middles m_i, pendants l_i.\n"
        "Each l_i is inc(l_i) over the empty graph, each m_i an inc over its l_i, and c an inc\n"
        "over the union of the arms: inc nesting 3, params (3,0,0).\n"
        "n = 2p + 1 = " + std::to_string(2 * p + 1) + ", m = 2p = " + std::to_string(2 * p) + ".";
  } else if (name == "star-cliques") {
    ExprNode pattern = detail::substar_expr(p, mode, "");
    std::vector<std::string> bindings;
    std::vector<ExprNode> children;
    std::vector<std::string> verts{"c"};
    for (std::size_t i = 1; i <= p; ++i) {
      verts.push_back("m" + std::to_string(i));
      verts.push_back("l" + std::to_string(i));
    }
    for (const auto& v : verts) {
      bindings.push_back(v);
      children.push_back(detail::clique(v + "_", k + 1));
    }
    f.expr.root = make_subst_td(std::move(pattern), std::move(bindings), std::move(children));
    std::size_t q = k + 1;
    std::size_t m = (2 * p + 1) * q * (q - 1) / 2 + 2 * p * q * q;
    f.comment =
        "Subdivided star of degree " + ps + " as the pattern expression (inc nesting 3),\n"
        "every pattern vertex replaced by a clique K_" + std::to_string(q) +
        " written as a join: params (0,0,3).\n"
        "n = (2p + 1)(k + 1) = " + std::to_string((2 * p + 1) * q) +
        ", m = (2p + 1) C(k+1,2) + 2p (k+1)^2 = " + std::to_string(m) + ".";
  } else if (name == "clique-pendant") {
    Graph h(mode);
    for (std::size_t i = 1; i <= p; ++i) h.add_vertex("c" + std::to_string(i));
    for (std::size_t i = 1; i <= p; ++i) h.add_vertex("d" + std::to_string(i));
    for (VertexIndex i = 0; i < p; ++i) {
      for (VertexIndex j = 0; j < p; ++j) {
        if (i == j || (mode == GraphKind::undirected && j < i)) continue;
        h.add_edge_unchecked(i, j);
      }
      h.add_edge_unchecked(i, static_cast<VertexIndex>(p + i));
      if (mode == GraphKind::directed) h.add_edge_unchecked(static_cast<VertexIndex>(p + i), i);
    }
    h.sort_adjacency();
    std::vector<std::string> bindings = h.names();
    std::vector<ExprNode> children;
    for (const auto& v : bindings) children.push_back(detail::clique(v + "_", k + 1));
    f.expr.root = make_subst(std::move(h), std::move(bindings), std::move(children));
    f.comment =
        "Clique K_" + ps + " on c_1 .. c_" + ps + " with a pendant d_i at every c_i, used as an\n"
        "explicit pattern of order 2p = " + std::to_string(2 * p) + "; modules are K_" +
        std::to_string(k + 1) + ": params (0," + std::to_string(2 * p) + ",0).";
  } else {
    throw Error("unknown fixture '" + name + "'");
  }
  return f;
}

inline std::vector<std::string> fixture_names() {
  return {"apex-cograph", "substar", "star-cliques", "clique-pendant"};
}

}  // namespace algexpr
