// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <variant>

#include "algexpr/evaluate.hpp"
#include "algexpr/oracle.hpp"
#include "algexpr/paths.hpp"
#include "algexpr/triangles.hpp"

namespace algexpr {

/// Largest vertex count the oracle comparison accepts.
inline constexpr std::size_t kOracleLimit = 500;

struct CheckResult {
  bool pass = false;
  double dev = 0;  // largest absolute deviation; inf on a symbolic mismatch
  std::string detail;
};

/// Deviation between two distance matrices; an infinite entry must match
/// exactly.
inline double max_deviation(const DistMatrix& a, const DistMatrix& b) {
  if (a.size() != b.size()) return kInfinity;
  double dev = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      double x = a(i, j);
      double y = b(i, j);
      if (x == kInfinity || y == kInfinity) {
        if (x != y) return kInfinity;
        continue;
      }
      dev = std::max(dev, std::abs(x - y));
    }
  }
  return dev;
}

inline CheckResult compare_triangles(std::uint64_t solver, std::uint64_t oracle) {
  CheckResult r;
  r.pass = solver == oracle;
  r.dev = solver > oracle ? static_cast<double>(solver - oracle)
                          : static_cast<double>(oracle - solver);
  if (!r.pass) r.detail = "triangles " + std::to_string(solver) + " vs " + std::to_string(oracle);
  return r;
}

inline CheckResult compare_apsp(const FloydResult& solver, const FloydResult& oracle,
                                double tolerance) {
  CheckResult r;
  bool a = std::holds_alternative<NegativeCycle>(solver);
  bool b = std::holds_alternative<NegativeCycle>(oracle);
  if (a || b) {
    r.pass = a == b;
    r.dev = r.pass ? 0 : kInfinity;
    if (!r.pass) r.detail = "negative cycle disagreement";
    return r;
  }
  r.dev = max_deviation(std::get<DistMatrix>(solver), std::get<DistMatrix>(oracle));
  r.pass = r.dev <= tolerance;
  if (!r.pass) r.detail = "distance deviation";
  return r;
}

inline void require_oracle_size(const Graph& g) {
  if (g.vertex_count() > kOracleLimit) {
    throw Error("graph has " + std::to_string(g.vertex_count()) +
                " vertices, above the oracle limit of " + std::to_string(kOracleLimit));
  }
}

/// Fold observer comparing every node's counts with its induced subgraph.
class TriangleVerifier {
 public:
  explicit TriangleVerifier(const Graph& g) : g_(g) {}

  void operator()(std::size_t, NodeRange range, const TriFold& value) {
    ++checked_;
    Graph sub = g_.induced(range);
    TriFold want{sub.vertex_count(), sub.edge_count(), oracle_triangles(sub)};
    if (!(want == value)) ++violations_;
  }

  std::size_t checked() const { return checked_; }
  std::size_t violations() const { return violations_; }

 private:
  const Graph& g_;
  std::size_t checked_ = 0;
  std::size_t violations_ = 0;
};

struct TriangleRun {
  FoldResult<TriFold> result;
  VerifyReport verify;
};

/// solve_triangles, optionally checking every fold node against the
/// materialized subgraph.
inline TriangleRun run_triangles(const Expression& e, bool verify) {
  if (!verify) return {solve_triangles(e), {}};
  if (e.mode != GraphKind::undirected) {
    throw ModeError("triangle counting needs an undirected expression");
  }
  Expression ne = is_normalized(e.root) ? e : normalize(e);
  Layout layout = build_layout(ne.root, ne.mode, EdgePolicy::all);
  TriangleHandlers handlers;
  TriangleVerifier verifier(layout.graph);
  TriangleRun run{fold_layout(layout, handlers, verifier), {}};
  run.verify = {true, verifier.checked(), verifier.violations()};
  return run;
}

inline CheckResult check_triangles(const Expression& e) {
  Graph g = evaluate(e);
  require_oracle_size(g);
  return compare_triangles(count_triangles(e), oracle_triangles(g));
}

/// Negative cycle verdicts must agree; without a cycle msp must match the
/// smallest oracle distance.
inline CheckResult check_ncd(const Expression& e, const WeightMap& weights, double tolerance) {
  Graph g = evaluate(e);
  require_oracle_size(g);
  std::vector<double> w = dense_weights(g, weights);
  NcdResult got = solve_ncd(e, weights);
  FloydResult want = oracle_apsp(g, w);
  CheckResult r;
  bool expect = std::holds_alternative<NegativeCycle>(want);
  if (got.negative_cycle != expect) {
    r.dev = kInfinity;
    r.detail = "negative cycle disagreement";
    return r;
  }
  if (!expect) {
    const DistMatrix& d = std::get<DistMatrix>(want);
    double best = kInfinity;
    for (std::size_t i = 0; i < d.size(); ++i) {
      for (std::size_t j = 0; j < d.size(); ++j) best = std::min(best, d(i, j));
    }
    r.dev = best == got.msp ? 0 : std::abs(best - got.msp);
    if (r.dev > tolerance) {
      r.detail = "msp deviation";
      return r;
    }
  }
  r.pass = true;
  return r;
}

inline CheckResult check_apsp(const Expression& e, const WeightMap& weights, double tolerance) {
  Graph g = evaluate(e);
  require_oracle_size(g);
  return compare_apsp(all_pairs(e, weights), oracle_apsp(g, dense_weights(g, weights)),
                      tolerance);
}

}  // namespace algexpr
