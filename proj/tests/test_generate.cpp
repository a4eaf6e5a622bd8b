// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace algexpr;
using namespace testing_support;

namespace {

// Counts node kinds over the whole tree, pattern expressions included.
void count_kinds(const ExprNode& n, std::map<NodeKind, std::size_t>& out) {
  ++out[n.kind];
  if (n.pattern_expr) count_kinds(*n.pattern_expr, out);
  for (const auto& c : n.children) count_kinds(c, out);
}

std::size_t max_explicit_order(const ExprNode& n) {
  std::size_t best = n.pattern ? n.pattern->graph.vertex_count() : 0;
  for (const auto& c : n.children) best = std::max(best, max_explicit_order(c));
  return best;
}

}  // namespace

TEST(GenRandom, IsDeterministic) {
  GenSpec spec = spec_for(GraphKind::directed, {2, 3, 2}, 20, 99);
  EXPECT_EQ(print(gen_random(spec)), print(gen_random(spec)));
  GenSpec other = spec;
  other.seed = 100;
  EXPECT_NE(print(gen_random(spec)), print(gen_random(other)));
}

TEST(GenRandom, HitsEveryShapeExactly) {
  for (auto mode : {GraphKind::undirected, GraphKind::directed}) {
    for (Shape s : shapes()) {
      for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        GenSpec spec = spec_for(mode, s, 4 + seed * 2, seed);
        Expression e = gen_random(spec);
        EXPECT_EQ(params(e), (Params{s.k, s.h, s.l})) << print(e);
        EXPECT_TRUE(validate(e).empty());
        EXPECT_EQ(evaluate(e).vertex_count(), spec.budget);
      }
    }
  }
}

TEST(GenRandom, MinimumBudgetIsEnough) {
  for (auto mode : {GraphKind::undirected, GraphKind::directed}) {
    for (Shape s : shapes()) {
      GenSpec spec = spec_for(mode, s, 0, 3);
      ASSERT_EQ(spec.budget, min_budget(spec));
      Expression e = gen_random(spec);
      EXPECT_EQ(evaluate(e).vertex_count(), spec.budget);
    }
  }
}

TEST(GenRandom, RejectsInfeasibleSpecs) {
  GenSpec one;
  one.h = 1;
  EXPECT_THROW(gen_random(one), Error);
  GenSpec tight;
  tight.k = 2;
  tight.h = 3;
  tight.budget = 4;
  EXPECT_THROW(gen_random(tight), Error);
}

TEST(GenRandom, ZeroShapeIsACograph) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Expression e = gen_random(spec_for(GraphKind::undirected, {0, 0, 0}, 15, seed));
    std::map<NodeKind, std::size_t> kinds;
    count_kinds(e.root, kinds);
    EXPECT_EQ(kinds[NodeKind::inc], 0u);
    EXPECT_EQ(kinds[NodeKind::subst_td], 0u);
    EXPECT_LE(max_explicit_order(e.root), 2u);
    EXPECT_EQ(params(e), (Params{0, 0, 0}));
  }
}

TEST(GenRandom, PureIncShapeHasNoSubstitutions) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Expression e = gen_random(spec_for(GraphKind::undirected, {3, 0, 0}, 12, seed));
    std::map<NodeKind, std::size_t> kinds;
    count_kinds(e.root, kinds);
    EXPECT_EQ(kinds[NodeKind::subst], 0u);
    EXPECT_EQ(kinds[NodeKind::subst_td], 0u);
    EXPECT_EQ(kinds[NodeKind::join], 0u);
    EXPECT_EQ(kinds[NodeKind::vertex], 0u);
    Graph g = evaluate(e);
    EXPECT_LE(oracle_treedepth(g, 12), 3u);
  }
}

TEST(GenRandom, DagOrientationHasNoCycles) {
  std::mt19937_64 rng(81);
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    GenSpec spec = spec_for(GraphKind::directed, shapes()[seed % 8], 12, seed, Orientation::dag);
    Graph g = evaluate(gen_random(spec));
    std::vector<double> w(g.vertex_count(), -1.0);
    EXPECT_FALSE(brute_negative_cycle(g, w));
  }
}

TEST(GenTdPattern, HasRequestedDepth) {
  GenSpec spec;
  for (std::size_t q = 2; q <= 12; ++q) {
    for (std::size_t depth = 1; depth <= q; ++depth) {
      spec.seed = q * 100 + depth;
      ExprNode p = gen_td_pattern(spec, q, depth);
      EXPECT_EQ(inc_nesting(p), depth);
      EXPECT_EQ(evaluate_node(p, GraphKind::undirected).vertex_count(), q);
    }
  }
  EXPECT_THROW(gen_td_pattern(spec, 1, 1), Error);
  EXPECT_THROW(gen_td_pattern(spec, 3, 4), Error);
}

TEST(GenWeights, RangeAndGrid) {
  Graph g = evaluate(gen_random(spec_for(GraphKind::directed, {2, 0, 0}, 30, 5)));
  GenSpec spec;
  spec.weight_min = -2;
  spec.weight_max = 3;
  WeightMap w = gen_weights(g, spec);
  ASSERT_EQ(w.size(), g.vertex_count());
  for (auto [name, x] : w) {
    EXPECT_GE(x, -2);
    EXPECT_LE(x, 3);
    EXPECT_EQ(x * 16, std::round(x * 16));
  }
  EXPECT_EQ(w, gen_weights(g, spec));
}

TEST(Fixtures, ApexCograph) {
  Fixture f = gen_fixture("apex-cograph", 4);
  Graph g = evaluate(f.expr);
  EXPECT_EQ(g.vertex_count(), 9u);
  EXPECT_EQ(g.edge_count(), 4u * 6 + 4);
  EXPECT_EQ(params(f.expr), (Params{1, 0, 0}));
  EXPECT_FALSE(f.comment.empty());
  Fixture d = gen_fixture("apex-cograph", 3, 1, GraphKind::directed);
  EXPECT_EQ(evaluate(d.expr).edge_count(), 2u * (4 * 3 + 3));
}

TEST(Fixtures, Substar) {
  Fixture f = gen_fixture("substar", 6);
  Graph g = evaluate(f.expr);
  EXPECT_EQ(g.vertex_count(), 13u);
  EXPECT_EQ(g.edge_count(), 12u);
  EXPECT_EQ(params(f.expr), (Params{3, 0, 0}));
}

TEST(Fixtures, StarCliques) {
  Fixture f = gen_fixture("star-cliques", 2, 1);
  EXPECT_EQ(params(f.expr), (Params{0, 0, 3}));
  Graph g = evaluate(f.expr);
  EXPECT_EQ(g.vertex_count(), 10u);
  EXPECT_EQ(g.edge_count(), 5u + 4 * 4);
  Fixture big = gen_fixture("star-cliques", 3, 2);
  EXPECT_EQ(evaluate(big.expr).vertex_count(), 21u);
}

TEST(Fixtures, CliquePendant) {
  Fixture f = gen_fixture("clique-pendant", 3);
  EXPECT_EQ(params(f.expr), (Params{0, 6, 0}));
  Graph g = evaluate(f.expr);
  EXPECT_EQ(g.vertex_count(), 12u);
  EXPECT_EQ(g.edge_count(), 30u);
}

TEST(Fixtures, Errors) {
  EXPECT_THROW(gen_fixture("nope", 3), Error);
  EXPECT_THROW(gen_fixture("substar", 1), Error);
  EXPECT_EQ(fixture_names().size(), 4u);
  for (const auto& name : fixture_names()) {
    EXPECT_TRUE(validate(gen_fixture(name, 3).expr).empty()) << name;
  }
}
