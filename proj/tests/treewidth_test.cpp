#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "causalog/error.hpp"
#include "causalog/treewidth.hpp"
#include "fixtures.hpp"

namespace causalog {
namespace {

using fixtures::atoms;

VertexSet vs(std::initializer_list<const char*> names) {
  VertexSet out;
  for (const char* n : names) out.insert(Constant(n));
  return out;
}

Hypergraph triangle() { return hypergraph_of(atoms({"E(a,b)", "E(b,c)", "E(c,a)"})); }

// Width over every elimination order, small graphs only.
std::size_t brute_width(const Hypergraph& h) {
  std::vector<Constant> order(h.vertices.begin(), h.vertices.end());
  std::size_t best = order.size();
  do {
    best = std::min(best, decomposition_from_order(h, order).width());
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

TEST(HypergraphOf, AuthorsTable) {
  auto h = hypergraph_of(fixtures::ex1());
  EXPECT_EQ(h.vertices.size(), 10u);
  EXPECT_TRUE(h.hyperedges.contains(vs({"TKDE", "XML", "30"})));
  EXPECT_EQ(h.hyperedges.size(), 7u);
}

TEST(HypergraphOf, Degenerate) {
  EXPECT_EQ(hypergraph_of(Instance{}), Hypergraph{});
  auto h = hypergraph_of(Instance(atoms({"R(a,a)"}), {}));
  EXPECT_EQ(h.vertices, vs({"a"}));
  EXPECT_EQ(h.hyperedges, std::set<VertexSet>{vs({"a"})});
}

TEST(TreeDecomposition, AuthorsTableHeuristic) {
  auto h = hypergraph_of(fixtures::ex1());
  auto [td, report] = tree_decomposition(h, DecompositionMode::kHeuristic);
  EXPECT_FALSE(check_decomposition(h, td).has_value());
  EXPECT_LE(report.width, 5u);
  EXPECT_FALSE(report.is_exact);
  EXPECT_EQ(report.width, td.width());
}

TEST(TreeDecomposition, SingleHyperedge) {
  auto h = hypergraph_of(atoms({"R(a,b,c)"}));
  for (auto mode : {DecompositionMode::kHeuristic, DecompositionMode::kExact}) {
    auto [td, report] = tree_decomposition(h, mode);
    EXPECT_EQ(report.width, 2u);
    EXPECT_FALSE(check_decomposition(h, td).has_value());
  }
}

TEST(TreeDecomposition, TriangleExact) {
  auto [td, report] = tree_decomposition(triangle(), DecompositionMode::kExact);
  EXPECT_EQ(report.width, 2u);
  EXPECT_TRUE(report.is_exact);
  EXPECT_EQ(brute_width(triangle()), 2u);
}

TEST(TreeDecomposition, EmptyHypergraph) {
  auto [td, report] = tree_decomposition(Hypergraph{}, DecompositionMode::kHeuristic);
  EXPECT_EQ(report.width, 0u);
  EXPECT_FALSE(check_decomposition(Hypergraph{}, td).has_value());
}

TEST(TreeDecomposition, ExactCap) {
  AtomSet facts;
  for (int i = 0; i < 13; ++i) facts.insert(Atom{"V", {Constant("v" + std::to_string(i))}});
  EXPECT_THROW(tree_decomposition(hypergraph_of(facts), DecompositionMode::kExact), DomainError);
  EXPECT_NO_THROW(tree_decomposition(hypergraph_of(facts), DecompositionMode::kHeuristic));
}

TEST(CheckDecomposition, RejectsBrokenDecompositions) {
  auto h = triangle();
  TreeDecomposition missing_edge{{vs({"a", "b"}), vs({"b", "c"})}, {{0, 1}}};
  EXPECT_TRUE(check_decomposition(h, missing_edge).has_value());
  TreeDecomposition disconnected{{vs({"a", "b", "c"}), vs({"d"}), vs({"a"})}, {{0, 1}, {1, 2}}};
  auto h2 = hypergraph_of(atoms({"E(a,b)", "E(b,c)", "E(c,a)", "V(d)"}));
  EXPECT_TRUE(check_decomposition(h2, disconnected).has_value());
  TreeDecomposition cycle{{vs({"a", "b", "c"}), vs({"a"}), vs({"b"})}, {{0, 1}, {1, 2}, {2, 0}}};
  EXPECT_TRUE(check_decomposition(h, cycle).has_value());
  TreeDecomposition good{{vs({"a", "b", "c"})}, {}};
  EXPECT_FALSE(check_decomposition(h, good).has_value());
}

TEST(TreeDecomposition, HeuristicBoundsExactOnRandomGraphs) {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 40; ++round) {
    AtomSet facts;
    std::uniform_int_distribution<int> vertex(0, 6);
    for (int e = 0; e < 8; ++e) {
      facts.insert(Atom{"E", {Constant("v" + std::to_string(vertex(rng))), Constant("v" + std::to_string(vertex(rng)))}});
    }
    auto h = hypergraph_of(facts);
    auto [htd, heuristic] = tree_decomposition(h, DecompositionMode::kHeuristic);
    auto [etd, exact] = tree_decomposition(h, DecompositionMode::kExact);
    EXPECT_FALSE(check_decomposition(h, htd).has_value());
    EXPECT_FALSE(check_decomposition(h, etd).has_value());
    EXPECT_GE(heuristic.width, exact.width);
    EXPECT_EQ(exact.width, brute_width(h));
  }
}

TEST(IsGuarded, Examples) {
  EXPECT_TRUE(is_guarded(parse_program("ans :- R(X,Y), S(Y).")));
  EXPECT_TRUE(is_guarded(parse_program("t(X) :- h(X). t(X0) :- t(X1), t(X2), t(X3), r(X0,X1,X2,X3). ans :- t(o).")));
  EXPECT_FALSE(is_guarded(parse_program("ans :- R(X,Y), S(Y,Z).")));
}

TEST(FptGate, Examples) {
  AbductionProblem ex3(fixtures::q3(), {}, fixtures::ex3().all(), {parse_atom("ans")});
  EXPECT_TRUE(fpt_gate(ex3, 1));
  // Guarded boolean query whose E is the authors table.
  auto guarded = parse_program("ans :- Journal(J,T,P), Hit(J,T,P).");
  AbductionProblem ex1(guarded, fixtures::ex1().all(), atoms({"Hit(TKDE,XML,30)"}), {parse_atom("ans")});
  EXPECT_TRUE(fpt_gate(ex1, 5));
  AbductionProblem unguarded(parse_program("ans :- R(X,Y), S(Y,Z)."), {}, atoms({"R(a,b)", "S(b,c)"}),
                             {parse_atom("ans")});
  EXPECT_FALSE(fpt_gate(unguarded, 0));
  EXPECT_FALSE(fpt_gate(unguarded, 100));
}

}  // namespace
}  // namespace causalog
