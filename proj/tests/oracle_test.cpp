#include <gtest/gtest.h>

#include <cstdlib>

#include "causalog/error.hpp"
#include "causalog/oracle.hpp"
#include "fixtures.hpp"

namespace causalog {
namespace {

using fixtures::atom;
using fixtures::atoms;

TEST(OracleCausality, AuthorQuery) {
  CauseQuery q(fixtures::q1(), fixtures::ex1(), fixtures::john_xml());
  auto ref = oracle_causality(q);
  ASSERT_EQ(ref.size(), 4u);
  for (const auto& e : ref) {
    EXPECT_TRUE(fixtures::ex1_causes().contains(e.cause));
    EXPECT_EQ(e.responsibility, Rational(1, 2));
  }
}

TEST(OracleCausality, SingleFact) {
  CauseQuery q(parse_program("ans :- R(X)."), Instance(atoms({"R(a)"}), {}), {});
  auto ref = oracle_causality(q);
  ASSERT_EQ(ref.size(), 1u);
  EXPECT_EQ(ref[0].responsibility, Rational(1, 1));
  EXPECT_EQ(oracle_min_contingency(q, atom("R(a)")), 0u);
}

TEST(OracleCausality, BudgetIsEnforced) {
  CauseQuery q(fixtures::q1(), fixtures::ex1(), fixtures::john_xml());
  EXPECT_THROW(oracle_causality(q, OracleBudget{6}), DomainError);
}

TEST(OracleAbduction, Examples) {
  AbductionProblem ap(fixtures::q3(), {}, fixtures::ex3().all(), {parse_atom("ans")});
  std::set<AtomSet> got;
  for (const auto& d : oracle_abduction(ap)) got.insert(d.delta);
  EXPECT_EQ(got, (std::set<AtomSet>{atoms({"S(a1)", "R(a2,a1)"}), atoms({"S(a3)", "R(a3,a3)"})}));
  AbductionProblem entailed(parse_program("ans :- e."), atoms({"e"}), atoms({"h"}), {parse_atom("ans")});
  auto empty = oracle_abduction(entailed);
  ASSERT_EQ(empty.size(), 1u);
  EXPECT_TRUE(empty[0].delta.empty());
}

TEST(OracleDelprop, Examples) {
  DeletionTask ex1(fixtures::q1(), fixtures::ex1(), fixtures::john_xml());
  AtomFamily got;
  for (const auto& s : oracle_delprop(ex1, DeletionKind::kMinimalSse)) got.insert(s.deleted);
  EXPECT_EQ(got, fixtures::ex1_deletions());
  EXPECT_TRUE(oracle_delprop(ex1, DeletionKind::kViewSafe).empty());
  DeletionTask one(parse_program("ans :- R(X)."), Instance(atoms({"R(a)"}), {}), {});
  EXPECT_EQ(oracle_delprop(one, DeletionKind::kMinimalSse).size(), 1u);
}

TEST(OracleVcCauses, SharedAuthor) {
  CauseQuery q(fixtures::q1(), fixtures::vc_instance(), parse_tuple("j,t1"));
  auto ref = oracle_vc_causes(q);
  ASSERT_EQ(ref.size(), 1u);
  EXPECT_EQ(ref.begin()->first, atom("Journal(v,t1,1)"));
}

TEST(OracleEvaluate, TransitiveClosure) {
  auto p = parse_program("T(X,Y) :- E(X,Y). T(X,Y) :- E(X,Z), T(Z,Y). Ans(X,Y) :- T(X,Y).");
  auto facts = atoms({"E(a,b)", "E(b,c)", "E(c,d)"});
  EXPECT_EQ(oracle_evaluate(p, facts), evaluate(p, facts));
  EXPECT_EQ(oracle_evaluate(p, facts).tuples.size(), 6u);
}

TEST(OracleBudget, Environment) {
  ::setenv("CAUSALOG_ORACLE_BUDGET", "9", 1);
  EXPECT_EQ(OracleBudget::from_env().max_endogenous, 9u);
  ::setenv("CAUSALOG_ORACLE_BUDGET", "lots", 1);
  EXPECT_THROW(OracleBudget::from_env(), DomainError);
  ::unsetenv("CAUSALOG_ORACLE_BUDGET");
  EXPECT_EQ(OracleBudget::from_env().max_endogenous, OracleBudget::kDefaultMaxEndogenous);
}

}  // namespace
}  // namespace causalog
