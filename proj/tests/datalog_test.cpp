#include <gtest/gtest.h>

#include "causalog/error.hpp"
#include "causalog/datalog.hpp"
#include "fixtures.hpp"

namespace causalog {
namespace {

using fixtures::atoms;

std::set<Tuple> tuples(std::initializer_list<const char*> texts) {
  std::set<Tuple> out;
  for (const char* t : texts) out.insert(parse_tuple(t));
  return out;
}

TEST(ParseProgram, AuthorQuery) {
  auto p = parse_program("Ans(N,T) :- Author(N,J), Journal(J,T,P).");
  ASSERT_EQ(p.rules().size(), 1u);
  EXPECT_EQ(p.answer_predicate(), "Ans");
  EXPECT_EQ(p.answer_arity(), 2u);
  EXPECT_EQ(p.rules()[0].body.size(), 2u);
  EXPECT_EQ(p.head_predicates(), std::set<std::string>{"Ans"});
}

TEST(ParseProgram, BooleanQuery) {
  auto p = fixtures::q3();
  EXPECT_TRUE(p.is_boolean());
  EXPECT_EQ(p.answer_predicate(), "ans");
}

TEST(ParseProgram, Errors) {
  EXPECT_THROW(parse_program("Ans(X) :- R(Y)."), ParseError);
  EXPECT_THROW(parse_program("Ans(X) :- R(X), R(X,Y)."), ParseError);
  EXPECT_THROW(parse_program("Ans(X) :- R(X)"), ParseError);
  EXPECT_THROW(parse_program("Ans(X) :- ."), ParseError);
  EXPECT_THROW(parse_program("P(X) :- R(X)."), ParseError);
}

TEST(ParseProgram, PrintRoundTrip) {
  for (const char* text : {"Ans(N,T) :- Author(N,J), Journal(J,T,P).",
                           "T(X,Y) :- E(X,Y). T(X,Y) :- E(X,Z), T(Z,Y). Ans(X,Y) :- T(X,Y).",
                           "ans :- R(X,\"John\"), S(X, 30)."}) {
    auto p = parse_program(text);
    EXPECT_EQ(parse_program(p.to_string()), p) << text;
  }
}

TEST(Evaluate, AuthorQueryAnswers) {
  auto ans = evaluate(fixtures::q1(), fixtures::ex1().all());
  EXPECT_EQ(ans.tuples, tuples({"Joe,XML", "Joe,CUBE", "Tom,XML", "Tom,CUBE", "John,XML", "John,CUBE"}));
  EXPECT_FALSE(ans.boolean);
}

TEST(Evaluate, BooleanQueryHolds) {
  auto ans = evaluate(fixtures::q3(), fixtures::ex3().all());
  EXPECT_TRUE(ans.boolean);
  EXPECT_TRUE(ans.truth);
  EXPECT_TRUE(ans.contains(Tuple{}));
}

TEST(Evaluate, TransitiveClosure) {
  auto p = parse_program("T(X,Y) :- E(X,Y). T(X,Y) :- E(X,Z), T(Z,Y). Ans(X,Y) :- T(X,Y).");
  auto ans = evaluate(p, atoms({"E(a,b)", "E(b,c)"}));
  EXPECT_EQ(ans.tuples, tuples({"a,b", "b,c", "a,c"}));
}

TEST(Evaluate, FactsMayNotUseDerivedPredicates) {
  auto p = parse_program("T(X) :- E(X). Ans(X) :- T(X).");
  EXPECT_THROW(evaluate(p, atoms({"T(a)"})), DomainError);
  std::vector<Atom> universe{parse_atom("R(a,b)")};
  EXPECT_THROW(Evaluator(parse_program("Ans(X) :- R(X)."), universe), DomainError);
}

TEST(Holds, AuthorQuery) {
  auto facts = fixtures::ex1().all();
  EXPECT_TRUE(holds(fixtures::q1(), facts, fixtures::john_xml()));
  facts.erase(parse_atom("Author(John,TODS)"));
  facts.erase(parse_atom("Author(John,TKDE)"));
  EXPECT_FALSE(holds(fixtures::q1(), facts, fixtures::john_xml()));
  EXPECT_FALSE(holds(fixtures::q1(), {}, fixtures::john_xml()));
  EXPECT_THROW(holds(fixtures::q1(), facts, parse_tuple("John")), DomainError);
}

TEST(Evaluator, MaskSelectsFacts) {
  std::vector<Atom> universe{parse_atom("E(a,b)"), parse_atom("E(b,c)")};
  Evaluator ev(parse_program("T(X,Y) :- E(X,Y). T(X,Y) :- E(X,Z), T(Z,Y). Ans(X,Y) :- T(X,Y)."), universe);
  EXPECT_TRUE(ev.holds(ev.full_mask(), parse_tuple("a,c")));
  EXPECT_FALSE(ev.holds({true, false}, parse_tuple("a,c")));
  EXPECT_EQ(ev.answers({false, true}).tuples, tuples({"b,c"}));
  EXPECT_TRUE(ev.entails(ev.full_mask(), {parse_atom("T(a,c)"), parse_atom("T(b,c)")}));
  EXPECT_EQ(ev.model({true, false}), atoms({"E(a,b)", "T(a,b)", "Ans(a,b)"}));
}

TEST(Evaluator, GroundingCoversDerivations) {
  auto facts = fixtures::ex3().all();
  Evaluator ev(fixtures::q3(), std::vector<Atom>(facts.begin(), facts.end()));
  auto g = ev.ground(ev.full_mask());
  // ans has one derivation per R(x,y) with S(y): R(a2,a1)S(a1) and R(a3,a3)S(a3).
  std::size_t ans_rules = 0;
  for (const auto& r : g.rules) ans_rules += g.atoms[r.head].predicate == "ans";
  EXPECT_EQ(ans_rules, 2u);
}

TEST(Specialize, AgreesWithOpenAnswer) {
  auto b = specialize(fixtures::q1(), fixtures::john_xml());
  EXPECT_TRUE(b.is_boolean());
  auto facts = fixtures::ex1().all();
  EXPECT_TRUE(holds(b, facts, {}));
  facts.erase(parse_atom("Journal(TKDE,XML,30)"));
  facts.erase(parse_atom("Journal(TODS,XML,32)"));
  EXPECT_FALSE(holds(b, facts, {}));
  EXPECT_TRUE(holds(fixtures::q1(), facts, parse_tuple("John,CUBE")));
}

TEST(WithGoalRule, Conjunction) {
  auto p = with_goal_rule(parse_program("Ans(X) :- R(X)."), {parse_atom("Ans(a)"), parse_atom("Ans(b)")});
  EXPECT_TRUE(p.is_boolean());
  EXPECT_TRUE(holds(p, atoms({"R(a)", "R(b)"}), {}));
  EXPECT_FALSE(holds(p, atoms({"R(a)"}), {}));
}

}  // namespace
}  // namespace causalog
