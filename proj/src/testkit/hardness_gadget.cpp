#include "testkit/hardness_gadget.hpp"

#include <algorithm>
#include <random>

#include "causalog/error.hpp"

namespace causalog::testkit {

Phca random_phca(std::size_t variables, std::size_t hypotheses, std::size_t clauses, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Phca p;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < variables; ++i) names.push_back("p" + std::to_string(i));
  p.variables.insert(names.begin(), names.end());
  for (std::size_t i = 0; i < std::min(hypotheses, variables); ++i) p.hypotheses.insert(names[i]);
  p.observation = names.back();
  p.hypotheses.erase(p.observation);

  std::vector<std::string> bodies = names;
  bodies.push_back(kTrue);
  std::uniform_int_distribution<std::size_t> any_body(0, bodies.size() - 1);
  std::uniform_int_distribution<std::size_t> any_head(std::min(hypotheses, variables - 1), variables - 1);
  for (std::size_t i = 0; i < clauses; ++i) {
    p.clauses.push_back({names[any_head(rng)], bodies[any_body(rng)], bodies[any_body(rng)], bodies[any_body(rng)]});
  }
  return p;
}

AbductionProblem phca_to_abduction(const Phca& phca) {
  auto var = [](const std::string& name) { return Term::variable(name); };
  Program program(
      {
          Rule{Literal{"t", {var("X")}}, {Literal{"top", {var("X")}}}},
          Rule{Literal{"t", {var("X")}}, {Literal{"h", {var("X")}}}},
          Rule{Literal{"t", {var("X0")}},
               {Literal{"t", {var("X1")}}, Literal{"t", {var("X2")}}, Literal{"t", {var("X3")}},
                Literal{"r", {var("X0"), var("X1"), var("X2"), var("X3")}}}},
      },
      "t");
  AtomSet edb{Atom{"top", {Constant(kTrue)}}};
  for (const auto& c : phca.clauses) {
    edb.insert(Atom{"r", {Constant(c[0]), Constant(c[1]), Constant(c[2]), Constant(c[3])}});
  }
  AtomSet hyps;
  for (const auto& h : phca.hypotheses) hyps.insert(Atom{"h", {Constant(h)}});
  return AbductionProblem(std::move(program), std::move(edb), std::move(hyps),
                          {Atom{"t", {Constant(phca.observation)}}});
}

AbductionProblem hardness_instance(std::size_t variables, std::size_t hypotheses, std::size_t clauses,
                                   std::uint64_t seed) {
  for (std::uint64_t s = seed; s < seed + 1000; ++s) {
    try {
      return phca_to_abduction(random_phca(variables, hypotheses, clauses, s));
    } catch (const DomainError&) {
    }
  }
  throw DomainError("no explainable instance among 1000 seeds");
}

}  // namespace causalog::testkit
