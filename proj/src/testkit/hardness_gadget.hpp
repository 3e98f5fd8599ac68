#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "causalog/abduction.hpp"

namespace causalog::testkit {

/// Propositional Horn clause abduction with every clause `a <- b1, b2, b3`.
/// The proposition "true" is always derivable.
struct Phca {
  std::set<std::string> variables;
  std::set<std::string> hypotheses;
  std::vector<std::array<std::string, 4>> clauses;  // head first
  std::string observation;
};

inline constexpr const char* kTrue = "true";

/// Random instance over `variables` propositions, `hypotheses` of which are
/// abducible, with `clauses` clauses. The observation is never a hypothesis.
Phca random_phca(std::size_t variables, std::size_t hypotheses, std::size_t clauses, std::uint64_t seed);

/// The Datalog abduction problem with a fixed guarded program
///   t(X) :- top(X).   t(X) :- h(X).
///   t(X0) :- t(X1), t(X2), t(X3), r(X0,X1,X2,X3).
/// E = {top(true)} ∪ {r(a,b1,b2,b3) per clause}, Hyp = {h(x) : x hypothesis},
/// Obs = {t(o)}. Hypothesis x is relevant for the PHCA iff h(x) is relevant here.
/// Throws DomainError when the observation does not follow from all hypotheses.
AbductionProblem phca_to_abduction(const Phca& phca);

/// Retries seeds from `seed` until the observation is explainable.
AbductionProblem hardness_instance(std::size_t variables, std::size_t hypotheses, std::size_t clauses,
                                   std::uint64_t seed);

}  // namespace causalog::testkit
