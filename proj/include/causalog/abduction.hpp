#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "causalog/causality.hpp"
#include "causalog/datalog.hpp"
#include "causalog/relmodel.hpp"

namespace causalog {

/// A Datalog abduction problem ⟨Π, E, Hyp, Obs⟩.
///
/// Construction enforces that neither E nor Hyp mentions a predicate defined
/// by Π, that E and Hyp are disjoint, and that Π ∪ E ∪ Hyp entails Obs.
/// Observations longer than `max_observation` are folded into a fresh
/// propositional goal `ans :- o1, ..., on`, which leaves the diagnoses unchanged.
class AbductionProblem {
 public:
  static constexpr std::size_t kDefaultMaxObservation = 1;

  AbductionProblem(Program program, AtomSet edb, AtomSet hypotheses, std::vector<Atom> observation,
                   std::size_t max_observation = kDefaultMaxObservation);

  const Program& program() const noexcept { return program_; }
  const AtomSet& edb() const noexcept { return edb_; }
  const AtomSet& hypotheses() const noexcept { return hypotheses_; }
  const std::vector<Atom>& observation() const noexcept { return observation_; }

 private:
  Program program_;
  AtomSet edb_;
  AtomSet hypotheses_;
  std::vector<Atom> observation_;
};

/// A subset-minimal Δ ⊆ Hyp with Π ∪ E ∪ Δ ⊨ Obs.
struct Diagnosis {
  AtomSet delta;

  auto operator<=>(const Diagnosis&) const = default;
};

/// A subset-minimal N ⊆ Hyp whose removal from Hyp leaves no diagnosis.
struct NecessarySet {
  AtomSet atoms;

  auto operator<=>(const NecessarySet&) const = default;
};

/// Sol(AP) in canonical order. Enumerates candidate sets by increasing size and
/// skips supersets of diagnoses already found, so each entailing candidate is minimal.
std::vector<Diagnosis> diagnoses(const AbductionProblem& ap);

/// Rel(AP): the union of all diagnoses.
AtomSet relevant_hypotheses(const AbductionProblem& ap);

/// Throws DomainError when `h` is not a hypothesis.
bool is_relevant(const AbductionProblem& ap, const Atom& h);

/// All necessary-hypothesis sets, i.e. the minimal transversals of Sol(AP).
/// Throws DomainError when AP has no diagnosis.
std::vector<NecessarySet> necessary_hypothesis_sets(const AbductionProblem& ap);

/// The causal abduction problem ⟨Π, D^x, D^n, ans⟩ of a boolean query.
/// Throws DomainError when the program is not boolean or `ans` does not hold.
AbductionProblem cdap_of(const Instance& instance, const Program& program);

/// Rel of the causal abduction problem: the actual causes of `ans`, obtained
/// through abduction rather than through the causality solver.
AtomSet causes_via_abduction(const Instance& instance, const Program& program);

/// 1/|N| for a minimum-cardinality necessary-hypothesis set N containing `t`.
/// Throws DomainError when `t` is not relevant.
Rational responsibility_via_necessary_sets(const Instance& instance, const Program& program,
                                           const Atom& t);

/// Decides relevance of `h` as actual causality of `ans` for Π ∪ {ans ← Obs}
/// on D^x = E, D^n = Hyp. Throws DomainError when `h` is not a hypothesis.
bool relevance_via_causality(const AbductionProblem& ap, const Atom& h);

/// All ground instances of the given abducible predicates over `domain`, for
/// callers who describe Hyp by predicate rather than by listing atoms.
AtomSet expand_abducibles(const std::vector<std::pair<std::string, std::size_t>>& predicates,
                          const std::set<Constant>& domain);

}  // namespace causalog
