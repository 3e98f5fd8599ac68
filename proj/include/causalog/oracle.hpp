#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "causalog/abduction.hpp"
#include "causalog/causality.hpp"
#include "causalog/datalog.hpp"
#include "causalog/delprop.hpp"

// Exhaustive reference implementations. Each one enumerates every subset of
// the relevant tuples and applies the defining condition directly; the only
// shortcut is checking minimality one element at a time, which is exact
// because every family tested is convex under inclusion.

namespace causalog {

struct OracleBudget {
  static constexpr std::size_t kDefaultMaxEndogenous = 16;

  /// Largest number of tuples an oracle will enumerate subsets of.
  std::size_t max_endogenous = kDefaultMaxEndogenous;

  /// Default budget, overridden by CAUSALOG_ORACLE_BUDGET when set. Throws
  /// DomainError when the variable is not a positive integer.
  static OracleBudget from_env();
};

/// Actual causes, all minimal contingencies and responsibilities. Throws
/// DomainError when |D^n| exceeds the budget.
std::vector<CausalExplanation> oracle_causality(const CauseQuery& q,
                                                const OracleBudget& budget = OracleBudget::from_env());

/// Smallest contingency of `t`, or nullopt when `t` is not an actual cause.
std::optional<std::size_t> oracle_min_contingency(const CauseQuery& q, const Atom& t,
                                                  const OracleBudget& budget = OracleBudget::from_env());

/// View-conditioned causes with their minimal VC contingencies.
std::map<Atom, AtomFamily> oracle_vc_causes(const CauseQuery& q,
                                            const OracleBudget& budget = OracleBudget::from_env());

/// All diagnoses. Throws DomainError when |Hyp| exceeds the budget.
std::vector<Diagnosis> oracle_abduction(const AbductionProblem& ap,
                                        const OracleBudget& budget = OracleBudget::from_env());

/// Solutions of `kind`; view-safe yields every subset-minimal view-safe deletion.
/// Throws DomainError when the deletable tuples exceed the budget.
std::vector<DeletionSolution> oracle_delprop(const DeletionTask& task, DeletionKind kind,
                                             const OracleBudget& budget = OracleBudget::from_env());

/// Naive bottom-up evaluation: every rule is re-fired against the whole model
/// until nothing changes. Shares no code with the semi-naive evaluator.
AnswerSet oracle_evaluate(const Program& program, const AtomSet& facts);

}  // namespace causalog
