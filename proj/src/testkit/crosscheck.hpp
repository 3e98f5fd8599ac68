#pragma once

#include <string>
#include <vector>

#include "causalog/oracle.hpp"
#include "testkit/random_corpus.hpp"

namespace causalog::testkit {

enum class CheckGroup {
  kOracle,  // a solver against its exhaustive reference
  kBridge,  // two solvers linked by a reduction
};

struct CheckResult {
  std::string name;
  CheckGroup group;
  bool ok;
  std::string detail;  // first difference, empty when ok
};

/// Runs every solver on one case along both routes of each reduction and
/// against the oracles. Bridge names:
///   causes=abduction-relevance        causes are the relevant hypotheses of the causal abduction problem
///   responsibility=necessary-sets     1/|smallest necessary set holding t|
///   relevance=causality               relevance decided as actual causality
///   minimal-deletions=causes          {t} ∪ Γ over causes and minimal contingencies
///   minimum-deletions=mrc             most responsible causes with minimum contingencies
///   view-safe-exists=vc-cause         a view-safe deletion exists iff a VC cause does
///   causes=minimal-deletions          causes read off endogenous minimal deletions
///   mrc=minimum-deletions             most responsible causes read off minimum deletions
///   vc-causes=view-safe-deletions     VC causes read off minimal view-safe deletions
std::vector<CheckResult> crosscheck_case(const CorpusCase& c, const OracleBudget& budget = OracleBudget{});

}  // namespace causalog::testkit
