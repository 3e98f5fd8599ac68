#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "causalog/causality.hpp"
#include "hitting_sets.hpp"

namespace causalog {

/// Minimal endogenous supports of every answer, as index sets over `endogenous`.
struct CauseQuery::Supports {
  std::vector<Atom> endogenous;            // D^n in canonical order
  std::map<Tuple, detail::Family> by_answer;
  detail::Family target;                   // supports of the query's own answer

  std::uint32_t index_of(const Atom& a) const;
  AtomSet decode(const detail::IndexSet& s) const;
};

struct SupportCache {
  std::once_flag once;
  CauseQuery::Supports value;
};

namespace detail {

/// Minimal why-provenance of every atom in the minimal model of `program` on
/// D^n ∪ D^x, restricted to endogenous facts (exogenous facts count as true).
/// Returned per answer tuple of the program's answer predicate.
std::map<Tuple, Family> minimal_witnesses(const Program& program, const Instance& instance,
                                          const std::vector<Atom>& endogenous);

}  // namespace detail

}  // namespace causalog
