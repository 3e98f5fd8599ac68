#include "causalog/delprop.hpp"

#include <algorithm>
#include <deque>

#include "causalog/causality.hpp"
#include "causalog/error.hpp"
#include "hitting_sets.hpp"

namespace causalog {

using detail::IndexSet;

std::string to_string(DeletionKind kind) {
  switch (kind) {
    case DeletionKind::kMinimalSse:
      return "minimal";
    case DeletionKind::kMinimumSse:
      return "minimum";
    case DeletionKind::kViewSafe:
      return "view-safe";
  }
  return "?";
}

std::string to_string(DeletionScope scope) {
  return scope == DeletionScope::kAll ? "all" : "endogenous-only";
}

DeletionTask::DeletionTask(Program program, Instance instance, Tuple target, DeletionScope scope)
    : program_(std::move(program)),
      instance_(std::move(instance)),
      target_(std::move(target)),
      scope_(scope) {
  if (target_.size() != program_.answer_arity()) {
    throw DomainError("answer (" + to_string(target_) + ") does not match the arity of " +
                      program_.answer_predicate());
  }
  auto result = evaluate(program_, instance_.all());
  if (!result.contains(target_)) {
    throw DomainError("(" + to_string(target_) + ") is not an answer of the query on this instance");
  }
  view_ = result.answers();
}

AtomSet DeletionTask::deletable() const {
  return scope_ == DeletionScope::kAll ? instance_.all() : instance_.endogenous();
}

DeletionTask DeletionTask::with_scope(DeletionScope scope) const {
  DeletionTask copy = *this;
  copy.scope_ = scope;
  return copy;
}

DeletionSolution make_solution(const DeletionTask& task, AtomSet deleted, DeletionKind kind) {
  AtomSet endo, exo;
  for (const auto& a : task.instance().endogenous()) {
    if (!deleted.contains(a)) endo.insert(a);
  }
  for (const auto& a : task.instance().exogenous()) {
    if (!deleted.contains(a)) exo.insert(a);
  }
  return DeletionSolution{std::move(deleted), Instance(std::move(endo), std::move(exo)), kind};
}

namespace {

// The deletable tuples come first in the evaluator's universe so that index i
// of a deletion set is universe position i.
struct Space {
  std::vector<Atom> deletable;
  Evaluator ev;

  explicit Space(const DeletionTask& task) : ev(make(task, deletable)) {}

  static Evaluator make(const DeletionTask& task, std::vector<Atom>& deletable) {
    auto d = task.deletable();
    deletable.assign(d.begin(), d.end());
    std::vector<Atom> universe = deletable;
    for (const auto& a : task.instance().all()) {
      if (!d.contains(a)) universe.push_back(a);
    }
    return Evaluator(task.program(), std::move(universe));
  }

  Evaluator::Mask without(const IndexSet& removed) const {
    auto mask = ev.full_mask();
    for (auto i : removed) mask[i] = false;
    return mask;
  }

  AtomSet decode(const IndexSet& s) const {
    AtomSet out;
    for (auto i : s) out.insert(deletable[i]);
    return out;
  }
};

// A minimal set of deletable tuples that, with everything outside the deletable
// part, still derives the target while avoiding `removed`; nullopt when the
// target is already gone.
std::optional<IndexSet> shrink_witness(const Space& sp, const Tuple& target, const IndexSet& removed) {
  auto mask = sp.without(removed);
  if (!sp.ev.holds(mask, target)) return std::nullopt;
  for (std::size_t i = 0; i < sp.deletable.size(); ++i) {
    if (!mask[i]) continue;
    mask[i] = false;
    if (!sp.ev.holds(mask, target)) mask[i] = true;
  }
  IndexSet w;
  for (std::uint32_t i = 0; i < sp.deletable.size(); ++i) {
    if (mask[i]) w.push_back(i);
  }
  return w;
}

// Breadth-first hitting-set tree over witnesses of the target. Nodes are
// deletion sets; a node that drops the target is a solution unless it extends
// one found earlier. Stops after the first level holding a solution when
// `first_level_only` is set.
std::vector<IndexSet> hs_tree(const Space& sp, const Tuple& target, bool first_level_only) {
  std::vector<IndexSet> solutions;
  std::vector<IndexSet> witnesses;
  std::set<IndexSet> seen{IndexSet{}};
  std::vector<IndexSet> level{IndexSet{}};
  while (!level.empty()) {
    std::vector<IndexSet> next;
    std::size_t found_here = 0;
    for (const auto& node : level) {
      bool extends = std::any_of(solutions.begin(), solutions.end(),
                                 [&](const IndexSet& s) { return detail::is_subset(s, node); });
      if (extends) continue;
      const IndexSet* w = nullptr;
      for (const auto& known : witnesses) {
        if (!detail::intersects(known, node)) {
          w = &known;
          break;
        }
      }
      if (!w) {
        auto fresh = shrink_witness(sp, target, node);
        if (!fresh) {
          solutions.push_back(node);
          ++found_here;
          continue;
        }
        witnesses.push_back(std::move(*fresh));
        w = &witnesses.back();
      }
      for (auto e : *w) {
        auto child = detail::set_union(node, IndexSet{e});
        if (seen.insert(child).second) next.push_back(std::move(child));
      }
    }
    if (first_level_only && found_here > 0) break;
    std::sort(next.begin(), next.end());
    level = std::move(next);
  }
  std::sort(solutions.begin(), solutions.end());
  return solutions;
}

std::vector<DeletionSolution> to_solutions(const DeletionTask& task, const Space& sp,
                                           const std::vector<IndexSet>& sets, DeletionKind kind) {
  std::vector<DeletionSolution> out;
  for (const auto& s : sets) out.push_back(make_solution(task, sp.decode(s), kind));
  std::sort(out.begin(), out.end(),
            [](const DeletionSolution& a, const DeletionSolution& b) { return a.deleted < b.deleted; });
  return out;
}

bool keeps_view(const DeletionTask& task, const Space& sp, const IndexSet& removed) {
  auto expected = task.view();
  expected.erase(task.target());
  return sp.ev.answers(sp.without(removed)).answers() == expected;
}

}  // namespace

std::vector<DeletionSolution> minimal_source_deletions(const DeletionTask& task) {
  Space sp(task);
  return to_solutions(task, sp, hs_tree(sp, task.target(), false), DeletionKind::kMinimalSse);
}

std::vector<DeletionSolution> minimum_source_deletions(const DeletionTask& task) {
  Space sp(task);
  return to_solutions(task, sp, hs_tree(sp, task.target(), true), DeletionKind::kMinimumSse);
}

std::vector<DeletionSolution> minimal_view_safe_deletions(const DeletionTask& task) {
  Space sp(task);
  std::vector<IndexSet> safe;
  for (auto& s : hs_tree(sp, task.target(), false)) {
    if (keeps_view(task, sp, s)) safe.push_back(std::move(s));
  }
  return to_solutions(task, sp, safe, DeletionKind::kViewSafe);
}

std::optional<DeletionSolution> view_side_effect_free(const DeletionTask& task) {
  auto all = minimal_view_safe_deletions(task);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::vector<DeletionSolution> solve(const DeletionTask& task, DeletionKind kind) {
  switch (kind) {
    case DeletionKind::kMinimalSse:
      return minimal_source_deletions(task);
    case DeletionKind::kMinimumSse:
      return minimum_source_deletions(task);
    case DeletionKind::kViewSafe:
      return minimal_view_safe_deletions(task);
  }
  return {};
}

namespace {

// Λ = D \ D' when D' ⊆ D and Λ is within scope.
std::optional<AtomSet> deleted_part(const DeletionTask& task, const AtomSet& remaining) {
  auto all = task.instance().all();
  if (!std::includes(all.begin(), all.end(), remaining.begin(), remaining.end())) return std::nullopt;
  AtomSet deleted;
  std::set_difference(all.begin(), all.end(), remaining.begin(), remaining.end(),
                      std::inserter(deleted, deleted.end()));
  auto allowed = task.deletable();
  if (!std::includes(allowed.begin(), allowed.end(), deleted.begin(), deleted.end())) return std::nullopt;
  return deleted;
}

bool derives_target(const DeletionTask& task, const AtomSet& facts) {
  return holds(task.program(), facts, task.target());
}

}  // namespace

bool satisfies(const DeletionTask& task, const AtomSet& deleted, DeletionKind kind) {
  auto allowed = task.deletable();
  if (!std::includes(allowed.begin(), allowed.end(), deleted.begin(), deleted.end())) return false;
  AtomSet remaining;
  for (const auto& a : task.instance().all()) {
    if (!deleted.contains(a)) remaining.insert(a);
  }
  switch (kind) {
    case DeletionKind::kMinimalSse:
      return in_mssep_s(task, remaining);
    case DeletionKind::kMinimumSse:
      return in_mssep_c(task, remaining);
    case DeletionKind::kViewSafe: {
      auto expected = task.view();
      expected.erase(task.target());
      return evaluate(task.program(), remaining).answers() == expected;
    }
  }
  return false;
}

bool in_mssep_s(const DeletionTask& task, const AtomSet& remaining) {
  auto deleted = deleted_part(task, remaining);
  if (!deleted || derives_target(task, remaining)) return false;
  // By monotonicity a larger D' dropping the target exists iff one tuple can be restored.
  for (const auto& t : *deleted) {
    auto restored = remaining;
    restored.insert(t);
    if (!derives_target(task, restored)) return false;
  }
  return true;
}

bool in_mssep_c(const DeletionTask& task, const AtomSet& remaining) {
  auto deleted = deleted_part(task, remaining);
  if (!deleted || derives_target(task, remaining)) return false;
  auto best = minimum_source_deletions(task);
  return !best.empty() && deleted->size() == best.front().deleted.size();
}

namespace {

AtomSet union_of_deleted(const std::vector<DeletionSolution>& solutions) {
  AtomSet out;
  for (const auto& s : solutions) out.insert(s.deleted.begin(), s.deleted.end());
  return out;
}

}  // namespace

AtomSet causes_from_minimal_sse(const DeletionTask& task) {
  return union_of_deleted(minimal_source_deletions(task.with_scope(DeletionScope::kEndogenousOnly)));
}

AtomSet mrc_from_minimum_sse(const DeletionTask& task) {
  return union_of_deleted(minimum_source_deletions(task.with_scope(DeletionScope::kEndogenousOnly)));
}

AtomSet vccauses_from_vsef(const DeletionTask& task) {
  return union_of_deleted(minimal_view_safe_deletions(task.with_scope(DeletionScope::kEndogenousOnly)));
}

std::vector<DeletionSolution> delprop_from_causes(const DeletionTask& task, DeletionKind kind) {
  auto instance = task.scope() == DeletionScope::kAll ? task.instance().all_endogenous() : task.instance();
  CauseQuery q(task.program(), instance, task.target());
  std::set<AtomSet> sets;
  auto add = [&](const Atom& t, const AtomSet& gamma) {
    AtomSet s = gamma;
    s.insert(t);
    sets.insert(std::move(s));
  };
  switch (kind) {
    case DeletionKind::kMinimalSse:
      for (const auto& e : actual_causes(q)) {
        for (const auto& g : e.contingencies) add(e.cause, g);
      }
      break;
    case DeletionKind::kMinimumSse:
      for (const auto& t : most_responsible_causes(q)) {
        auto conts = minimal_contingencies(q, t);
        std::size_t least = conts.begin()->size();
        for (const auto& g : conts) least = std::min(least, g.size());
        for (const auto& g : conts) {
          if (g.size() == least) add(t, g);
        }
      }
      break;
    case DeletionKind::kViewSafe:
      for (const auto& [t, gammas] : vc_explanations(q)) {
        for (const auto& g : gammas) add(t, g);
      }
      break;
  }
  std::vector<DeletionSolution> out;
  for (const auto& s : sets) out.push_back(make_solution(task, s, kind));
  return out;
}

}  // namespace causalog
