#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "causalog/datalog.hpp"
#include "causalog/relmodel.hpp"

namespace causalog {

/// Which tuples a deletion may touch.
enum class DeletionScope {
  kAll,             // any tuple of D
  kEndogenousOnly,  // only D^n; D^x always stays
};

enum class DeletionKind { kMinimalSse, kMinimumSse, kViewSafe };

std::string to_string(DeletionKind kind);
std::string to_string(DeletionScope scope);

/// Delete the answer `target` of the view defined by `program` from `instance`.
class DeletionTask {
 public:
  /// Throws DomainError unless `target` is an answer on the full instance.
  DeletionTask(Program program, Instance instance, Tuple target,
               DeletionScope scope = DeletionScope::kAll);

  const Program& program() const noexcept { return program_; }
  const Instance& instance() const noexcept { return instance_; }
  const Tuple& target() const noexcept { return target_; }
  DeletionScope scope() const noexcept { return scope_; }
  /// V(D) on the full instance.
  const std::set<Tuple>& view() const noexcept { return view_; }

  /// The tuples a solution may delete, in canonical order.
  AtomSet deletable() const;
  /// Same task with another scope.
  DeletionTask with_scope(DeletionScope scope) const;

 private:
  Program program_;
  Instance instance_;
  Tuple target_;
  DeletionScope scope_;
  std::set<Tuple> view_;
};

struct DeletionSolution {
  AtomSet deleted;     // Λ
  Instance remaining;  // D' = D \ Λ, partition kept
  DeletionKind kind;

  bool operator==(const DeletionSolution&) const = default;
};

/// Builds a solution record for `deleted`; does not check the kind's condition.
DeletionSolution make_solution(const DeletionTask& task, AtomSet deleted, DeletionKind kind);

/// Whether `deleted` satisfies the defining condition of `kind` for `task`:
/// scope respected, the target dropped, and for minimal-sse no deleted tuple can
/// be restored, for minimum-sse no smaller deletion exists, for view-safe every
/// other answer kept.
bool satisfies(const DeletionTask& task, const AtomSet& deleted, DeletionKind kind);

/// Every subset-minimal Λ within scope whose removal drops the target, in
/// canonical order. Empty when no deletion within scope drops it.
std::vector<DeletionSolution> minimal_source_deletions(const DeletionTask& task);

/// The minimal solutions of minimum cardinality.
std::vector<DeletionSolution> minimum_source_deletions(const DeletionTask& task);

/// Subset-minimal Λ with V(D \ Λ) = V(D) \ {target}. A set with this property
/// exists iff a minimal one does, and minimal ones all drop the target by a
/// minimal source deletion.
std::vector<DeletionSolution> minimal_view_safe_deletions(const DeletionTask& task);

/// The first minimal view-safe deletion in canonical order, if any.
std::optional<DeletionSolution> view_side_effect_free(const DeletionTask& task);

/// Solutions of `kind` (view-safe yields all minimal view-safe deletions).
std::vector<DeletionSolution> solve(const DeletionTask& task, DeletionKind kind);

/// MSSEP^s membership: D' ⊆ D within scope drops the target and is subset-maximal.
bool in_mssep_s(const DeletionTask& task, const AtomSet& remaining);
/// MSSEP^c membership: D' ⊆ D within scope drops the target and has maximum cardinality.
bool in_mssep_c(const DeletionTask& task, const AtomSet& remaining);

/// Actual causes read off minimal endogenous deletions. The task is solved
/// with endogenous-only scope whatever its own scope is.
AtomSet causes_from_minimal_sse(const DeletionTask& task);
/// Most responsible causes read off minimum endogenous deletions.
AtomSet mrc_from_minimum_sse(const DeletionTask& task);
/// View-conditioned causes read off minimal view-safe endogenous deletions.
AtomSet vccauses_from_vsef(const DeletionTask& task);

/// Solutions assembled as {t} ∪ Γ from the causality solver: causes with
/// their minimal contingencies (minimal-sse), most responsible causes with
/// minimum contingencies (minimum-sse), VC causes with their VC contingencies
/// (view-safe). Under scope kAll every tuple is treated as endogenous.
std::vector<DeletionSolution> delprop_from_causes(const DeletionTask& task, DeletionKind kind);

}  // namespace causalog
