#include "testkit/crosscheck.hpp"

#include <functional>

#include "causalog/abduction.hpp"
#include "causalog/causality.hpp"
#include "causalog/delprop.hpp"

namespace causalog::testkit {

namespace {

std::string describe(const AtomFamily& f) {
  std::string out = "{";
  for (const auto& s : f) out += (out.size() > 1 ? ", " : "") + to_string(s);
  return out + "}";
}

std::string describe(const std::vector<CausalExplanation>& v) {
  std::string out;
  for (const auto& e : v) {
    out += e.cause.to_string() + " " + e.responsibility.to_string() + " " + describe(e.contingencies) + "; ";
  }
  return out.empty() ? "none" : out;
}

std::string describe(const std::map<Atom, AtomFamily>& m) {
  std::string out;
  for (const auto& [t, f] : m) out += t.to_string() + " " + describe(f) + "; ";
  return out.empty() ? "none" : out;
}

AtomFamily deleted_sets(const std::vector<DeletionSolution>& v) {
  AtomFamily out;
  for (const auto& s : v) out.insert(s.deleted);
  return out;
}

AtomFamily deltas(const std::vector<Diagnosis>& v) {
  AtomFamily out;
  for (const auto& d : v) out.insert(d.delta);
  return out;
}

}  // namespace

std::vector<CheckResult> crosscheck_case(const CorpusCase& c, const OracleBudget& budget) {
  std::vector<CheckResult> out;
  // `run` returns the mismatch description, empty when both routes agree.
  auto check = [&](const std::string& name, CheckGroup group, const std::function<std::string()>& run) {
    std::string detail;
    try {
      detail = run();
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    out.push_back(CheckResult{name, group, detail.empty(), detail});
  };
  auto differ = [](const std::string& left, const std::string& right) {
    return "solver " + left + " vs " + right;
  };

  const auto& p = c.program;
  const auto& inst = c.instance;
  const auto& a = c.answer;
  CauseQuery q(p, inst, a);
  const Program boolean = specialize(p, a);
  const auto explanations = actual_causes(q);
  AtomSet cause_set;
  for (const auto& e : explanations) cause_set.insert(e.cause);

  check("evaluation=naive", CheckGroup::kOracle, [&]() -> std::string {
    auto fast = evaluate(p, inst.all());
    auto naive = oracle_evaluate(p, inst.all());
    if (fast == naive) return "";
    return "semi-naive and naive answers differ";
  });
  check("causes=oracle", CheckGroup::kOracle, [&]() -> std::string {
    auto ref = oracle_causality(q, budget);
    return explanations == ref ? "" : differ(describe(explanations), describe(ref));
  });
  check("vc-causes=oracle", CheckGroup::kOracle, [&]() -> std::string {
    auto mine = vc_explanations(q);
    auto ref = oracle_vc_causes(q, budget);
    return mine == ref ? "" : differ(describe(mine), describe(ref));
  });
  check("diagnoses=oracle", CheckGroup::kOracle, [&]() -> std::string {
    auto ap = cdap_of(inst, boolean);
    auto mine = deltas(diagnoses(ap));
    auto ref = deltas(oracle_abduction(ap, budget));
    return mine == ref ? "" : differ(describe(mine), describe(ref));
  });
  for (auto scope : {DeletionScope::kAll, DeletionScope::kEndogenousOnly}) {
    for (auto kind : {DeletionKind::kMinimalSse, DeletionKind::kMinimumSse, DeletionKind::kViewSafe}) {
      check("delprop-" + to_string(kind) + "(" + to_string(scope) + ")=oracle", CheckGroup::kOracle,
            [&]() -> std::string {
              DeletionTask task(p, inst, a, scope);
              auto mine = solve(task, kind);
              auto ref = oracle_delprop(task, kind, budget);
              if (mine == ref) return "";
              return differ(describe(deleted_sets(mine)), describe(deleted_sets(ref)));
            });
    }
  }

  check("causes=abduction-relevance", CheckGroup::kBridge, [&]() -> std::string {
    auto rel = causes_via_abduction(inst, boolean);
    return rel == cause_set ? "" : differ(to_string(cause_set), to_string(rel));
  });
  check("responsibility=necessary-sets", CheckGroup::kBridge, [&]() -> std::string {
    for (const auto& t : cause_set) {
      auto direct = responsibility(q, t);
      auto via = responsibility_via_necessary_sets(inst, boolean, t);
      if (direct != via) return t.to_string() + ": " + differ(direct.to_string(), via.to_string());
    }
    return "";
  });
  check("relevance=causality", CheckGroup::kBridge, [&]() -> std::string {
    auto ap = cdap_of(inst, boolean);
    auto relevant = relevant_hypotheses(ap);
    for (const auto& h : ap.hypotheses()) {
      if (relevance_via_causality(ap, h) != relevant.contains(h)) return "disagree on " + h.to_string();
    }
    return "";
  });

  DeletionTask all_task(p, inst, a, DeletionScope::kAll);
  check("minimal-deletions=causes", CheckGroup::kBridge, [&]() -> std::string {
    auto direct = deleted_sets(minimal_source_deletions(all_task));
    auto via = deleted_sets(delprop_from_causes(all_task, DeletionKind::kMinimalSse));
    return direct == via ? "" : differ(describe(direct), describe(via));
  });
  check("minimum-deletions=mrc", CheckGroup::kBridge, [&]() -> std::string {
    auto direct = deleted_sets(minimum_source_deletions(all_task));
    auto via = deleted_sets(delprop_from_causes(all_task, DeletionKind::kMinimumSse));
    return direct == via ? "" : differ(describe(direct), describe(via));
  });
  check("view-safe-exists=vc-cause", CheckGroup::kBridge, [&]() -> std::string {
    bool exists = view_side_effect_free(all_task).has_value();
    bool vc = has_vc_cause(CauseQuery(p, inst.all_endogenous(), a));
    if (exists != vc) {
      return std::string("view-safe deletion ") + (exists ? "exists" : "absent") + ", VC cause " +
             (vc ? "exists" : "absent");
    }
    auto direct = deleted_sets(minimal_view_safe_deletions(all_task));
    auto via = deleted_sets(delprop_from_causes(all_task, DeletionKind::kViewSafe));
    return direct == via ? "" : differ(describe(direct), describe(via));
  });

  DeletionTask endo_task(p, inst, a, DeletionScope::kEndogenousOnly);
  check("causes=minimal-deletions", CheckGroup::kBridge, [&]() -> std::string {
    auto via = causes_from_minimal_sse(endo_task);
    return via == cause_set ? "" : differ(to_string(cause_set), to_string(via));
  });
  check("mrc=minimum-deletions", CheckGroup::kBridge, [&]() -> std::string {
    auto direct = most_responsible_causes(q);
    auto via = mrc_from_minimum_sse(endo_task);
    return direct == via ? "" : differ(to_string(direct), to_string(via));
  });
  check("vc-causes=view-safe-deletions", CheckGroup::kBridge, [&]() -> std::string {
    auto direct = vc_causes(q);
    auto via = vccauses_from_vsef(endo_task);
    return direct == via ? "" : differ(to_string(direct), to_string(via));
  });
  return out;
}

}  // namespace causalog::testkit
