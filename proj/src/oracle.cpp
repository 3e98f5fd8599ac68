#include "causalog/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <string>

#include "causalog/error.hpp"

namespace causalog {

OracleBudget OracleBudget::from_env() {
  OracleBudget b;
  const char* raw = std::getenv("CAUSALOG_ORACLE_BUDGET");
  if (!raw || !*raw) return b;
  std::string text(raw);
  if (!std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
      text.size() > 2 || std::stoul(text) == 0) {
    throw DomainError("CAUSALOG_ORACLE_BUDGET must be an integer between 1 and 99, got '" + text + "'");
  }
  b.max_endogenous = std::stoul(text);
  return b;
}

namespace {

using Subset = std::uint64_t;

constexpr std::size_t kHardCap = 30;

void check_budget(std::size_t n, const OracleBudget& budget, const char* what) {
  if (n > budget.max_endogenous || n > kHardCap) {
    throw DomainError(std::string("oracle refuses ") + std::to_string(n) + " " + what + " (budget " +
                      std::to_string(std::min(budget.max_endogenous, kHardCap)) + ")");
  }
}

Subset bit(std::size_t i) { return Subset{1} << i; }

// Elements of `s` as bit positions in increasing order.
std::vector<std::size_t> members(Subset s) {
  std::vector<std::size_t> out;
  while (s) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

AtomSet decode(const std::vector<Atom>& atoms, Subset s) {
  AtomSet out;
  for (auto i : members(s)) out.insert(atoms[i]);
  return out;
}

// Whether `s` passes `ok` while no set obtained by dropping one element does.
bool minimal_in(Subset s, const std::function<bool(Subset)>& ok) {
  if (!ok(s)) return false;
  for (auto i : members(s)) {
    if (ok(s & ~bit(i))) return false;
  }
  return true;
}

// Evaluator over `varying` (bit i = varying[i]) followed by `fixed`, which is always present.
struct SubsetSpace {
  std::vector<Atom> varying;
  Evaluator ev;

  SubsetSpace(const Program& p, std::vector<Atom> var, const AtomSet& fixed)
      : varying(std::move(var)), ev(p, universe(varying, fixed)) {}

  static std::vector<Atom> universe(const std::vector<Atom>& var, const AtomSet& fixed) {
    std::vector<Atom> u = var;
    u.insert(u.end(), fixed.begin(), fixed.end());
    return u;
  }

  Subset full() const { return varying.empty() ? 0 : (~Subset{0} >> (64 - varying.size())); }
  std::size_t count() const { return std::size_t{1} << varying.size(); }

  Evaluator::Mask mask(Subset present) const {
    auto m = ev.full_mask();
    for (std::size_t i = 0; i < varying.size(); ++i) m[i] = (present & bit(i)) != 0;
    return m;
  }
};

// holds[m]: the answer holds when exactly the endogenous tuples in m are present.
std::vector<bool> holds_table(const SubsetSpace& sp, const Tuple& answer) {
  std::vector<bool> out(sp.count());
  for (Subset m = 0; m < sp.count(); ++m) out[m] = sp.ev.holds(sp.mask(m), answer);
  return out;
}

}  // namespace

std::vector<CausalExplanation> oracle_causality(const CauseQuery& q, const OracleBudget& budget) {
  const auto& endo = q.instance().endogenous();
  check_budget(endo.size(), budget, "endogenous tuples");
  SubsetSpace sp(q.program(), {endo.begin(), endo.end()}, q.instance().exogenous());
  auto holds = holds_table(sp, q.answer());
  const Subset full = sp.full();

  std::vector<CausalExplanation> out;
  for (std::size_t i = 0; i < sp.varying.size(); ++i) {
    // Γ is a contingency for t when D \ Γ derives the answer and D \ (Γ ∪ {t}) does not.
    auto contingency = [&](Subset gamma) {
      return !(gamma & bit(i)) && holds[full & ~gamma] && !holds[full & ~gamma & ~bit(i)];
    };
    CausalExplanation e;
    e.cause = sp.varying[i];
    std::optional<std::size_t> least;
    for (Subset gamma = 0; gamma <= full; ++gamma) {
      if (!minimal_in(gamma, contingency)) continue;
      e.contingencies.insert(decode(sp.varying, gamma));
      auto size = static_cast<std::size_t>(std::popcount(gamma));
      if (!least || size < *least) least = size;
    }
    if (!least) continue;
    e.responsibility = Rational::reciprocal(static_cast<std::int64_t>(*least) + 1);
    out.push_back(std::move(e));
  }
  return out;
}

std::optional<std::size_t> oracle_min_contingency(const CauseQuery& q, const Atom& t,
                                                  const OracleBudget& budget) {
  for (const auto& e : oracle_causality(q, budget)) {
    if (e.cause != t) continue;
    return static_cast<std::size_t>(e.responsibility.denominator() - 1);
  }
  return std::nullopt;
}

std::map<Atom, AtomFamily> oracle_vc_causes(const CauseQuery& q, const OracleBudget& budget) {
  const auto& endo = q.instance().endogenous();
  check_budget(endo.size(), budget, "endogenous tuples");
  SubsetSpace sp(q.program(), {endo.begin(), endo.end()}, q.instance().exogenous());
  const auto& original = q.all_answers();
  auto rest = original;
  rest.erase(q.answer());
  std::vector<bool> keeps_all(sp.count()), drops_only_target(sp.count());
  for (Subset m = 0; m < sp.count(); ++m) {
    auto answers = sp.ev.answers(sp.mask(m)).answers();
    keeps_all[m] = answers == original;
    drops_only_target[m] = answers == rest;
  }
  const Subset full = sp.full();
  std::map<Atom, AtomFamily> out;
  for (std::size_t i = 0; i < sp.varying.size(); ++i) {
    auto vc_contingency = [&](Subset gamma) {
      return !(gamma & bit(i)) && keeps_all[full & ~gamma] && drops_only_target[full & ~gamma & ~bit(i)];
    };
    for (Subset gamma = 0; gamma <= full; ++gamma) {
      if (minimal_in(gamma, vc_contingency)) out[sp.varying[i]].insert(decode(sp.varying, gamma));
    }
  }
  return out;
}

std::vector<Diagnosis> oracle_abduction(const AbductionProblem& ap, const OracleBudget& budget) {
  const auto& hyps = ap.hypotheses();
  check_budget(hyps.size(), budget, "hypotheses");
  SubsetSpace sp(ap.program(), {hyps.begin(), hyps.end()}, ap.edb());
  std::vector<bool> entails(sp.count());
  for (Subset m = 0; m < sp.count(); ++m) entails[m] = sp.ev.entails(sp.mask(m), ap.observation());
  std::vector<Diagnosis> out;
  for (Subset m = 0; m <= sp.full(); ++m) {
    if (minimal_in(m, [&](Subset s) { return entails[s]; })) out.push_back(Diagnosis{decode(sp.varying, m)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<DeletionSolution> oracle_delprop(const DeletionTask& task, DeletionKind kind,
                                             const OracleBudget& budget) {
  auto deletable = task.deletable();
  check_budget(deletable.size(), budget, "deletable tuples");
  AtomSet fixed;
  for (const auto& a : task.instance().all()) {
    if (!deletable.contains(a)) fixed.insert(a);
  }
  SubsetSpace sp(task.program(), {deletable.begin(), deletable.end()}, fixed);
  const Subset full = sp.full();
  auto rest = task.view();
  rest.erase(task.target());

  // Indexed by the deleted set Λ.
  std::vector<bool> drops(sp.count()), view_safe(sp.count());
  for (Subset del = 0; del <= full; ++del) {
    auto answers = sp.ev.answers(sp.mask(full & ~del)).answers();
    drops[del] = !answers.contains(task.target());
    view_safe[del] = answers == rest;
  }
  std::optional<int> least;
  for (Subset del = 0; del <= full; ++del) {
    if (drops[del] && (!least || std::popcount(del) < *least)) least = std::popcount(del);
  }

  std::vector<DeletionSolution> out;
  for (Subset del = 0; del <= full; ++del) {
    bool ok = false;
    switch (kind) {
      case DeletionKind::kMinimalSse:
        ok = minimal_in(del, [&](Subset s) { return static_cast<bool>(drops[s]); });
        break;
      case DeletionKind::kMinimumSse:
        ok = drops[del] && std::popcount(del) == *least;
        break;
      case DeletionKind::kViewSafe:
        ok = minimal_in(del, [&](Subset s) { return static_cast<bool>(view_safe[s]); });
        break;
    }
    if (ok) out.push_back(make_solution(task, decode(sp.varying, del), kind));
  }
  std::sort(out.begin(), out.end(),
            [](const DeletionSolution& a, const DeletionSolution& b) { return a.deleted < b.deleted; });
  return out;
}

// ---------------------------------------------------------------------------
// Naive evaluation

namespace {

using Substitution = std::map<std::string, Constant>;

bool match(const Literal& lit, const Atom& atom, Substitution& theta) {
  if (lit.predicate != atom.predicate || lit.arity() != atom.arity()) return false;
  for (std::size_t i = 0; i < lit.arity(); ++i) {
    const auto& term = lit.terms[i];
    if (!term.is_variable()) {
      if (term.value != atom.args[i]) return false;
      continue;
    }
    auto [it, fresh] = theta.emplace(term.name, atom.args[i]);
    if (!fresh && it->second != atom.args[i]) return false;
  }
  return true;
}

void fire(const Rule& rule, std::size_t pos, const Substitution& theta, const AtomSet& model,
          AtomSet& derived) {
  if (pos == rule.body.size()) {
    Atom head{rule.head.predicate, {}};
    for (const auto& term : rule.head.terms) {
      head.args.push_back(term.is_variable() ? theta.at(term.name) : term.value);
    }
    derived.insert(std::move(head));
    return;
  }
  for (const auto& atom : model) {
    Substitution next = theta;
    if (match(rule.body[pos], atom, next)) fire(rule, pos + 1, next, model, derived);
  }
}

}  // namespace

AnswerSet oracle_evaluate(const Program& program, const AtomSet& facts) {
  AtomSet model = facts;
  for (;;) {
    AtomSet derived;
    for (const auto& rule : program.rules()) fire(rule, 0, {}, model, derived);
    auto before = model.size();
    model.insert(derived.begin(), derived.end());
    if (model.size() == before) break;
  }
  AnswerSet out;
  out.boolean = program.is_boolean();
  for (const auto& a : model) {
    if (a.predicate != program.answer_predicate()) continue;
    if (out.boolean) {
      out.truth = true;
    } else {
      out.tuples.insert(a.args);
    }
  }
  if (!out.boolean) out.truth = !out.tuples.empty();
  return out;
}

}  // namespace causalog
