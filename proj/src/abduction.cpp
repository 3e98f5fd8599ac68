#include "causalog/abduction.hpp"

#include <algorithm>

#include "causalog/error.hpp"
#include "hitting_sets.hpp"

namespace causalog {

using detail::Family;
using detail::IndexSet;

AbductionProblem::AbductionProblem(Program program, AtomSet edb, AtomSet hypotheses,
                                   std::vector<Atom> observation, std::size_t max_observation)
    : program_(std::move(program)),
      edb_(std::move(edb)),
      hypotheses_(std::move(hypotheses)),
      observation_(std::move(observation)) {
  if (observation_.empty()) throw DomainError("observation must contain at least one atom");
  const auto heads = program_.head_predicates();
  for (const auto* part : {&edb_, &hypotheses_}) {
    for (const auto& a : *part) {
      if (heads.contains(a.predicate)) {
        throw DomainError(a.to_string() + " uses predicate " + a.predicate +
                          ", which is defined by a rule");
      }
    }
  }
  for (const auto& h : hypotheses_) {
    if (edb_.contains(h)) throw DomainError(h.to_string() + " is both a fact and a hypothesis");
  }
  if (observation_.size() > max_observation) {
    program_ = with_goal_rule(program_, observation_);
    observation_ = {Atom{program_.answer_predicate(), {}}};
  }
  std::vector<Atom> universe(edb_.begin(), edb_.end());
  universe.insert(universe.end(), hypotheses_.begin(), hypotheses_.end());
  Evaluator ev(program_, std::move(universe));
  if (!ev.entails(ev.full_mask(), observation_)) {
    throw DomainError("the observation does not follow from the program, facts and hypotheses");
  }
}

namespace {

struct DiagnosisSearch {
  std::vector<Atom> hyps;  // Hyp in canonical order
  Family found;            // index sets over hyps
};

DiagnosisSearch search_diagnoses(const AbductionProblem& ap) {
  DiagnosisSearch out;
  out.hyps.assign(ap.hypotheses().begin(), ap.hypotheses().end());
  const std::size_t n_edb = ap.edb().size();
  std::vector<Atom> universe(ap.edb().begin(), ap.edb().end());
  universe.insert(universe.end(), out.hyps.begin(), out.hyps.end());
  Evaluator ev(ap.program(), universe);

  // A hypothesis whose predicate feeds no rule and is not observed cannot sit
  // in a minimal diagnosis.
  std::set<std::string> used;
  for (const auto& r : ap.program().rules()) {
    for (const auto& b : r.body) used.insert(b.predicate);
  }
  for (const auto& o : ap.observation()) used.insert(o.predicate);
  std::vector<std::uint32_t> candidates;
  for (std::uint32_t i = 0; i < out.hyps.size(); ++i) {
    if (used.contains(out.hyps[i].predicate)) candidates.push_back(i);
  }

  Evaluator::Mask mask(universe.size(), false);
  std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(n_edb), true);
  const std::size_t n = candidates.size();
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<std::size_t> pick(k);
    for (std::size_t i = 0; i < k; ++i) pick[i] = i;
    bool any_open = false;
    for (;;) {
      IndexSet combo;
      for (auto p : pick) combo.push_back(candidates[p]);
      bool covers_known = std::any_of(out.found.begin(), out.found.end(),
                                      [&](const IndexSet& d) { return detail::is_subset(d, combo); });
      if (!covers_known) {
        any_open = true;
        for (auto h : combo) mask[n_edb + h] = true;
        if (ev.entails(mask, ap.observation())) out.found.push_back(combo);
        for (auto h : combo) mask[n_edb + h] = false;
      }
      // Next k-combination in lexicographic order.
      std::size_t i = k;
      while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
    }
    // Every larger candidate extends a covered one.
    if (!any_open) break;
  }
  std::sort(out.found.begin(), out.found.end());
  return out;
}

AtomSet decode(const std::vector<Atom>& atoms, const IndexSet& s) {
  AtomSet out;
  for (auto i : s) out.insert(atoms[i]);
  return out;
}

}  // namespace

std::vector<Diagnosis> diagnoses(const AbductionProblem& ap) {
  auto search = search_diagnoses(ap);
  std::vector<Diagnosis> out;
  for (const auto& d : search.found) out.push_back(Diagnosis{decode(search.hyps, d)});
  std::sort(out.begin(), out.end());
  return out;
}

AtomSet relevant_hypotheses(const AbductionProblem& ap) {
  AtomSet out;
  for (const auto& d : diagnoses(ap)) out.insert(d.delta.begin(), d.delta.end());
  return out;
}

bool is_relevant(const AbductionProblem& ap, const Atom& h) {
  if (!ap.hypotheses().contains(h)) throw DomainError(h.to_string() + " is not a hypothesis");
  return relevant_hypotheses(ap).contains(h);
}

std::vector<NecessarySet> necessary_hypothesis_sets(const AbductionProblem& ap) {
  auto search = search_diagnoses(ap);
  if (search.found.empty()) throw DomainError("the abduction problem has no diagnosis");
  std::vector<NecessarySet> out;
  for (const auto& n : detail::minimal_hitting_sets(search.found)) {
    out.push_back(NecessarySet{decode(search.hyps, n)});
  }
  std::sort(out.begin(), out.end());
  return out;
}

AbductionProblem cdap_of(const Instance& instance, const Program& program) {
  if (!program.is_boolean()) {
    throw DomainError("the causal abduction problem needs a boolean query; specialize " +
                      program.answer_predicate() + " to an answer first");
  }
  Atom ans{program.answer_predicate(), {}};
  if (!holds(program, instance.all(), {})) {
    throw DomainError(ans.to_string() + " does not hold on the instance");
  }
  return AbductionProblem(program, instance.exogenous(), instance.endogenous(), {std::move(ans)});
}

AtomSet causes_via_abduction(const Instance& instance, const Program& program) {
  return relevant_hypotheses(cdap_of(instance, program));
}

Rational responsibility_via_necessary_sets(const Instance& instance, const Program& program,
                                           const Atom& t) {
  auto ap = cdap_of(instance, program);
  if (!is_relevant(ap, t)) throw DomainError(t.to_string() + " is not a relevant hypothesis");
  std::optional<std::size_t> best;
  for (const auto& n : necessary_hypothesis_sets(ap)) {
    if (n.atoms.contains(t) && (!best || n.atoms.size() < *best)) best = n.atoms.size();
  }
  return Rational::reciprocal(static_cast<std::int64_t>(best.value()));
}

bool relevance_via_causality(const AbductionProblem& ap, const Atom& h) {
  if (!ap.hypotheses().contains(h)) throw DomainError(h.to_string() + " is not a hypothesis");
  CauseQuery q(with_goal_rule(ap.program(), ap.observation()), Instance(ap.hypotheses(), ap.edb()),
               {});
  return is_actual_cause(q, h);
}

AtomSet expand_abducibles(const std::vector<std::pair<std::string, std::size_t>>& predicates,
                          const std::set<Constant>& domain) {
  AtomSet out;
  std::vector<Constant> values(domain.begin(), domain.end());
  for (const auto& [pred, arity] : predicates) {
    if (arity > 0 && values.empty()) continue;
    std::vector<std::size_t> digits(arity, 0);
    for (;;) {
      Atom a{pred, {}};
      for (auto d : digits) a.args.push_back(values[d]);
      out.insert(std::move(a));
      std::size_t i = 0;
      while (i < arity && ++digits[i] == values.size()) digits[i++] = 0;
      if (i == arity) break;
    }
  }
  return out;
}

}  // namespace causalog
