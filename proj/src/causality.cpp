#include "causalog/causality.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "causalog/error.hpp"
#include "support_cache.hpp"

namespace causalog {

using detail::Family;
using detail::IndexSet;

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(std::int64_t numerator, std::int64_t denominator) {
  if (denominator <= 0 || numerator < 0) throw DomainError("rational must be non-negative with positive denominator");
  auto g = std::gcd(numerator, denominator);
  num_ = g ? numerator / g : 0;
  den_ = g ? denominator / g : 1;
  if (num_ == 0) den_ = 1;
}

std::string Rational::to_string() const {
  if (num_ == 0) return "0";
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::strong_ordering Rational::operator<=>(const Rational& other) const {
  // Values stay small (responsibilities), so cross-multiplication cannot overflow.
  return num_ * other.den_ <=> other.num_ * den_;
}

ResponsibilityThreshold ResponsibilityThreshold::one_over(std::int64_t k) {
  if (k < 1) throw DomainError("responsibility threshold must be 0 or 1/k with k >= 1");
  return ResponsibilityThreshold(Rational::reciprocal(k));
}

// ---------------------------------------------------------------------------
// Minimal witnesses
//
// Each model atom is annotated with the antichain of minimal sets of endogenous
// facts deriving it. Conjunction is pairwise union, alternative derivations are
// union of families; both followed by absorption. The annotation lattice over a
// finite D^n is finite, so the fixpoint over the ground program terminates.

namespace detail {

namespace {

Family conjoin(const Family& a, const Family& b) {
  Family out;
  out.reserve(a.size() * b.size());
  for (const auto& x : a) {
    for (const auto& y : b) out.push_back(set_union(x, y));
  }
  return minimize(std::move(out));
}

}  // namespace

std::map<Tuple, Family> minimal_witnesses(const Program& program, const Instance& instance,
                                          const std::vector<Atom>& endogenous) {
  std::vector<Atom> universe(endogenous.begin(), endogenous.end());
  universe.insert(universe.end(), instance.exogenous().begin(), instance.exogenous().end());
  Evaluator ev(program, universe);
  auto g = ev.ground(ev.full_mask());

  std::map<Atom, std::uint32_t> endo_index;
  for (std::uint32_t i = 0; i < endogenous.size(); ++i) endo_index.emplace(endogenous[i], i);

  std::vector<Family> prov(g.atoms.size());
  for (std::size_t a = 0; a < g.atoms.size(); ++a) {
    if (auto it = endo_index.find(g.atoms[a]); it != endo_index.end()) {
      prov[a] = {IndexSet{it->second}};
    } else if (instance.exogenous().contains(g.atoms[a])) {
      prov[a] = {IndexSet{}};
    }
  }

  std::vector<std::vector<std::size_t>> uses(g.atoms.size());
  for (std::size_t r = 0; r < g.rules.size(); ++r) {
    for (auto b : g.rules[r].body) uses[b].push_back(r);
  }
  std::deque<std::size_t> work;
  std::vector<bool> queued(g.rules.size(), true);
  for (std::size_t r = 0; r < g.rules.size(); ++r) work.push_back(r);

  while (!work.empty()) {
    auto r = work.front();
    work.pop_front();
    queued[r] = false;
    const auto& rule = g.rules[r];
    Family acc{IndexSet{}};
    for (auto b : rule.body) {
      if (prov[b].empty()) {
        acc.clear();
        break;
      }
      acc = conjoin(acc, prov[b]);
    }
    if (acc.empty()) continue;
    Family merged = prov[rule.head];
    merged.insert(merged.end(), acc.begin(), acc.end());
    merged = minimize(std::move(merged));
    if (merged == prov[rule.head]) continue;
    prov[rule.head] = std::move(merged);
    for (auto dep : uses[rule.head]) {
      if (!queued[dep]) {
        queued[dep] = true;
        work.push_back(dep);
      }
    }
  }

  std::map<Tuple, Family> out;
  for (std::size_t a = 0; a < g.atoms.size(); ++a) {
    if (g.atoms[a].predicate == program.answer_predicate()) out.emplace(g.atoms[a].args, prov[a]);
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// CauseQuery

std::uint32_t CauseQuery::Supports::index_of(const Atom& a) const {
  auto it = std::lower_bound(endogenous.begin(), endogenous.end(), a);
  if (it == endogenous.end() || *it != a) throw DomainError(a.to_string() + " is not an endogenous tuple");
  return static_cast<std::uint32_t>(it - endogenous.begin());
}

AtomSet CauseQuery::Supports::decode(const IndexSet& s) const {
  AtomSet out;
  for (auto i : s) out.insert(endogenous[i]);
  return out;
}

CauseQuery::CauseQuery(Program program, Instance instance, Tuple answer)
    : program_(std::move(program)),
      instance_(std::move(instance)),
      answer_(std::move(answer)),
      cache_(std::make_shared<SupportCache>()) {
  auto all = instance_.all();
  auto result = evaluate(program_, all);
  if (answer_.size() != program_.answer_arity()) {
    throw DomainError("answer (" + to_string(answer_) + ") does not match the arity of " +
                      program_.answer_predicate());
  }
  if (!result.contains(answer_)) {
    throw DomainError("(" + to_string(answer_) + ") is not an answer of the query on this instance");
  }
  all_answers_ = result.answers();
}

const CauseQuery::Supports& CauseQuery::supports() const {
  std::call_once(cache_->once, [this] {
    auto& s = cache_->value;
    s.endogenous.assign(instance_.endogenous().begin(), instance_.endogenous().end());
    s.by_answer = detail::minimal_witnesses(program_, instance_, s.endogenous);
    s.target = s.by_answer.at(answer_);
  });
  return cache_->value;
}

// ---------------------------------------------------------------------------
// Causes and contingencies

namespace {

IndexSet cause_indices(const CauseQuery::Supports& s) {
  IndexSet out;
  for (const auto& support : s.target) out = detail::set_union(out, support);
  return out;
}

std::uint32_t require_endogenous(const CauseQuery& q, const Atom& t) {
  if (!q.instance().is_endogenous(t)) {
    throw DomainError(t.to_string() + " is not an endogenous tuple of the instance");
  }
  return q.supports().index_of(t);
}

// Supports of the target not containing t.
Family supports_without(const Family& f, std::uint32_t t) {
  Family out;
  for (const auto& s : f) {
    if (!detail::contains(s, t)) out.push_back(s);
  }
  return out;
}

// Minimum contingency size for a cause: the cheapest way to hit every support
// avoiding t while sparing one support that contains t.
std::size_t min_contingency_size(const Family& target, std::uint32_t t) {
  auto others = supports_without(target, t);
  std::optional<std::size_t> best;
  for (const auto& spared : target) {
    if (!detail::contains(spared, t)) continue;
    auto m = detail::minimum_hitting_set_size(others, spared);
    if (m && (!best || *m < *best)) best = m;
  }
  return best.value();
}

Family contingency_indices(const Family& target, std::uint32_t t) {
  Family out;
  for (auto& h : detail::minimal_hitting_sets(supports_without(target, t))) {
    bool spares = std::any_of(target.begin(), target.end(), [&](const IndexSet& s) {
      return detail::contains(s, t) && !detail::intersects(s, h);
    });
    if (spares) out.push_back(std::move(h));
  }
  return out;
}

}  // namespace

AtomFamily minimal_supports(const CauseQuery& q) {
  const auto& s = q.supports();
  AtomFamily out;
  for (const auto& support : s.target) out.insert(s.decode(support));
  return out;
}

bool is_actual_cause(const CauseQuery& q, const Atom& t) {
  auto i = require_endogenous(q, t);
  return detail::contains(cause_indices(q.supports()), i);
}

std::vector<CausalExplanation> actual_causes(const CauseQuery& q) {
  const auto& s = q.supports();
  std::vector<CausalExplanation> out;
  for (auto i : cause_indices(s)) {
    CausalExplanation e;
    e.cause = s.endogenous[i];
    for (const auto& c : contingency_indices(s.target, i)) e.contingencies.insert(s.decode(c));
    e.responsibility = Rational::reciprocal(
        static_cast<std::int64_t>(min_contingency_size(s.target, i)) + 1);
    out.push_back(std::move(e));
  }
  return out;
}

AtomFamily minimal_contingencies(const CauseQuery& q, const Atom& t) {
  auto i = require_endogenous(q, t);
  const auto& s = q.supports();
  if (!detail::contains(cause_indices(s), i)) {
    throw DomainError(t.to_string() + " is not an actual cause");
  }
  AtomFamily out;
  for (const auto& c : contingency_indices(s.target, i)) out.insert(s.decode(c));
  return out;
}

Rational responsibility(const CauseQuery& q, const Atom& t) {
  auto i = require_endogenous(q, t);
  const auto& s = q.supports();
  if (!detail::contains(cause_indices(s), i)) return Rational::zero();
  return Rational::reciprocal(static_cast<std::int64_t>(min_contingency_size(s.target, i)) + 1);
}

bool responsibility_exceeds(const CauseQuery& q, const Atom& t, const ResponsibilityThreshold& v) {
  return responsibility(q, t) > v.value();
}

AtomSet most_responsible_causes(const CauseQuery& q) {
  const auto& s = q.supports();
  AtomSet out;
  std::optional<std::size_t> best;
  for (auto i : cause_indices(s)) {
    auto m = min_contingency_size(s.target, i);
    if (!best || m < *best) {
      best = m;
      out.clear();
    }
    if (m == *best) out.insert(s.endogenous[i]);
  }
  return out;
}

std::map<Atom, AtomFamily> vc_explanations(const CauseQuery& q) {
  const auto& s = q.supports();
  std::map<Atom, AtomFamily> out;
  for (const auto& removal : detail::minimal_hitting_sets(s.target)) {
    bool keeps_others = true;
    for (const auto& [answer, family] : s.by_answer) {
      if (answer == q.answer()) continue;
      bool survives = std::any_of(family.begin(), family.end(), [&](const IndexSet& support) {
        return !detail::intersects(support, removal);
      });
      if (!survives) {
        keeps_others = false;
        break;
      }
    }
    if (!keeps_others) continue;
    for (auto t : removal) {
      IndexSet rest;
      for (auto u : removal) {
        if (u != t) rest.push_back(u);
      }
      out[s.endogenous[t]].insert(s.decode(rest));
    }
  }
  return out;
}

AtomSet vc_causes(const CauseQuery& q) {
  AtomSet out;
  for (const auto& [t, gammas] : vc_explanations(q)) out.insert(t);
  return out;
}

bool has_vc_cause(const CauseQuery& q) { return !vc_explanations(q).empty(); }

}  // namespace causalog
