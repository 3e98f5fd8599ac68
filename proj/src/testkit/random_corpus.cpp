#include "testkit/random_corpus.hpp"

#include <algorithm>
#include <utility>
#include <vector>

namespace causalog::testkit {

namespace {

using PredicatePool = std::vector<std::pair<std::string, std::size_t>>;

const PredicatePool kEdb = {{"R", 2}, {"S", 1}, {"T", 2}, {"U", 1}};
const std::vector<std::string> kVariables = {"X", "Y", "Z", "W"};

}  // namespace

RandomCorpus::RandomCorpus(std::uint64_t seed, CorpusOptions options) : rng_(seed), options_(options) {}

namespace {

std::size_t pick(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

bool chance(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Constant domain_constant(std::mt19937_64& rng, std::size_t domain_size) {
  return Constant(std::string(1, static_cast<char>('a' + pick(rng, domain_size))));
}

Literal random_literal(std::mt19937_64& rng, const std::pair<std::string, std::size_t>& pred,
                       std::vector<std::string>& used, std::size_t domain_size) {
  Literal lit{pred.first, {}};
  for (std::size_t i = 0; i < pred.second; ++i) {
    if (chance(rng, 0.1)) {
      lit.terms.push_back(Term::constant(domain_constant(rng, domain_size)));
      continue;
    }
    auto v = kVariables[pick(rng, std::min(kVariables.size(), used.size() + 1))];
    if (std::find(used.begin(), used.end(), v) == used.end()) used.push_back(v);
    lit.terms.push_back(Term::variable(v));
  }
  return lit;
}

Literal random_head(std::mt19937_64& rng, const std::string& pred, std::size_t arity,
                    const std::vector<std::string>& vars, std::size_t domain_size) {
  Literal head{pred, {}};
  for (std::size_t i = 0; i < arity; ++i) {
    if (vars.empty()) {
      head.terms.push_back(Term::constant(domain_constant(rng, domain_size)));
    } else {
      head.terms.push_back(Term::variable(vars[pick(rng, vars.size())]));
    }
  }
  return head;
}

Rule random_rule(std::mt19937_64& rng, const std::string& head_pred, std::size_t head_arity,
                 const PredicatePool& body_preds, std::size_t length, std::size_t domain_size) {
  std::vector<std::string> used;
  Rule r;
  for (std::size_t i = 0; i < length; ++i) {
    r.body.push_back(random_literal(rng, body_preds[pick(rng, body_preds.size())], used, domain_size));
  }
  r.head = random_head(rng, head_pred, head_arity, used, domain_size);
  return r;
}

Literal binary(const std::string& pred, const std::string& a, const std::string& b) {
  return Literal{pred, {Term::variable(a), Term::variable(b)}};
}

}  // namespace

Program RandomCorpus::program(const std::string& family) {
  const std::size_t arity = pick(rng_, 3);
  const std::string answer = arity == 0 ? "ans" : "Ans";
  std::vector<Rule> rules;
  if (family == "cq" || family == "ucq") {
    std::size_t n = family == "cq" ? 1 : 2 + pick(rng_, 2);
    for (std::size_t i = 0; i < n; ++i) {
      rules.push_back(random_rule(rng_, answer, arity, kEdb, 1 + pick(rng_, 3), options_.domain_size));
    }
  } else if (family == "recursive") {
    // P is a closure of one binary relation along another.
    const std::string base = chance(rng_, 0.5) ? "R" : "T";
    const std::string step = chance(rng_, 0.5) ? "R" : "T";
    rules.push_back(Rule{binary("P", "X", "Y"), {binary(base, "X", "Y")}});
    if (chance(rng_, 0.5)) {
      rules.push_back(Rule{binary("P", "X", "Y"), {binary("P", "X", "Z"), binary(step, "Z", "Y")}});
    } else {
      rules.push_back(Rule{binary("P", "X", "Y"), {binary(step, "X", "Z"), binary("P", "Z", "Y")}});
    }
    PredicatePool pool = kEdb;
    pool.emplace_back("P", 2);
    std::size_t n = 1 + pick(rng_, 2);
    for (std::size_t i = 0; i < n; ++i) {
      auto r = random_rule(rng_, answer, arity, pool, 1 + pick(rng_, 2), options_.domain_size);
      bool uses_p = std::any_of(r.body.begin(), r.body.end(), [](const Literal& l) { return l.predicate == "P"; });
      if (!uses_p) {
        std::vector<std::string> used;
        for (const auto& l : r.body) {
          for (const auto& t : l.terms) {
            if (t.is_variable() && std::find(used.begin(), used.end(), t.name) == used.end()) {
              used.push_back(t.name);
            }
          }
        }
        r.body.push_back(random_literal(rng_, {"P", 2}, used, options_.domain_size));
      }
      rules.push_back(std::move(r));
    }
  } else {
    // Linear: each atom continues only variables of the atom right before it.
    static const std::vector<std::string> names = {"A", "B", "C", "E"};
    const std::size_t k = 1 + pick(rng_, 4);
    std::vector<std::string> prev, all;
    std::size_t fresh = 0;
    Rule r;
    for (std::size_t i = 0; i < k; ++i) {
      Literal lit{names[i], {}};
      std::vector<std::string> here;
      std::size_t atom_arity = 1 + pick(rng_, 2);
      for (std::size_t j = 0; j < atom_arity; ++j) {
        if (chance(rng_, 0.08)) {
          lit.terms.push_back(Term::constant(domain_constant(rng_, options_.domain_size)));
          continue;
        }
        std::string v;
        if (!prev.empty() && (j == 0 || chance(rng_, 0.3))) {
          v = prev[pick(rng_, prev.size())];
        } else {
          v = "V" + std::to_string(fresh++);
        }
        lit.terms.push_back(Term::variable(v));
        if (std::find(here.begin(), here.end(), v) == here.end()) here.push_back(v);
        if (std::find(all.begin(), all.end(), v) == all.end()) all.push_back(v);
      }
      r.body.push_back(std::move(lit));
      prev = std::move(here);
    }
    const std::string name = all.empty() ? "ans" : answer;
    r.head = random_head(rng_, name, all.empty() ? 0 : arity, all, options_.domain_size);
    return Program({std::move(r)}, name);
  }
  return Program(std::move(rules), answer);
}

AtomSet RandomCorpus::facts(const Program& program, std::size_t count) {
  PredicatePool edb;
  const auto heads = program.head_predicates();
  for (const auto& [pred, arity] : program.schema().arities()) {
    if (!heads.contains(pred)) edb.emplace_back(pred, arity);
  }
  AtomSet out;
  if (edb.empty()) return out;
  for (std::size_t attempt = 0; out.size() < count && attempt < 20 * count; ++attempt) {
    const auto& [pred, arity] = edb[pick(rng_, edb.size())];
    Atom a{pred, {}};
    for (std::size_t i = 0; i < arity; ++i) a.args.push_back(domain_constant(rng_, options_.domain_size));
    out.insert(std::move(a));
  }
  return out;
}

Instance RandomCorpus::partition(const AtomSet& facts) {
  AtomSet endo, exo;
  for (const auto& f : facts) (chance(rng_, options_.exogenous_rate) ? exo : endo).insert(f);
  return Instance(std::move(endo), std::move(exo));
}

CorpusCase RandomCorpus::complete(Program program, std::string family) {
  for (std::size_t attempt = 0; attempt < 50; ++attempt) {
    auto f = facts(program, 1 + pick(rng_, options_.max_facts));
    auto answers = evaluate(program, f).answers();
    if (answers.empty()) continue;
    auto it = answers.begin();
    std::advance(it, static_cast<std::ptrdiff_t>(pick(rng_, answers.size())));
    return CorpusCase{std::move(program), partition(f), *it, std::move(family)};
  }
  return complete(this->program(family), std::move(family));
}

CorpusCase RandomCorpus::next() {
  static const std::vector<std::string> families = {"cq", "ucq", "recursive"};
  const auto& family = families[turn_++ % families.size()];
  return complete(program(family), family);
}

CorpusCase RandomCorpus::next_linear() { return complete(program("linear"), "linear"); }

}  // namespace causalog::testkit
