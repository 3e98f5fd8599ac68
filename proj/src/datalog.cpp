#include "causalog/datalog.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>

#include "causalog/error.hpp"
#include "lexer.hpp"

namespace causalog {

using detail::Lexer;
using detail::TokenKind;

std::string Term::to_string() const { return is_variable() ? name : value.to_program_string(); }

std::set<std::string> Literal::variables() const {
  std::set<std::string> out;
  for (const auto& t : terms) {
    if (t.is_variable()) out.insert(t.name);
  }
  return out;
}

std::string Literal::to_string() const {
  if (terms.empty()) return predicate;
  std::string out = predicate + "(";
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) out += ',';
    out += terms[i].to_string();
  }
  return out + ")";
}

std::set<std::string> Rule::body_variables() const {
  std::set<std::string> out;
  for (const auto& b : body) {
    auto v = b.variables();
    out.insert(v.begin(), v.end());
  }
  return out;
}

std::string Rule::to_string() const {
  std::string out = head.to_string() + " :- ";
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i) out += ", ";
    out += body[i].to_string();
  }
  return out + ".";
}

Program::Program(std::vector<Rule> rules, std::string answer_predicate)
    : answer_(std::move(answer_predicate)) {
  std::set<Rule> seen;
  for (auto& r : rules) {
    if (r.body.empty()) {
      throw DomainError("rule for " + r.head.predicate + " has an empty body");
    }
    auto body_vars = r.body_variables();
    for (const auto& v : r.head.variables()) {
      if (!body_vars.contains(v)) {
        throw DomainError("unsafe rule: head variable " + v + " does not occur in the body of " +
                          r.to_string());
      }
    }
    schema_.declare(r.head.predicate, r.head.arity());
    for (const auto& b : r.body) schema_.declare(b.predicate, b.arity());
    if (seen.insert(r).second) rules_.push_back(std::move(r));
  }
  bool defined = std::any_of(rules_.begin(), rules_.end(),
                             [&](const Rule& r) { return r.head.predicate == answer_; });
  if (!defined) throw DomainError("no rule defines the answer predicate " + answer_);
}

std::size_t Program::answer_arity() const { return schema_.arities().at(answer_); }

std::set<std::string> Program::head_predicates() const {
  std::set<std::string> out;
  for (const auto& r : rules_) out.insert(r.head.predicate);
  return out;
}

std::set<std::string> Program::predicates() const {
  std::set<std::string> out;
  for (const auto& [p, arity] : schema_.arities()) out.insert(p);
  return out;
}

std::string Program::fresh_predicate(const std::string& base) const {
  const auto& used = schema_.arities();
  if (!used.contains(base)) return base;
  for (int i = 1;; ++i) {
    auto name = base + "_" + std::to_string(i);
    if (!used.contains(name)) return name;
  }
}

std::string Program::to_string() const {
  std::string out;
  for (const auto& r : rules_) out += r.to_string() + "\n";
  return out;
}

namespace {

Term read_term(Lexer& lex) {
  const auto& tok = lex.peek();
  switch (tok.kind) {
    case TokenKind::kIdentifier: {
      auto t = lex.next();
      if (std::isupper(static_cast<unsigned char>(t.text.front()))) {
        return Term::variable(std::move(t.text));
      }
      return Term::constant(Constant(std::move(t.text)));
    }
    case TokenKind::kInteger:
    case TokenKind::kString:
      return Term::constant(Constant(lex.next().text));
    default:
      lex.fail(std::string("expected term, found ") + detail::describe(tok.kind));
  }
}

Literal read_literal(Lexer& lex) {
  Literal lit;
  lit.predicate = lex.expect(TokenKind::kIdentifier, "predicate name").text;
  if (lex.accept(TokenKind::kLParen)) {
    if (!lex.accept(TokenKind::kRParen)) {
      do {
        lit.terms.push_back(read_term(lex));
      } while (lex.accept(TokenKind::kComma));
      lex.expect(TokenKind::kRParen, "')'");
    }
  }
  return lit;
}

}  // namespace

Program parse_program(std::string_view text) {
  Lexer lex(text);
  std::vector<Rule> rules;
  std::vector<std::pair<std::size_t, std::size_t>> positions;
  while (lex.peek().kind != TokenKind::kEnd) {
    auto start = lex.peek();
    Rule rule;
    rule.head = read_literal(lex);
    if (lex.peek().kind == TokenKind::kDot) {
      lex.fail("facts are not allowed in programs; put " + rule.head.to_string() +
               " in the instance file");
    }
    lex.expect(TokenKind::kImplies, "':-'");
    do {
      rule.body.push_back(read_literal(lex));
    } while (lex.accept(TokenKind::kComma));
    lex.expect(TokenKind::kDot, "'.' at end of rule");
    auto body_vars = rule.body_variables();
    for (const auto& v : rule.head.variables()) {
      if (!body_vars.contains(v)) {
        throw ParseError(start.line, start.column,
                         "unsafe rule: head variable " + v + " does not occur in the body");
      }
    }
    rules.push_back(std::move(rule));
  }
  bool has_open = std::any_of(rules.begin(), rules.end(),
                              [](const Rule& r) { return r.head.predicate == "Ans"; });
  bool has_bool = std::any_of(rules.begin(), rules.end(),
                              [](const Rule& r) { return r.head.predicate == "ans"; });
  if (!has_open && !has_bool) {
    throw ParseError(1, 1, "program has no rule for the answer predicate Ans or ans");
  }
  try {
    return Program(std::move(rules), has_open ? "Ans" : "ans");
  } catch (const DomainError& e) {
    throw ParseError(1, 1, e.what());
  }
}

std::set<Tuple> AnswerSet::answers() const {
  if (!boolean) return tuples;
  if (truth) return {Tuple{}};
  return {};
}

bool AnswerSet::contains(const Tuple& answer) const {
  if (boolean) return truth && answer.empty();
  return tuples.contains(answer);
}

AnswerSet evaluate(const Program& program, const AtomSet& facts) {
  Evaluator ev(program, std::vector<Atom>(facts.begin(), facts.end()));
  return ev.answers(ev.full_mask());
}

bool holds(const Program& program, const AtomSet& facts, const Tuple& answer) {
  Evaluator ev(program, std::vector<Atom>(facts.begin(), facts.end()));
  return ev.holds(ev.full_mask(), answer);
}

namespace {

// Binds head terms of `rule` to `answer`; nullopt when they cannot unify.
std::optional<Rule> instantiate_head(const Rule& rule, const Tuple& answer) {
  std::map<std::string, Constant> binding;
  for (std::size_t i = 0; i < answer.size(); ++i) {
    const auto& t = rule.head.terms[i];
    if (t.is_variable()) {
      auto [it, inserted] = binding.emplace(t.name, answer[i]);
      if (!inserted && it->second != answer[i]) return std::nullopt;
    } else if (t.value != answer[i]) {
      return std::nullopt;
    }
  }
  Rule out;
  out.head.predicate = rule.head.predicate;
  for (const auto& b : rule.body) {
    Literal lit{b.predicate, {}};
    for (const auto& t : b.terms) {
      auto it = t.is_variable() ? binding.find(t.name) : binding.end();
      lit.terms.push_back(it == binding.end() ? t : Term::constant(it->second));
    }
    out.body.push_back(std::move(lit));
  }
  return out;
}

}  // namespace

Program specialize(const Program& program, const Tuple& answer) {
  if (answer.size() != program.answer_arity()) {
    throw DomainError("answer has " + std::to_string(answer.size()) +
                      " constants but the answer predicate " + program.answer_predicate() +
                      " has arity " + std::to_string(program.answer_arity()));
  }
  if (program.is_boolean()) return program;

  const auto& ans = program.answer_predicate();
  bool recursive = false;
  for (const auto& r : program.rules()) {
    for (const auto& b : r.body) recursive = recursive || b.predicate == ans;
  }
  auto goal = program.fresh_predicate("ans");
  std::vector<Rule> rules;
  if (recursive) {
    rules = program.rules();
    Literal body{ans, {}};
    for (const auto& c : answer) body.terms.push_back(Term::constant(c));
    rules.push_back(Rule{Literal{goal, {}}, {std::move(body)}});
  } else {
    for (const auto& r : program.rules()) {
      if (r.head.predicate != ans) {
        rules.push_back(r);
      } else if (auto inst = instantiate_head(r, answer)) {
        inst->head.predicate = goal;
        rules.push_back(std::move(*inst));
      }
    }
    if (std::none_of(rules.begin(), rules.end(),
                     [&](const Rule& r) { return r.head.predicate == goal; })) {
      // No rule can produce this answer: keep an unsatisfiable goal rule.
      Literal body{ans, {}};
      for (const auto& c : answer) body.terms.push_back(Term::constant(c));
      rules = program.rules();
      rules.push_back(Rule{Literal{goal, {}}, {std::move(body)}});
    }
  }
  return Program(std::move(rules), goal);
}

Program with_goal_rule(const Program& program, const std::vector<Atom>& goals) {
  if (goals.empty()) throw DomainError("goal rule needs at least one atom");
  auto goal = program.fresh_predicate("ans");
  Rule rule{Literal{goal, {}}, {}};
  for (const auto& g : goals) {
    Literal lit{g.predicate, {}};
    for (const auto& c : g.args) lit.terms.push_back(Term::constant(c));
    rule.body.push_back(std::move(lit));
  }
  auto rules = program.rules();
  rules.push_back(std::move(rule));
  return Program(std::move(rules), goal);
}

}  // namespace causalog
