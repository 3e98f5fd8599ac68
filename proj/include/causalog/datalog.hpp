#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "causalog/relmodel.hpp"

namespace causalog {

/// A rule argument: a variable or a constant.
struct Term {
  enum class Kind { kVariable, kConstant };

  Kind kind = Kind::kConstant;
  std::string name;  // variable name when kind == kVariable
  Constant value;    // constant when kind == kConstant

  static Term variable(std::string name) { return {Kind::kVariable, std::move(name), {}}; }
  static Term constant(Constant value) { return {Kind::kConstant, {}, std::move(value)}; }

  bool is_variable() const noexcept { return kind == Kind::kVariable; }
  std::string to_string() const;

  auto operator<=>(const Term&) const = default;
};

/// A possibly non-ground atom `predicate(terms...)` appearing in a rule.
struct Literal {
  std::string predicate;
  std::vector<Term> terms;

  std::size_t arity() const noexcept { return terms.size(); }
  std::set<std::string> variables() const;
  std::string to_string() const;

  auto operator<=>(const Literal&) const = default;
};

/// A positive rule `head :- body_1, ..., body_m` with m >= 1.
struct Rule {
  Literal head;
  std::vector<Literal> body;

  std::set<std::string> body_variables() const;
  std::string to_string() const;

  auto operator<=>(const Rule&) const = default;
};

/// A positive Datalog program with a distinguished answer predicate.
///
/// Construction checks safety (head variables occur in the body), nonempty
/// bodies, consistent predicate arities and that the answer predicate heads at
/// least one rule. Duplicate rules are dropped; rule order is otherwise kept.
class Program {
 public:
  Program(std::vector<Rule> rules, std::string answer_predicate);

  const std::vector<Rule>& rules() const noexcept { return rules_; }
  const std::string& answer_predicate() const noexcept { return answer_; }
  std::size_t answer_arity() const;
  /// True when the answer predicate is propositional.
  bool is_boolean() const { return answer_arity() == 0; }

  /// Predicates defined by rules (IDB).
  std::set<std::string> head_predicates() const;
  /// Every predicate mentioned anywhere in the program.
  std::set<std::string> predicates() const;
  const Schema& schema() const noexcept { return schema_; }

  /// A predicate name not used by this program, derived from `base`.
  std::string fresh_predicate(const std::string& base) const;

  /// Program-file text; parse_program(to_string()) yields an equal program.
  std::string to_string() const;

  bool operator==(const Program&) const = default;

 private:
  std::vector<Rule> rules_;
  std::string answer_;
  Schema schema_;
};

/// Parses `Head :- B1, ..., Bm.` rules. The answer predicate is `Ans` when some
/// rule defines it, otherwise `ans`.
Program parse_program(std::string_view text);

/// Extension of the answer predicate in the minimal model.
struct AnswerSet {
  std::set<Tuple> tuples;  // open answer predicate; unused for boolean programs
  bool truth = false;      // boolean programs: whether `ans` holds
  bool boolean = false;

  /// Uniform view: for boolean programs the answer `yes` is the empty tuple.
  std::set<Tuple> answers() const;
  bool contains(const Tuple& answer) const;

  bool operator==(const AnswerSet&) const = default;
};

/// Ground rule instance over the atoms of a Grounding.
struct GroundRule {
  std::size_t head;
  std::vector<std::size_t> body;
};

/// Rule instances whose bodies hold in a minimal model.
struct Grounding {
  std::vector<Atom> atoms;  // every atom of the model, facts first
  std::vector<GroundRule> rules;
};

/// Semi-naive bottom-up evaluator bound to a fixed universe of candidate facts.
///
/// Solvers evaluate the same program on many subsets of one database; the
/// evaluator interns the universe once and then runs on a presence mask.
/// Instances are immutable and cheap to copy.
class Evaluator {
 public:
  using Mask = std::vector<bool>;

  /// Throws DomainError when a fact predicate is defined by a rule (EDB
  /// discipline) or is used with a different arity than in the program.
  Evaluator(Program program, std::vector<Atom> universe);

  const Program& program() const noexcept;
  const std::vector<Atom>& universe() const noexcept;
  std::size_t size() const noexcept;
  Mask full_mask() const { return Mask(size(), true); }

  AnswerSet answers(const Mask& present) const;
  /// Whether `answer` is in the answer predicate's extension. Stops as soon as it is derived.
  bool holds(const Mask& present, const Tuple& answer) const;
  /// Whether every goal atom belongs to the minimal model.
  bool entails(const Mask& present, const std::vector<Atom>& goals) const;
  /// The whole minimal model (present facts plus derived atoms).
  AtomSet model(const Mask& present) const;
  Grounding ground(const Mask& present) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

AnswerSet evaluate(const Program& program, const AtomSet& facts);

/// Throws DomainError on an arity mismatch between `answer` and the answer predicate.
bool holds(const Program& program, const AtomSet& facts, const Tuple& answer);

/// Boolean program whose answer holds on any database exactly when `answer`
/// is an answer of `program` there. Rules defining the answer predicate are
/// instantiated with the answer constants when the answer predicate is not
/// used recursively; otherwise a goal rule `ans :- Ans(answer)` is added.
Program specialize(const Program& program, const Tuple& answer);

/// `program` plus a fresh propositional goal defined by the conjunction `goals`.
Program with_goal_rule(const Program& program, const std::vector<Atom>& goals);

}  // namespace causalog
