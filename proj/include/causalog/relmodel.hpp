#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace causalog {

/// An element of the database domain. Identifiers, integers and quoted strings
/// all live in one space keyed by their canonical text: the bare token `30` and
/// the quoted `"30"` denote the same constant, while `007` canonicalizes to `7`.
class Constant {
 public:
  Constant() = default;
  explicit Constant(std::string value) : value_(std::move(value)) {}

  const std::string& value() const noexcept { return value_; }

  /// Instance-file spelling: bare when the text lexes back to itself, quoted otherwise.
  std::string to_string() const;
  /// Program-file spelling. Bare tokens that start with an uppercase letter would
  /// read as variables there, so those are quoted too.
  std::string to_program_string() const;

  auto operator<=>(const Constant&) const = default;

 private:
  std::string value_;
};

using Tuple = std::vector<Constant>;

std::string to_string(const Tuple& tuple);

/// A ground atom `predicate(args...)`.
struct Atom {
  std::string predicate;
  Tuple args;

  std::size_t arity() const noexcept { return args.size(); }
  std::string to_string() const;

  auto operator<=>(const Atom&) const = default;
};

/// Shorthand used throughout tests and fixtures.
Atom make_atom(std::string predicate, std::initializer_list<std::string_view> args);

/// Ordered sets give the canonical (lexicographic) ordering used for all output.
using AtomSet = std::set<Atom>;
using AtomFamily = std::set<AtomSet>;

std::string to_string(const AtomSet& atoms);

/// Predicate arities fixed at first use.
class Schema {
 public:
  /// Records the arity of `atom.predicate`, or throws DomainError when it conflicts.
  void declare(const std::string& predicate, std::size_t arity);
  void declare(const Atom& atom) { declare(atom.predicate, atom.arity()); }

  const std::map<std::string, std::size_t>& arities() const noexcept { return arities_; }
  bool operator==(const Schema&) const = default;

 private:
  std::map<std::string, std::size_t> arities_;
};

/// A database instance D split into endogenous tuples D^n and exogenous tuples D^x.
/// Immutable once built; every construction path checks the partition and arities.
class Instance {
 public:
  Instance() = default;
  Instance(AtomSet endogenous, AtomSet exogenous);

  const AtomSet& endogenous() const noexcept { return endogenous_; }
  const AtomSet& exogenous() const noexcept { return exogenous_; }
  /// D = D^n ∪ D^x in canonical order.
  AtomSet all() const;

  bool contains(const Atom& atom) const;
  bool is_endogenous(const Atom& atom) const { return endogenous_.contains(atom); }
  std::size_t size() const noexcept { return endogenous_.size() + exogenous_.size(); }
  bool empty() const noexcept { return size() == 0; }

  /// Same tuples, all of them endogenous.
  Instance all_endogenous() const;

  bool operator==(const Instance&) const = default;

 private:
  AtomSet endogenous_;
  AtomSet exogenous_;
};

/// Parses the instance format: optional `@endogenous` / `@exogenous` section
/// headers, one `Pred(c1,...,cn).` fact per line, `%` comments. Facts before any
/// header are endogenous. Throws ParseError on malformed text and DomainError on
/// arity conflicts or a fact listed in both sections.
Instance parse_instance(std::string_view text);

/// Inverse of parse_instance: both sections, canonical order.
std::string print_instance(const Instance& instance);

/// Parses a single ground atom such as `Author(John,TODS)` (trailing `.` optional).
Atom parse_atom(std::string_view text);

/// Parses comma-separated constants, e.g. `John,XML`. Empty text yields the empty tuple.
Tuple parse_tuple(std::string_view text);

/// All constants occurring in D^n ∪ D^x.
std::set<Constant> active_domain(const Instance& instance);

}  // namespace causalog
