#include "causalog/relmodel.hpp"

#include <algorithm>
#include <cctype>

#include "causalog/error.hpp"
#include "lexer.hpp"

namespace causalog {

using detail::Lexer;
using detail::TokenKind;

namespace {

std::string quote(const std::string& value) {
  std::string out = "\"";
  for (char c : value) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

Constant read_constant(Lexer& lex) {
  const auto& tok = lex.peek();
  switch (tok.kind) {
    case TokenKind::kIdentifier:
    case TokenKind::kInteger:
    case TokenKind::kString:
      return Constant(lex.next().text);
    default:
      lex.fail(std::string("expected constant, found ") + detail::describe(tok.kind));
  }
}

// Pred | Pred() | Pred(c1,...,cn)
Atom read_ground_atom(Lexer& lex) {
  Atom atom;
  atom.predicate = lex.expect(TokenKind::kIdentifier, "predicate name").text;
  if (lex.accept(TokenKind::kLParen)) {
    if (!lex.accept(TokenKind::kRParen)) {
      do {
        atom.args.push_back(read_constant(lex));
      } while (lex.accept(TokenKind::kComma));
      lex.expect(TokenKind::kRParen, "')'");
    }
  }
  return atom;
}

}  // namespace

std::string Constant::to_string() const {
  if (detail::is_identifier(value_) || detail::is_canonical_integer(value_)) return value_;
  return quote(value_);
}

std::string Constant::to_program_string() const {
  if (detail::is_canonical_integer(value_)) return value_;
  if (detail::is_identifier(value_) && !std::isupper(static_cast<unsigned char>(value_.front()))) {
    return value_;
  }
  return quote(value_);
}

std::string to_string(const Tuple& tuple) {
  std::string out;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ',';
    out += tuple[i].to_string();
  }
  return out;
}

std::string Atom::to_string() const {
  if (args.empty()) return predicate;
  return predicate + "(" + causalog::to_string(args) + ")";
}

Atom make_atom(std::string predicate, std::initializer_list<std::string_view> args) {
  Atom atom{std::move(predicate), {}};
  for (auto a : args) atom.args.emplace_back(std::string(a));
  return atom;
}

std::string to_string(const AtomSet& atoms) {
  std::string out = "{";
  bool first = true;
  for (const auto& a : atoms) {
    if (!first) out += ", ";
    first = false;
    out += a.to_string();
  }
  return out + "}";
}

void Schema::declare(const std::string& predicate, std::size_t arity) {
  auto [it, inserted] = arities_.emplace(predicate, arity);
  if (!inserted && it->second != arity) {
    throw DomainError("arity conflict for predicate " + predicate + ": used with " +
                      std::to_string(it->second) + " and " + std::to_string(arity) +
                      " arguments");
  }
}

Instance::Instance(AtomSet endogenous, AtomSet exogenous)
    : endogenous_(std::move(endogenous)), exogenous_(std::move(exogenous)) {
  Schema schema;
  for (const auto& a : endogenous_) schema.declare(a);
  for (const auto& a : exogenous_) {
    schema.declare(a);
    if (endogenous_.contains(a)) {
      throw DomainError("fact " + a.to_string() + " is both endogenous and exogenous");
    }
  }
}

AtomSet Instance::all() const {
  AtomSet out = endogenous_;
  out.insert(exogenous_.begin(), exogenous_.end());
  return out;
}

bool Instance::contains(const Atom& atom) const {
  return endogenous_.contains(atom) || exogenous_.contains(atom);
}

Instance Instance::all_endogenous() const { return Instance(all(), {}); }

Instance parse_instance(std::string_view text) {
  Lexer lex(text);
  Schema schema;
  AtomSet endogenous;
  AtomSet exogenous;
  bool in_exogenous = false;
  while (lex.peek().kind != TokenKind::kEnd) {
    if (lex.peek().kind == TokenKind::kDirective) {
      auto tok = lex.next();
      if (tok.text == "endogenous") {
        in_exogenous = false;
      } else if (tok.text == "exogenous") {
        in_exogenous = true;
      } else {
        throw ParseError(tok.line, tok.column, "unknown section @" + tok.text);
      }
      continue;
    }
    auto start = lex.peek();
    Atom atom = read_ground_atom(lex);
    lex.expect(TokenKind::kDot, "'.' after fact");
    try {
      schema.declare(atom);
    } catch (const DomainError& e) {
      throw DomainError(std::to_string(start.line) + ":" + std::to_string(start.column) + ": " +
                        e.what());
    }
    auto& own = in_exogenous ? exogenous : endogenous;
    const auto& other = in_exogenous ? endogenous : exogenous;
    if (other.contains(atom)) {
      throw DomainError(std::to_string(start.line) + ":" + std::to_string(start.column) +
                        ": fact " + atom.to_string() +
                        " appears in both the endogenous and exogenous sections");
    }
    own.insert(std::move(atom));
  }
  return Instance(std::move(endogenous), std::move(exogenous));
}

std::string print_instance(const Instance& instance) {
  std::string out = "@endogenous\n";
  for (const auto& a : instance.endogenous()) out += a.to_string() + ".\n";
  out += "@exogenous\n";
  for (const auto& a : instance.exogenous()) out += a.to_string() + ".\n";
  return out;
}

Atom parse_atom(std::string_view text) {
  Lexer lex(text);
  Atom atom = read_ground_atom(lex);
  lex.accept(TokenKind::kDot);
  lex.expect(TokenKind::kEnd, "end of atom");
  return atom;
}

Tuple parse_tuple(std::string_view text) {
  Lexer lex(text);
  Tuple out;
  if (lex.peek().kind == TokenKind::kEnd) return out;
  do {
    out.push_back(read_constant(lex));
  } while (lex.accept(TokenKind::kComma));
  lex.expect(TokenKind::kEnd, "',' or end of tuple");
  return out;
}

std::set<Constant> active_domain(const Instance& instance) {
  std::set<Constant> out;
  for (const auto* part : {&instance.endogenous(), &instance.exogenous()}) {
    for (const auto& a : *part) out.insert(a.args.begin(), a.args.end());
  }
  return out;
}

}  // namespace causalog
