#pragma once

// Tokenizer shared by the instance and program parsers.

#include <cstddef>
#include <string>
#include <string_view>

#include "causalog/error.hpp"

namespace causalog::detail {

enum class TokenKind {
  kIdentifier,
  kInteger,
  kString,
  kDirective,  // @name
  kLParen,
  kRParen,
  kComma,
  kDot,
  kImplies,  // :-
  kEnd,
};

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;  // unescaped payload for strings, canonical digits for integers
  std::size_t line = 1;
  std::size_t column = 1;
};

const char* describe(TokenKind kind);

bool is_identifier(std::string_view text);
bool is_canonical_integer(std::string_view text);

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const noexcept { return current_; }
  Token next();

  /// Consumes a token of `kind` or throws ParseError naming `what`.
  Token expect(TokenKind kind, const char* what);
  bool accept(TokenKind kind);

  [[noreturn]] void fail(const std::string& message) const;

 private:
  void advance();
  void skip_blank();
  char get();

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
  Token current_;
};

}  // namespace causalog::detail
