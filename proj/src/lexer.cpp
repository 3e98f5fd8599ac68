#include "lexer.hpp"

#include <cctype>

namespace causalog::detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

}  // namespace

const char* describe(TokenKind kind) {
  switch (kind) {
    case TokenKind::kIdentifier: return "identifier";
    case TokenKind::kInteger: return "integer";
    case TokenKind::kString: return "string";
    case TokenKind::kDirective: return "section header";
    case TokenKind::kLParen: return "'('";
    case TokenKind::kRParen: return "')'";
    case TokenKind::kComma: return "','";
    case TokenKind::kDot: return "'.'";
    case TokenKind::kImplies: return "':-'";
    case TokenKind::kEnd: return "end of input";
  }
  return "token";
}

bool is_identifier(std::string_view text) {
  if (text.empty() || !ident_start(text.front())) return false;
  for (char c : text) {
    if (!ident_char(c)) return false;
  }
  return true;
}

bool is_canonical_integer(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (!digit(c)) return false;
  }
  return text.size() == 1 || text.front() != '0';
}

Token Lexer::next() {
  Token t = current_;
  advance();
  return t;
}

Token Lexer::expect(TokenKind kind, const char* what) {
  if (current_.kind != kind) {
    fail(std::string("expected ") + what + ", found " + describe(current_.kind) +
         (current_.text.empty() ? "" : " '" + current_.text + "'"));
  }
  return next();
}

bool Lexer::accept(TokenKind kind) {
  if (current_.kind != kind) return false;
  advance();
  return true;
}

void Lexer::fail(const std::string& message) const {
  throw ParseError(current_.line, current_.column, message);
}

char Lexer::get() {
  char c = text_[pos_++];
  if (c == '\n') {
    ++line_;
    column_ = 1;
  } else {
    ++column_;
  }
  return c;
}

void Lexer::skip_blank() {
  while (pos_ < text_.size()) {
    char c = text_[pos_];
    if (c == '%') {
      while (pos_ < text_.size() && text_[pos_] != '\n') get();
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      get();
    } else {
      break;
    }
  }
}

void Lexer::advance() {
  skip_blank();
  current_ = Token{};
  current_.line = line_;
  current_.column = column_;
  if (pos_ >= text_.size()) {
    current_.kind = TokenKind::kEnd;
    return;
  }
  char c = text_[pos_];
  if (ident_start(c)) {
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) get();
    current_.kind = TokenKind::kIdentifier;
    current_.text = std::string(text_.substr(start, pos_ - start));
    return;
  }
  if (digit(c)) {
    std::size_t start = pos_;
    while (pos_ < text_.size() && digit(text_[pos_])) get();
    if (pos_ < text_.size() && ident_start(text_[pos_])) {
      throw ParseError(line_, column_, "malformed number");
    }
    std::string_view digits = text_.substr(start, pos_ - start);
    std::size_t nz = digits.find_first_not_of('0');
    current_.kind = TokenKind::kInteger;
    current_.text = nz == std::string_view::npos ? "0" : std::string(digits.substr(nz));
    return;
  }
  switch (c) {
    case '(': get(); current_.kind = TokenKind::kLParen; return;
    case ')': get(); current_.kind = TokenKind::kRParen; return;
    case ',': get(); current_.kind = TokenKind::kComma; return;
    case '.': get(); current_.kind = TokenKind::kDot; return;
    default: break;
  }
  if (c == ':' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
    get();
    get();
    current_.kind = TokenKind::kImplies;
    return;
  }
  if (c == '@') {
    get();
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) get();
    current_.kind = TokenKind::kDirective;
    current_.text = std::string(text_.substr(start, pos_ - start));
    return;
  }
  if (c == '"') {
    get();
    std::string value;
    for (;;) {
      if (pos_ >= text_.size() || text_[pos_] == '\n') {
        throw ParseError(current_.line, current_.column, "unterminated string");
      }
      char d = get();
      if (d == '"') break;
      if (d == '\\') {
        if (pos_ >= text_.size()) throw ParseError(line_, column_, "dangling escape");
        char e = get();
        switch (e) {
          case 'n': value += '\n'; break;
          case 't': value += '\t'; break;
          case '"': value += '"'; break;
          case '\\': value += '\\'; break;
          default: throw ParseError(line_, column_ - 1, std::string("unknown escape \\") + e);
        }
      } else {
        value += d;
      }
    }
    current_.kind = TokenKind::kString;
    current_.text = std::move(value);
    return;
  }
  throw ParseError(line_, column_, std::string("unexpected character '") + c + "'");
}

}  // namespace causalog::detail
