#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace causalog {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed instance or program text. Carries a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A well-formed request that violates a precondition of the operation
/// (tuple not endogenous, answer not entailed, budget exceeded, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace causalog
