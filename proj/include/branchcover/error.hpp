#pragma once

#include <stdexcept>
#include <string>

namespace bcov {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text; line and column are 1-based.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

// An operation's precondition failed. `code` is a short stable identifier
// such as "unknown-generator" or "intransitive".
class ValidationError : public Error {
 public:
  ValidationError(std::string code, const std::string& what)
      : Error(code + ": " + what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

}  // namespace bcov
