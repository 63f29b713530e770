#pragma once

#include <stdexcept>
#include <string>

namespace ppc {

// Base for every error the library throws. Callers that do not care about
// the specific failure catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Syntax error in one of the text formats (rule strings, robot
// expressions, net files). Carries a 1-based line/column.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace ppc
