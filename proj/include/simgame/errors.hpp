#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace simgame {

// Dimension mismatches and malformed arguments: programming errors of the caller.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A value violates documented invariants. Carries every violation found.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) {
      if (i) out += "; ";
      out += v[i];
    }
    return out;
  }
  std::vector<std::string> violations_;
};

// An analyzer's preconditions do not hold for the given input.
class Refusal : public std::runtime_error {
 public:
  Refusal(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, size_t line, size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + what),
        line_(line),
        column_(column) {}

  size_t line() const { return line_; }
  size_t column() const { return column_; }

 private:
  size_t line_, column_;
};

}  // namespace simgame
