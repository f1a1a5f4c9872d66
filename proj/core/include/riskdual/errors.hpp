#pragma once

#include <stdexcept>
#include <string>

namespace riskdual {

/// Malformed external input: unreadable files, CSV/JSON syntax, bad content.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A CSV or text parse failure tied to a 1-based line number.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// The bracket for a 1-D convex minimization kept growing without
/// enclosing a minimizer (objective not coercive in eta).
class BracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace riskdual
