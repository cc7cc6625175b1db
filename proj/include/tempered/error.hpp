#pragma once

#include <stdexcept>
#include <string>

namespace tempered {

/// Raised when an operation's mathematical precondition fails (window
/// exhausted, spec mismatch, non-unit divisor, presentation defect, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised by the text-format readers.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace tempered
