#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace triweb {

/// Malformed input text. Carries the 1-based line number of the offending line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An instance violates a domain invariant (duplicate vectors, wrong widths, ...).
class InvariantViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// No generator seed produced a balanced partition within the search budget.
class SeedsExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A value does not fit the fixed-width arithmetic a solver was asked to use.
class LabelOverflow : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

}  // namespace triweb
