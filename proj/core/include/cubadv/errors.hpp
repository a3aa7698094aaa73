#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cubadv {

/// Raised for arguments outside an operation's domain (bad dimension, δ ∉ (0,1], ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Point-set file could not be parsed. `line()` is 1-based.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// The requested case is valid mathematically but not covered (e.g. d = 1 certificates).
class UnsupportedError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A closed-form quantity diverges at the requested parameters.
class DivergenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace cubadv
