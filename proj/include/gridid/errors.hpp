#pragma once

#include <stdexcept>
#include <string>

namespace gridid {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Node count below 2; such a network has no edges to identify.
class InvalidNodeCount : public Error {
 public:
  using Error::Error;
};

// Dimension mismatch between related quantities.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Numerically unusable data (non-finite entries and the like).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Malformed text input; carries a 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  explicit ParseError(const std::string& message) : Error(message) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

// A required (snapshot, node) cell is absent from the input.
class CompletenessError : public Error {
 public:
  using Error::Error;
};

// Formula evaluated outside its stated domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Linear system unusable, e.g. an identically zero coefficient matrix.
class DegenerateSystemError : public Error {
 public:
  using Error::Error;
};

// Random network generation exhausted its retry budget.
class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace gridid
