#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qcf {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (formulas, traces, universe and SEM files).
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A counterfactual operator below another operator of the temporal layer.
class NestingError : public Error {
 public:
  using Error::Error;
};

/// Shadowed or re-bound propositional quantifier.
class ScopeError : public Error {
 public:
  using Error::Error;
};

/// A brute-force or enumeration engine would exceed its configured cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Structural invariant of a model violated (preorder minimum, cyclic SEM, ...).
class ModelError : public Error {
 public:
  using Error::Error;
};

}  // namespace qcf
