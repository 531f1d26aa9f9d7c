#pragma once

#include <stdexcept>
#include <string>

namespace cusped {

/// Coarse classification used by the command line front end to pick an
/// exit status. Library callers can switch on it instead of on the
/// concrete exception type.
enum class ErrorKind {
  Syntax,       // malformed input text
  Validation,   // well-formed input violating a mathematical precondition
  Computation,  // a numerical or algebraic step could not complete
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& what)
      : std::runtime_error(what), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// Stable short name, e.g. "NotTorsion" or "PoleEvaluation".
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, int line = 0, int column = 0)
      : Error(ErrorKind::Syntax, "SyntaxError", what), line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// Malformed data file (spectrum CSV, lattice or pole data).
class FormatError : public Error {
 public:
  FormatError(const std::string& what, int line = 0)
      : Error(ErrorKind::Syntax, "FormatError", what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what, std::string code = "ValidationError")
      : Error(ErrorKind::Validation, std::move(code), what) {}
};

class ComputationError : public Error {
 public:
  ComputationError(std::string code, const std::string& what)
      : Error(ErrorKind::Computation, std::move(code), what) {}
};

}  // namespace cusped
