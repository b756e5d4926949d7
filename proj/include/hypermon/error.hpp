#pragma once

#include <stdexcept>
#include <string>

namespace hypermon {

/// Root of all errors raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SourceLoc {
  int line = 0;
  int column = 0;
};

/// Lexical, syntactic or static-semantic error in a program or predicate.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, SourceLoc loc)
      : Error(std::to_string(loc.line) + ":" + std::to_string(loc.column) +
              ": " + message),
        loc_(loc) {}

  SourceLoc loc() const { return loc_; }

 private:
  SourceLoc loc_;
};

/// Malformed trace line.
class FormatError : public Error {
 public:
  FormatError(const std::string& message, int line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

/// Runtime failure of the concrete interpreter.
class EvalError : public Error {
 public:
  enum class Kind { DivisionByZero, Precondition, Divergence, Uninitialized, Arity, Contract };

  EvalError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Input domain cannot be derived or is unsuitable for the requested operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Invalid combination of options (e.g. unroll depth 0 on an unannotated loop).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// External solver could not be launched or spoke garbage. Distinct from an
/// `unknown` answer, which is a regular result.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Operation called outside its contract (e.g. violating_extension on a serial predicate).
class ContractError : public Error {
 public:
  using Error::Error;
};

}  // namespace hypermon
