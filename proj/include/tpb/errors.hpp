#pragma once

#include <stdexcept>
#include <string>

namespace tpb {

enum class ErrorCode {
  kNotFound,
  kDomain,
  kPrecondition,
  kStructural,
  kParse,
  kBudget,
};

// Base of every exception thrown by the library. The C API maps `code()`
// onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class NotFoundError : public Error {
 public:
  explicit NotFoundError(const std::string& what) : Error(ErrorCode::kNotFound, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorCode::kDomain, what) {}
};

// A caller-supplied input violates a documented hypothesis.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what)
      : Error(ErrorCode::kPrecondition, what) {}
};

// An internal invariant failed. Always a solver bug.
class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& what)
      : Error(ErrorCode::kStructural, what) {}
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(ErrorCode::kParse, "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class BudgetError : public Error {
 public:
  explicit BudgetError(const std::string& what) : Error(ErrorCode::kBudget, what) {}
};

}  // namespace tpb
