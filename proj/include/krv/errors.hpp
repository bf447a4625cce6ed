#ifndef KRV_ERRORS_HPP
#define KRV_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace krv {

/// Base class of every error raised on bad user input or a violated precondition.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

/// Operands live over different variable tables.
class TableMismatch : public Error {
 public:
  explicit TableMismatch(const std::string& what) : Error("variable table mismatch: " + what) {}
};

/// A precondition on the mathematical input failed (non-unit inverse, bad relation shape, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Translation of the polynomial at the requested point vanishes identically.
class EmptyConeError : public DomainError {
 public:
  EmptyConeError() : DomainError("polynomial vanishes identically after translation: tangent cone undefined") {}
};

/// An iterative procedure ran past its configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A computed result failed an internal self-check. Always a bug.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error("internal invariant violated: " + what) {}
};

struct SourcePos {
  std::size_t offset = 0;
  std::size_t line = 1;
  std::size_t column = 1;
};

class ParseError : public Error {
 public:
  ParseError(SourcePos pos, const std::string& message, std::vector<std::string> expected = {});

  const SourcePos& pos() const noexcept { return pos_; }
  const std::string& message() const noexcept { return message_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

 private:
  SourcePos pos_;
  std::string message_;
  std::vector<std::string> expected_;
};

}  // namespace krv

#endif  // KRV_ERRORS_HPP
