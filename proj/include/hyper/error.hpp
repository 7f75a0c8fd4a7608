#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyper {

enum class ErrorCode {
  InvalidArgument,
  FieldMismatch,
  DivisionByZero,
  ZeroAtNegativeExponent,
  NotAMonomial,
  NonIntegralDenominator,
  UnsupportedType,
  NotDominant,
  ContextMismatch,
  CapExceeded,
  NotPrimitive,
  NonIntegral,
  CharTwoUnsupported,
  CharPositiveUnsupported,
  ZeroEvalPoint,
  NotHighestLWeight,
  NotCyclic,
  EigenvalueOutsideField,
  SyntaxError,
};

std::string_view error_code_name(ErrorCode code);

/// Engine error carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Parse failure with a 1-based source location.
class SyntaxError : public Error {
 public:
  SyntaxError(int line, int column, const std::string& msg)
      : Error(ErrorCode::SyntaxError, msg + " at line " + std::to_string(line) +
                                          ", column " + std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace hyper
