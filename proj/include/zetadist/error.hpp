#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zetadist {

enum class ErrorKind {
  NotPrime,
  SizeExceeded,
  FieldMismatch,
  DivisionByZero,
  EvenCharacteristic,
  UnsupportedField,
  SingularCurve,
  BadDegree,
  WeilViolation,
  NonIntegerCoefficient,
  GuardExceeded,
  NoConvergence,
  BadCharacteristic,
  DegreeOutOfRange,
  ToleranceBelowPrecision,
  ToleranceUnachievable,
  PrecisionInsufficient,
  ZeroParameter,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Library-wide exception; `kind()` identifies the failure for callers that
/// need to map errors (e.g. to process exit codes).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace zetadist
