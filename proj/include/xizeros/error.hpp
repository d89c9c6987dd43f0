#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace xizeros {

enum class ErrorKind {
  InvalidArgument,
  InvalidInterval,
  NonConvergent,
  StepUnderflow,
  OutOfDomain,
  PositivityViolation,
  TailNotBounded,
  InsufficientEntries,
  PrecisionExhausted,
  NoSignChange,
  NewtonDiverged,
  ZeroOnContour,
  SubdivisionLimit,
  InsufficientZeros,
  EmptyTable,
  SchemaMismatch,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, double hint = 0.0)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), hint_(hint) {}

  ErrorKind kind() const { return kind_; }
  /// Kind-specific numeric payload: suggested perturbation for ZeroOnContour,
  /// offending line for ParseError, otherwise 0.
  double hint() const { return hint_; }

 private:
  ErrorKind kind_;
  double hint_;
};

}  // namespace xizeros
