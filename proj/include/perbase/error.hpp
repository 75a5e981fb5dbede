#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace perbase {

enum class ErrorCode {
  ParseError,
  ReduciblePolynomial,
  NoRootOutsideUnitDisk,
  AmbiguousRootHint,
  DivisionByZero,
  FieldMismatch,
  ZeroRepresentation,
  NotRealBase,
  NotNegativeRealBase,
  CoverageFails,
  NotRepresentable,
  NoRepeatWithinBudget,
  DigitOutOfRange,
  NormalizerRangeExceeded,
  ValueNotPreserved,
  ComponentCountExceedsDegree,
  NotCoprime,
  HypothesisViolated,
  InvalidArgument,
};

std::string_view error_name(ErrorCode code);

// All domain failures surface as this exception; `code()` carries the
// machine-readable name used by the CLI.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace perbase
