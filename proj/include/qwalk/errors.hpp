#pragma once

#include <stdexcept>
#include <string>

namespace qwalk {

enum class ErrorCode {
  ParseError = 2,
  NonzeroDrift,
  DegenerateModel,
  DivisionByZero,
  PoleAtPoint,
  NonUnitConstantTerm,
  NotSmallSteps,
  GroupInfinite,
  NotPositiveDefinite,
  NumeratorSingularAtSaddle,
  NotOrbitSummable,
  DegreeBoundViolated,
  NoSolutionWithinDegreeBound,
  DecompositionInfeasible,
  PrecisionInsufficient,
  FieldMismatch,
  InvalidArgument,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }
  int exit_code() const { return static_cast<int>(code_); }

 private:
  ErrorCode code_;
};

}  // namespace qwalk
