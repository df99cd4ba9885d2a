#include "qwalk/errors.hpp"

namespace qwalk {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonzeroDrift: return "NonzeroDrift";
    case ErrorCode::DegenerateModel: return "DegenerateModel";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::PoleAtPoint: return "PoleAtPoint";
    case ErrorCode::NonUnitConstantTerm: return "NonUnitConstantTerm";
    case ErrorCode::NotSmallSteps: return "NotSmallSteps";
    case ErrorCode::GroupInfinite: return "GroupInfinite";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NumeratorSingularAtSaddle: return "NumeratorSingularAtSaddle";
    case ErrorCode::NotOrbitSummable: return "NotOrbitSummable";
    case ErrorCode::DegreeBoundViolated: return "DegreeBoundViolated";
    case ErrorCode::NoSolutionWithinDegreeBound: return "NoSolutionWithinDegreeBound";
    case ErrorCode::DecompositionInfeasible: return "DecompositionInfeasible";
    case ErrorCode::PrecisionInsufficient: return "PrecisionInsufficient";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace qwalk
