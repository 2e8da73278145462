#include "nevlab/types.hpp"

namespace nevlab {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::MismatchedBasePoint: return "MismatchedBasePoint";
    case ErrorKind::DivisionByZeroSeries: return "DivisionByZeroSeries";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::AllCoordinatesVanish: return "AllCoordinatesVanish";
    case ErrorKind::NotReduced: return "NotReduced";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::NotHyperplanes: return "NotHyperplanes";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::IdenticallyZero: return "IdenticallyZero";
    case ErrorKind::WeightedDegreeViolation: return "WeightedDegreeViolation";
    case ErrorKind::PoleAtEvaluationPoint: return "PoleAtEvaluationPoint";
    case ErrorKind::NotOnDivisor: return "NotOnDivisor";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::BoundaryZero: return "BoundaryZero";
    case ErrorKind::GridExceedsScan: return "GridExceedsScan";
    case ErrorKind::InvalidGrid: return "InvalidGrid";
    case ErrorKind::ParameterViolation: return "ParameterViolation";
    case ErrorKind::RadiusOutsideProfile: return "RadiusOutsideProfile";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::BoundedCharacteristic: return "BoundedCharacteristic";
    case ErrorKind::MultiplicityHypothesisFailed: return "MultiplicityHypothesisFailed";
    case ErrorKind::BelowThreshold: return "BelowThreshold";
    case ErrorKind::BoundViolation: return "BoundViolation";
    case ErrorKind::PreconditionViolation: return "PreconditionViolation";
  }
  return "Unknown";
}

bool is_numeric_failure(ErrorKind kind) noexcept {
  return kind == ErrorKind::NoConvergence || kind == ErrorKind::BoundaryZero;
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void raise(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace nevlab
