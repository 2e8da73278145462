#pragma once

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nevlab {

#ifdef NEVLAB_EXTENDED_PRECISION
using Real = long double;
#else
using Real = double;
#endif
using Complex = std::complex<Real>;

inline constexpr Real kInfinity = std::numeric_limits<Real>::infinity();
inline constexpr Real kPi = Real(3.141592653589793238462643383279502884L);

/// Failure categories raised by the library. The CLI maps them to exit codes.
enum class ErrorKind {
  MismatchedBasePoint,
  DivisionByZeroSeries,
  OutsideDomain,
  AllCoordinatesVanish,
  NotReduced,
  ParseError,
  NotHyperplanes,
  DimensionMismatch,
  IdenticallyZero,
  WeightedDegreeViolation,
  PoleAtEvaluationPoint,
  NotOnDivisor,
  NoConvergence,
  BoundaryZero,
  GridExceedsScan,
  InvalidGrid,
  ParameterViolation,
  RadiusOutsideProfile,
  DegenerateInput,
  BoundedCharacteristic,
  MultiplicityHypothesisFailed,
  BelowThreshold,
  BoundViolation,
  PreconditionViolation,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// True for failures caused by numerical non-convergence rather than by a
/// violated mathematical hypothesis.
bool is_numeric_failure(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return to_string(kind_); }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& what);

}  // namespace nevlab
