#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace curvlab {

enum class ErrorCode {
  OddDimension,
  NonOrthonormalBasis,
  NonPositiveTolerance,
  DimensionMismatch,
  NotSkew,
  NotUnit,
  NotOrthonormal,
  ConventionViolation,
  NoDominantEigenvalue,
  InconsistentKappa,
  NotAlmostIsotropic,
  InconsistentTau,
  SignResolutionFailure,
  NotKahler,
  StructureViolation,
  ZeroOperator,
  EmptySamples,
  PreconditionViolated,
  ParseError,
  SchemaVersionUnsupported,
  SymmetryViolation,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Exception carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace curvlab
