#include "curvlab/error.hpp"

namespace curvlab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::NonOrthonormalBasis: return "NonOrthonormalBasis";
    case ErrorCode::NonPositiveTolerance: return "NonPositiveTolerance";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSkew: return "NotSkew";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::NotOrthonormal: return "NotOrthonormal";
    case ErrorCode::ConventionViolation: return "ConventionViolation";
    case ErrorCode::NoDominantEigenvalue: return "NoDominantEigenvalue";
    case ErrorCode::InconsistentKappa: return "InconsistentKappa";
    case ErrorCode::NotAlmostIsotropic: return "NotAlmostIsotropic";
    case ErrorCode::InconsistentTau: return "InconsistentTau";
    case ErrorCode::SignResolutionFailure: return "SignResolutionFailure";
    case ErrorCode::NotKahler: return "NotKahler";
    case ErrorCode::StructureViolation: return "StructureViolation";
    case ErrorCode::ZeroOperator: return "ZeroOperator";
    case ErrorCode::EmptySamples: return "EmptySamples";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::SchemaVersionUnsupported: return "SchemaVersionUnsupported";
    case ErrorCode::SymmetryViolation: return "SymmetryViolation";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace curvlab
