#include "whmf/errors.hpp"

namespace whmf {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
    case ErrorKind::NonzeroConstantTerm: return "NonzeroConstantTerm";
    case ErrorKind::NonUnitDenominator: return "NonUnitDenominator";
    case ErrorKind::PrecisionExceeded: return "PrecisionExceeded";
    case ErrorKind::FractionalValuation: return "FractionalValuation";
    case ErrorKind::UnsupportedLevel: return "UnsupportedLevel";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::NotADivisor: return "NotADivisor";
    case ErrorKind::ParityMismatch: return "ParityMismatch";
    case ErrorKind::EmptyFamily: return "EmptyFamily";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::TailBoundTooLarge: return "TailBoundTooLarge";
    case ErrorKind::EmptyPlusSpace: return "EmptyPlusSpace";
    case ErrorKind::AmbiguousPlusSpace: return "AmbiguousPlusSpace";
    case ErrorKind::ReconstructionFailed: return "ReconstructionFailed";
    case ErrorKind::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorKind::ConstantTermObstruction: return "ConstantTermObstruction";
    case ErrorKind::NonIntegralCoefficient: return "NonIntegralCoefficient";
    case ErrorKind::InvarianceFailure: return "InvarianceFailure";
    case ErrorKind::IdentityFailure: return "IdentityFailure";
    case ErrorKind::EmptyBelowMinimalWeight: return "EmptyBelowMinimalWeight";
    case ErrorKind::IndexBelowRange: return "IndexBelowRange";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::RealityFailure: return "RealityFailure";
    case ErrorKind::WindingAmbiguous: return "WindingAmbiguous";
    case ErrorKind::BadCharacter: return "BadCharacter";
    case ErrorKind::Usage: return "Usage";
  }
  return "Unknown";
}

}  // namespace whmf
