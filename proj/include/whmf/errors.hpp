#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace whmf {

enum class ErrorKind {
  ZeroLeadingCoefficient,
  NonzeroConstantTerm,
  NonUnitDenominator,
  PrecisionExceeded,
  FractionalValuation,
  UnsupportedLevel,
  NotCoprime,
  NotADivisor,
  ParityMismatch,
  EmptyFamily,
  InsufficientPrecision,
  TailBoundTooLarge,
  EmptyPlusSpace,
  AmbiguousPlusSpace,
  ReconstructionFailed,
  ZeroConstantTerm,
  ConstantTermObstruction,
  NonIntegralCoefficient,
  InvarianceFailure,
  IdentityFailure,
  EmptyBelowMinimalWeight,
  IndexBelowRange,
  HypothesisViolated,
  RealityFailure,
  WindingAmbiguous,
  BadCharacter,
  Usage,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so that
// callers (tests, the CLI) can dispatch on it without parsing messages.
class MathError : public std::runtime_error {
 public:
  MathError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace whmf
