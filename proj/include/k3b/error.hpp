#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace k3b {

/// Every failure the library reports carries one of these codes, so callers
/// (and the CLI's exit-code mapping) can branch without parsing messages.
enum class ErrorCode {
  // exactmath
  ReducibleMinpoly,
  InvalidInvolution,
  AmbiguousEmbedding,
  IncompatibleConjugation,
  UnsupportedDegree,
  DivisionByZero,
  NotRealElement,
  SignUndecided,
  AlreadySquare,
  ZeroDiscriminant,
  FieldMismatch,
  // lattice
  NonSymmetricGram,
  NonIntegralAmbient,
  NonIsotropicClass,
  DimensionMismatch,
  // hodge
  NotIsotropic,
  NotPositive,
  WrongSignature,
  ZeroPeriod,
  NotIrreducible,
  NotAField,
  NotInAlgebra,
  // brilliant
  NotOnConic,
  NotBrilliant,
  NotTwistorType,
  NotBrauerType,
  NotNLPoint,
  WrongComponent,
  // compose
  NonPositiveD,
  NotPositiveSquare,
  NotPositiveWithF,
  InSpanOfClasses,
  InvalidConnector,
  NoIntersectionInChart,
  PointIsSigmaZero,
  UnsupportedTower,
  SOutOfRange,
  // cmprop
  BaseNotCM,
  EmbeddingMissing,
  // cli
  NotCMField,
  ParseError,
  ValidationError,
  UnknownCommand,
  MissingFlag,
  // two independent routes disagreed
  InternalInconsistency,
  InvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace k3b
