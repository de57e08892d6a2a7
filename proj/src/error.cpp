#include "k3b/error.hpp"

namespace k3b {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ReducibleMinpoly: return "ReducibleMinpoly";
    case ErrorCode::InvalidInvolution: return "InvalidInvolution";
    case ErrorCode::AmbiguousEmbedding: return "AmbiguousEmbedding";
    case ErrorCode::IncompatibleConjugation: return "IncompatibleConjugation";
    case ErrorCode::UnsupportedDegree: return "UnsupportedDegree";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NotRealElement: return "NotRealElement";
    case ErrorCode::SignUndecided: return "SignUndecided";
    case ErrorCode::AlreadySquare: return "AlreadySquare";
    case ErrorCode::ZeroDiscriminant: return "ZeroDiscriminant";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::NonSymmetricGram: return "NonSymmetricGram";
    case ErrorCode::NonIntegralAmbient: return "NonIntegralAmbient";
    case ErrorCode::NonIsotropicClass: return "NonIsotropicClass";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotIsotropic: return "NotIsotropic";
    case ErrorCode::NotPositive: return "NotPositive";
    case ErrorCode::WrongSignature: return "WrongSignature";
    case ErrorCode::ZeroPeriod: return "ZeroPeriod";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::NotAField: return "NotAField";
    case ErrorCode::NotInAlgebra: return "NotInAlgebra";
    case ErrorCode::NotOnConic: return "NotOnConic";
    case ErrorCode::NotBrilliant: return "NotBrilliant";
    case ErrorCode::NotTwistorType: return "NotTwistorType";
    case ErrorCode::NotBrauerType: return "NotBrauerType";
    case ErrorCode::NotNLPoint: return "NotNLPoint";
    case ErrorCode::WrongComponent: return "WrongComponent";
    case ErrorCode::NonPositiveD: return "NonPositiveD";
    case ErrorCode::NotPositiveSquare: return "NotPositiveSquare";
    case ErrorCode::NotPositiveWithF: return "NotPositiveWithF";
    case ErrorCode::InSpanOfClasses: return "InSpanOfClasses";
    case ErrorCode::InvalidConnector: return "InvalidConnector";
    case ErrorCode::NoIntersectionInChart: return "NoIntersectionInChart";
    case ErrorCode::PointIsSigmaZero: return "PointIsSigmaZero";
    case ErrorCode::UnsupportedTower: return "UnsupportedTower";
    case ErrorCode::SOutOfRange: return "SOutOfRange";
    case ErrorCode::BaseNotCM: return "BaseNotCM";
    case ErrorCode::EmbeddingMissing: return "EmbeddingMissing";
    case ErrorCode::NotCMField: return "NotCMField";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::UnknownCommand: return "UnknownCommand";
    case ErrorCode::MissingFlag: return "MissingFlag";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace k3b
