#include "halfdm/error.hpp"

namespace halfdm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NumericalFailure: return "NumericalFailure";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::RankExceedsL: return "RankExceedsL";
    case ErrorCode::NotRelated: return "NotRelated";
    case ErrorCode::NonHermitianImage: return "NonHermitianImage";
    case ErrorCode::SignatureMismatch: return "SignatureMismatch";
    case ErrorCode::NotPseudoUnitary: return "NotPseudoUnitary";
    case ErrorCode::NotCP: return "NotCP";
    case ErrorCode::NoNegativeEigenvalue: return "NoNegativeEigenvalue";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::NotPPTInput: return "NotPPTInput";
    case ErrorCode::LTooSmall: return "LTooSmall";
    case ErrorCode::InvalidUPB: return "InvalidUPB";
    case ErrorCode::EpsTooLarge: return "EpsTooLarge";
    case ErrorCode::Rho0Invalid: return "Rho0Invalid";
    case ErrorCode::BoundViolated: return "BoundViolated";
    case ErrorCode::InvalidBasis: return "InvalidBasis";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace halfdm
