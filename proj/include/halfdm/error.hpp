#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace halfdm {

enum class ErrorCode {
  NotSquare,
  NotHermitian,
  NumericalFailure,
  DimensionMismatch,
  ShapeMismatch,
  NotPSD,
  RankExceedsL,
  NotRelated,
  NonHermitianImage,
  SignatureMismatch,
  NotPseudoUnitary,
  NotCP,
  NoNegativeEigenvalue,
  InvalidState,
  NotPPTInput,
  LTooSmall,
  InvalidUPB,
  EpsTooLarge,
  Rho0Invalid,
  BoundViolated,
  InvalidBasis,
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (the CLI in particular) can map them without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace halfdm
