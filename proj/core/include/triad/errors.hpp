#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace triad {

enum class ErrorCode {
  NotHermitian,
  ConvergenceFailure,
  ZeroMatrix,
  DimensionMismatch,
  InvalidArgument,
  NotAState,
  NotPSD,
  PreconditionNotMet,
  MarginalRankDeficient,
  WrongClassForMode,
  FullRankEigenvector,
  CompleteReducibilityViolation,
  NumericalDegeneracy,
  PowerIterationStall,
  BadRank,
  RejectionBudgetExhausted,
  FixedPointNotReached,
  UnknownName,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map failures to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace triad
