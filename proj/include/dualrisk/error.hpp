#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dualrisk {

enum class ErrorCode {
  NonUnitMass,
  NegativeOutcome,
  NonPositiveProbability,
  UnsortedOutcomes,
  DomainError,
  UnsupportedFamily,
  InvalidWeighting,
  NonMonotoneUtility,
  RankViolation,
  PrecedenceViolation,
  BadGapSpec,
  DominanceCheckFailed,
  CaseBoundary,
  ParseError,
};

std::string_view to_string(ErrorCode code);

/// Every recoverable failure in the library is reported as an Error carrying
/// a machine-checkable code; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dualrisk
