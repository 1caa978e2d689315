#include "dualrisk/error.hpp"

namespace dualrisk {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonUnitMass: return "NonUnitMass";
    case ErrorCode::NegativeOutcome: return "NegativeOutcome";
    case ErrorCode::NonPositiveProbability: return "NonPositiveProbability";
    case ErrorCode::UnsortedOutcomes: return "UnsortedOutcomes";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorCode::InvalidWeighting: return "InvalidWeighting";
    case ErrorCode::NonMonotoneUtility: return "NonMonotoneUtility";
    case ErrorCode::RankViolation: return "RankViolation";
    case ErrorCode::PrecedenceViolation: return "PrecedenceViolation";
    case ErrorCode::BadGapSpec: return "BadGapSpec";
    case ErrorCode::DominanceCheckFailed: return "DominanceCheckFailed";
    case ErrorCode::CaseBoundary: return "CaseBoundary";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace dualrisk
