#include "contracta/error.hpp"

namespace contracta {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Unbounded: return "Unbounded";
    case ErrorCode::OriginNotInterior: return "OriginNotInterior";
    case ErrorCode::EmptyInterior: return "EmptyInterior";
    case ErrorCode::Unsupported: return "Unsupported";
    case ErrorCode::NotControllable: return "NotControllable";
    case ErrorCode::SeedNotContractive: return "SeedNotContractive";
    case ErrorCode::SeedNotPositiveDefinite: return "SeedNotPositiveDefinite";
    case ErrorCode::SeedNotContracting: return "SeedNotContracting";
    case ErrorCode::SeedNotSchurStable: return "SeedNotSchurStable";
    case ErrorCode::SeedLevelTooLarge: return "SeedLevelTooLarge";
    case ErrorCode::RateTooWeak: return "RateTooWeak";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::FacetLimitExceeded: return "FacetLimitExceeded";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::IterationLimit: return "IterationLimit";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

ErrorCategory category(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptySet:
    case ErrorCode::FacetLimitExceeded:
    case ErrorCode::BudgetExceeded:
    case ErrorCode::IterationLimit:
    case ErrorCode::InvariantViolation:
      return ErrorCategory::Computation;
    default:
      return ErrorCategory::Validation;
  }
}

}  // namespace contracta
