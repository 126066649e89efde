#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace contracta {

enum class ErrorCode {
  // structural / validation
  DimensionMismatch,
  InvalidArgument,
  Unbounded,
  OriginNotInterior,
  EmptyInterior,
  Unsupported,
  NotControllable,
  SeedNotContractive,
  SeedNotPositiveDefinite,
  SeedNotContracting,
  SeedNotSchurStable,
  SeedLevelTooLarge,
  RateTooWeak,
  // computation
  EmptySet,
  FacetLimitExceeded,
  BudgetExceeded,
  IterationLimit,
  InvariantViolation,
};

enum class ErrorCategory { Validation, Computation };

std::string_view to_string(ErrorCode code);
ErrorCategory category(ErrorCode code);

/// Library-wide exception carrying a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace contracta
