#pragma once

#include <stdexcept>

namespace lasernoise {

// Everything the library throws derives from SimError so callers can catch
// one type at the boundary.
struct SimError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DomainError : SimError { using SimError::SimError; };
struct BoundsViolation : SimError { using SimError::SimError; };
struct ConfigError : SimError { using SimError::SimError; };
struct StepTooLarge : SimError { using SimError::SimError; };
struct ZeroRateHalt : SimError { using SimError::SimError; };
struct TooFewWindows : SimError { using SimError::SimError; };
struct EmptyTrace : SimError { using SimError::SimError; };
struct MismatchedRuns : SimError { using SimError::SimError; };
struct InfeasibleError : SimError { using SimError::SimError; };
struct DegenerateError : SimError { using SimError::SimError; };

}  // namespace lasernoise
