#pragma once

#include <stdexcept>
#include <string>

namespace wavectrl {

// Base class for runtime failures inside the solvers.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A time-step trajectory norm exceeded the blow-up threshold.
struct InstabilityDetected : SolverError {
  using SolverError::SolverError;
};

// A banded factorization hit a singular pivot.
struct SingularStep : SolverError {
  using SolverError::SolverError;
};

// The Armijo backtracking step size underflowed without acceptance.
struct LineSearchStalled : SolverError {
  using SolverError::SolverError;
};

// Critical-cone sampling produced only zero directions.
struct DegenerateCone : SolverError {
  using SolverError::SolverError;
};

// Scenario / input validation failure.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wavectrl
