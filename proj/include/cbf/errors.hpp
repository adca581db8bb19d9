#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cbf {

/// Bad input: violated precondition, inconsistent configuration, grid mismatch.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Nonzero k = 0 coefficient handed to an operation that requires mean-zero data.
class MeanViolationError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Numerical failure during time stepping (norm guard, NaN, step guard).
class BlowUpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Iterative procedure ran out of budget (time horizon, doubling test, fit data).
class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration rejected; carries every violation found, not just the first.
class ConfigError : public ValidationError {
 public:
  explicit ConfigError(std::vector<std::string> diagnostics);
  const std::vector<std::string>& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

}  // namespace cbf

namespace cbf {

/// Step size exceeds cfl_safety * dx / max|u|; the run aborts instead of sub-stepping.
class StepGuardError : public BlowUpError {
 public:
  using BlowUpError::BlowUpError;
};

}  // namespace cbf
