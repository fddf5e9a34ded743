#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace pavf {

/// Raised when a caller breaks a documented precondition (wrong dimension,
/// invalid grouping, non-finite input, ...).
class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A tridiagonal elimination hit a zero (or non-finite) pivot.
class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An implicit solve ran out of iterations. Carries the last iterate so that
/// callers can log partial progress.
class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, std::vector<double> last_iterate,
                      double residual, std::size_t iterations)
      : std::runtime_error(what),
        last_iterate_(std::move(last_iterate)),
        residual_(residual),
        iterations_(iterations) {}

  const std::vector<double>& last_iterate() const noexcept { return last_iterate_; }
  double residual() const noexcept { return residual_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  std::vector<double> last_iterate_;
  double residual_;
  std::size_t iterations_;
};

/// The requested energy level cannot be reached from the given coordinates.
class InfeasibleEnergyError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace pavf
