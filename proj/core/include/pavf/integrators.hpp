#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pavf/averaged_gradient.hpp"
#include "pavf/grouping.hpp"
#include "pavf/hamiltonian_system.hpp"
#include "pavf/numerics/nonlinear_solve.hpp"
#include "pavf/state.hpp"

namespace pavf {

enum class Method { avf, pavf, pavf_adjoint, pavf_c, pavf_p };

std::string_view to_string(Method m) noexcept;
/// Accepts "avf", "pavf", "pavf-adjoint", "pavf-c", "pavf-p" (case-insensitive,
/// '_' and '-' interchangeable).
std::optional<Method> parse_method(std::string_view name);

struct StepperConfig {
  double tau = 0.1;  // may be negative
  numerics::NonlinearSolveConfig solver{};

  void validate() const;
};

struct StepOutcome {
  State state;
  std::size_t iterations = 0;  // nonlinear iterations spent in this step
};

/// z' = z + tau S * mean grad H along z -> z'.
StepOutcome step_avf(const HamiltonianSystem& sys, const StepperConfig& cfg, const State& z);

/// Partitioned AVF: group k is averaged with earlier groups at z' and later
/// groups at z.
StepOutcome step_pavf(const HamiltonianSystem& sys, const Grouping& grouping,
                      const StepperConfig& cfg, const State& z);

/// Adjoint of step_pavf (reversed path order).
StepOutcome step_pavf_adjoint(const HamiltonianSystem& sys, const Grouping& grouping,
                              const StepperConfig& cfg, const State& z);

/// Composition: step_pavf_adjoint(tau/2) after step_pavf(tau/2).
StepOutcome step_pavf_c(const HamiltonianSystem& sys, const Grouping& grouping,
                        const StepperConfig& cfg, const State& z);

/// Coupled symmetric scheme whose group-k right-hand side is the mean of the
/// forward and adjoint substitution patterns.
StepOutcome step_pavf_p(const HamiltonianSystem& sys, const Grouping& grouping,
                        const StepperConfig& cfg, const State& z);

StepOutcome step(Method method, const HamiltonianSystem& sys, const Grouping& grouping,
                 const StepperConfig& cfg, const State& z);

// --- time stepping ---------------------------------------------------------

struct StepRecord {
  State state;
  double time = 0.0;
  double hamiltonian = 0.0;
  std::size_t solver_iterations = 0;
  long long wall_nanos = 0;
};

struct ObserverOptions {
  /// Record every `stride`-th step (the initial and final states are always
  /// recorded).
  std::size_t stride = 1;
  /// Drop the state vector from stored records (energy and counters remain).
  bool keep_states = true;
  /// Called for every recorded StepRecord, in order.
  std::function<void(const StepRecord&)> on_record;
};

struct Trajectory {
  std::vector<StepRecord> records;
  std::size_t steps_taken = 0;
  std::size_t total_iterations = 0;
  long long total_step_nanos = 0;
  /// Set when a step failed; records hold everything up to the failure.
  std::optional<std::string> failure;

  bool ok() const noexcept { return !failure.has_value(); }
};

using StepFunction = std::function<StepOutcome(const State&)>;
using EnergyFunction = std::function<double(const State&)>;

/// Applies `step` n_steps times from z0. Solver failures stop the loop and
/// are reported through Trajectory::failure.
Trajectory integrate(const StepFunction& step, const EnergyFunction& energy, double tau,
                     const State& z0, std::size_t n_steps, const ObserverOptions& observers = {});

Trajectory integrate(const HamiltonianSystem& sys, const Grouping& grouping, Method method,
                     const StepperConfig& cfg, const State& z0, std::size_t n_steps,
                     const ObserverOptions& observers = {});

}  // namespace pavf
