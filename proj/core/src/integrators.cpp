#include "pavf/integrators.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>

#include "pavf/errors.hpp"

namespace pavf {

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::avf: return "AVF";
    case Method::pavf: return "PAVF";
    case Method::pavf_adjoint: return "PAVF-adjoint";
    case Method::pavf_c: return "PAVF-C";
    case Method::pavf_p: return "PAVF-P";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  std::string key;
  for (char ch : name) key.push_back(ch == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (key == "avf") return Method::avf;
  if (key == "pavf") return Method::pavf;
  if (key == "pavf-adjoint" || key == "pavf-star") return Method::pavf_adjoint;
  if (key == "pavf-c") return Method::pavf_c;
  if (key == "pavf-p") return Method::pavf_p;
  return std::nullopt;
}

void StepperConfig::validate() const {
  if (!std::isfinite(tau) || tau == 0.0) throw ContractViolation("StepperConfig: tau must be finite and nonzero");
  solver.validate();
}

namespace {

enum class Pattern { forward, adjoint, averaged };

void check_inputs(const HamiltonianSystem& sys, const Grouping& grouping, const StepperConfig& cfg,
                  const State& z) {
  cfg.validate();
  if (z.size() != sys.dimension()) throw ContractViolation("step: state dimension mismatch");
  if (grouping.dimension() != sys.dimension()) throw ContractViolation("step: grouping dimension mismatch");
}

// Solves z' = z + tau S g(z, z') where g is the grouped mean gradient for the
// requested substitution pattern.
StepOutcome implicit_step(const HamiltonianSystem& sys, const Grouping& grouping, Pattern pattern,
                          double tau, const numerics::NonlinearSolveConfig& solver, const State& z) {
  const std::size_t m = sys.dimension();
  std::vector<double> avg(m), avg_adj(m), flow(m);
  const auto z_old = z.values();
  auto map = [&](std::span<const double> guess, std::span<double> out) {
    switch (pattern) {
      case Pattern::forward:
        partitioned_averaged_gradient(sys, grouping, z_old, guess, PathOrder::forward, avg);
        break;
      case Pattern::adjoint:
        partitioned_averaged_gradient(sys, grouping, z_old, guess, PathOrder::adjoint, avg);
        break;
      case Pattern::averaged:
        partitioned_averaged_gradient(sys, grouping, z_old, guess, PathOrder::forward, avg);
        partitioned_averaged_gradient(sys, grouping, z_old, guess, PathOrder::adjoint, avg_adj);
        for (std::size_t i = 0; i < m; ++i) avg[i] = 0.5 * (avg[i] + avg_adj[i]);
        break;
    }
    sys.skew().apply(avg, flow);
    for (std::size_t i = 0; i < m; ++i) out[i] = z_old[i] + tau * flow[i];
  };
  auto result = numerics::fixed_point_solve(map, z_old, solver);
  return {State(std::move(result.solution)), result.iterations};
}

}  // namespace

StepOutcome step_avf(const HamiltonianSystem& sys, const StepperConfig& cfg, const State& z) {
  const Grouping all = Grouping::single(sys.dimension());
  check_inputs(sys, all, cfg, z);
  return implicit_step(sys, all, Pattern::forward, cfg.tau, cfg.solver, z);
}

StepOutcome step_pavf(const HamiltonianSystem& sys, const Grouping& grouping,
                      const StepperConfig& cfg, const State& z) {
  check_inputs(sys, grouping, cfg, z);
  return implicit_step(sys, grouping, Pattern::forward, cfg.tau, cfg.solver, z);
}

StepOutcome step_pavf_adjoint(const HamiltonianSystem& sys, const Grouping& grouping,
                              const StepperConfig& cfg, const State& z) {
  check_inputs(sys, grouping, cfg, z);
  return implicit_step(sys, grouping, Pattern::adjoint, cfg.tau, cfg.solver, z);
}

StepOutcome step_pavf_c(const HamiltonianSystem& sys, const Grouping& grouping,
                        const StepperConfig& cfg, const State& z) {
  check_inputs(sys, grouping, cfg, z);
  const double half = 0.5 * cfg.tau;
  auto first = implicit_step(sys, grouping, Pattern::forward, half, cfg.solver, z);
  auto second = implicit_step(sys, grouping, Pattern::adjoint, half, cfg.solver, first.state);
  second.iterations += first.iterations;
  return second;
}

StepOutcome step_pavf_p(const HamiltonianSystem& sys, const Grouping& grouping,
                        const StepperConfig& cfg, const State& z) {
  check_inputs(sys, grouping, cfg, z);
  return implicit_step(sys, grouping, Pattern::averaged, cfg.tau, cfg.solver, z);
}

StepOutcome step(Method method, const HamiltonianSystem& sys, const Grouping& grouping,
                 const StepperConfig& cfg, const State& z) {
  switch (method) {
    case Method::avf: return step_avf(sys, cfg, z);
    case Method::pavf: return step_pavf(sys, grouping, cfg, z);
    case Method::pavf_adjoint: return step_pavf_adjoint(sys, grouping, cfg, z);
    case Method::pavf_c: return step_pavf_c(sys, grouping, cfg, z);
    case Method::pavf_p: return step_pavf_p(sys, grouping, cfg, z);
  }
  throw ContractViolation("step: unknown method");
}

Trajectory integrate(const StepFunction& step_fn, const EnergyFunction& energy, double tau,
                     const State& z0, std::size_t n_steps, const ObserverOptions& observers) {
  if (!std::isfinite(tau) || tau == 0.0) throw ContractViolation("integrate: tau must be finite and nonzero");
  const std::size_t stride = std::max<std::size_t>(1, observers.stride);

  Trajectory traj;
  auto record = [&](StepRecord rec) {
    if (observers.on_record) observers.on_record(rec);
    if (!observers.keep_states) rec.state = State{};
    traj.records.push_back(std::move(rec));
  };
  record({z0, 0.0, energy(z0), 0, 0});

  State current = z0;
  std::size_t last_recorded = 0;
  std::size_t last_iterations = 0;
  long long last_nanos = 0;
  auto record_last_good = [&] {
    // the failure report should end on the last accepted state
    if (traj.steps_taken != last_recorded)
      record({current, static_cast<double>(traj.steps_taken) * tau, energy(current), last_iterations, last_nanos});
  };
  for (std::size_t n = 1; n <= n_steps; ++n) {
    StepOutcome out;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      out = step_fn(current);
    } catch (const NonConvergenceError& e) {
      traj.failure = "step " + std::to_string(n) + ": " + e.what();
      record_last_good();
      break;
    } catch (const SingularMatrixError& e) {
      traj.failure = "step " + std::to_string(n) + ": " + e.what();
      record_last_good();
      break;
    }
    const auto t1 = std::chrono::steady_clock::now();
    const long long nanos = std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count();

    current = std::move(out.state);
    traj.steps_taken = n;
    traj.total_iterations += out.iterations;
    traj.total_step_nanos += nanos;
    last_iterations = out.iterations;
    last_nanos = nanos;
    if (n % stride == 0 || n == n_steps) {
      record({current, static_cast<double>(n) * tau, energy(current), out.iterations, nanos});
      last_recorded = n;
    }
  }
  return traj;
}

Trajectory integrate(const HamiltonianSystem& sys, const Grouping& grouping, Method method,
                     const StepperConfig& cfg, const State& z0, std::size_t n_steps,
                     const ObserverOptions& observers) {
  cfg.validate();
  auto step_fn = [&](const State& z) { return step(method, sys, grouping, cfg, z); };
  auto energy = [&](const State& z) { return eval_hamiltonian(sys, z); };
  return integrate(step_fn, energy, cfg.tau, z0, n_steps, observers);
}

}  // namespace pavf
