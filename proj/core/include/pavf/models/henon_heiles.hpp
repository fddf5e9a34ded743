#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pavf/grouping.hpp"
#include "pavf/hamiltonian_system.hpp"
#include "pavf/integrators.hpp"
#include "pavf/state.hpp"

// Henon-Heiles:  H = (q1^2 + q2^2 + p1^2 + p2^2)/2 + q1^2 q2 - q2^3/3,
// z = (q1, q2, p1, p2), canonical structure J.
namespace pavf::henon_heiles {

/// Escape energy; orbits below it stay inside the bounded triangle.
inline constexpr double kEscapeEnergy = 1.0 / 6.0;

struct HHState {
  double q1 = 0.0;
  double q2 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;

  State to_state() const { return State{q1, q2, p1, p2}; }
  static HHState from(std::span<const double> z);
  static HHState from(const State& z) { return from(z.values()); }
  friend bool operator==(const HHState&, const HHState&) = default;
};

struct HHInit {
  double energy = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  double p2 = 0.0;
};

/// Chaotic orbit at the escape energy, and the box orbit at H = 0.02.
inline constexpr HHInit kChaoticOrbit{1.0 / 6.0, 0.1, -0.5, 0.0};
inline constexpr HHInit kBoxOrbit{0.02, 0.0, -0.082, 0.0};

double hamiltonian(const HHState& z) noexcept;
double hamiltonian(std::span<const double> z);
void gradient(std::span<const double> z, std::span<double> out);

/// The generic system, with the closed-form segment averages registered.
HamiltonianSystem hh_system();

/// Singleton groups ({q1}, {q2}, {p1}, {p2}) in path order.
Grouping hh_grouping();

/// Solves the energy relation for p1 >= 0. Throws InfeasibleEnergyError if
/// the kinetic remainder is negative.
HHState hh_initial_state(const HHInit& init);

struct HHStepOutcome {
  HHState state;
  std::size_t iterations = 0;       // total scalar / vector fixed-point iterations
  std::size_t q1p1_iterations = 0;  // (q1, p1) sub-step; closed form in the partitioned schemes
};

HHStepOutcome step_avf(const StepperConfig& cfg, const HHState& z);
HHStepOutcome step_pavf(const StepperConfig& cfg, const HHState& z);
HHStepOutcome step_pavf_adjoint(const StepperConfig& cfg, const HHState& z);
HHStepOutcome step_pavf_c(const StepperConfig& cfg, const HHState& z);
HHStepOutcome step_pavf_p(const StepperConfig& cfg, const HHState& z);

HHStepOutcome step(Method method, const StepperConfig& cfg, const HHState& z);

/// Adapter for pavf::integrate.
StepFunction make_stepper(Method method, const StepperConfig& cfg);

struct PoincarePoint {
  double q2 = 0.0;
  double p2 = 0.0;
  double t = 0.0;
};

/// Crossings of the plane q1 = 0 with p1 > 0, located by linear
/// interpolation between consecutive samples.
std::vector<PoincarePoint> poincare_section(std::span<const StepRecord> records);

}  // namespace pavf::henon_heiles
