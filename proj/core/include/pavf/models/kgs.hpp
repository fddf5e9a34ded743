#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pavf/grouping.hpp"
#include "pavf/hamiltonian_system.hpp"
#include "pavf/integrators.hpp"
#include "pavf/numerics/tridiagonal.hpp"
#include "pavf/state.hpp"

// Klein-Gordon-Schroedinger equation, central differences, homogeneous
// Dirichlet boundary:
//   U' = 2V,  V' = (DU - U + P^2 + Q^2)/2,  P' = DQ/2 + U.Q,  Q' = -DP/2 - U.P
// with phi = Q + iP and V = u_t / 2.
namespace pavf::kgs {

struct Grid1D {
  double x_left = -10.0;
  double x_right = 10.0;
  std::size_t intervals = 1000;  // J

  Grid1D() = default;
  Grid1D(double left, double right, std::size_t j);

  double h() const noexcept { return (x_right - x_left) / static_cast<double>(intervals); }
  std::size_t nodes() const noexcept { return intervals + 1; }
  double x(std::size_t j) const noexcept { return x_left + static_cast<double>(j) * h(); }
};

/// Fields on nodes j = 0..J. Boundary entries are zero.
struct KGSState {
  std::vector<double> U;
  std::vector<double> V;
  std::vector<double> P;
  std::vector<double> Q;

  KGSState() = default;
  explicit KGSState(std::size_t nodes) : U(nodes), V(nodes), P(nodes), Q(nodes) {}

  std::size_t nodes() const noexcept { return U.size(); }

  /// Flat layout (U, V, P, Q) used by the generic integrators.
  State to_state() const;
  static KGSState from(std::span<const double> z);
  static KGSState from(const State& z) { return from(z.values()); }

  /// Throws ContractViolation on length mismatch, non-finite entries or
  /// nonzero boundary values.
  void validate() const;
};

double max_abs_difference(const KGSState& a, const KGSState& b);

struct SolitonParams {
  double c = -0.8;  // velocity, |c| < 1
  double x0 = 0.0;  // initial centre
};

struct ExactValue {
  double u = 0.0;
  double v = 0.0;  // u_t / 2
  std::complex<double> phi;
};

ExactValue kgs_exact(double x, double t, const SolitonParams& s);

/// Central second difference on interior nodes; boundary rows and the
/// couplings into boundary columns are zero so the operator stays symmetric.
numerics::TridiagonalMatrix build_laplacian(const Grid1D& grid);

struct InitialCondition {
  KGSState state;
  std::vector<std::string> warnings;
};

/// Superposition of solitons at t = 0, sampled on the grid with the
/// boundary values forced to zero.
InitialCondition kgs_initial(const Grid1D& grid, std::span<const SolitonParams> solitons);

/// Exact one-soliton fields at time t.
KGSState kgs_exact_state(const Grid1D& grid, double t, const SolitonParams& s);

double kgs_hamiltonian(const Grid1D& grid, const KGSState& z);
double kgs_mass(const Grid1D& grid, const KGSState& z);

/// The semi-discrete system as a generic HamiltonianSystem on 4(J+1) unknowns.
HamiltonianSystem kgs_system(const Grid1D& grid);

/// Groups ({U}, {V}, {P}, {Q}) in path order.
Grouping kgs_grouping(const Grid1D& grid);

struct KGSStepOutcome {
  KGSState state;
  std::size_t iterations = 0;  // nonlinear sweeps (0 for linearly implicit schemes)
  std::size_t linear_solves = 0;
};

KGSStepOutcome step_avf(const Grid1D& grid, const StepperConfig& cfg, const KGSState& z);
KGSStepOutcome step_pavf(const Grid1D& grid, const StepperConfig& cfg, const KGSState& z);
KGSStepOutcome step_pavf_adjoint(const Grid1D& grid, const StepperConfig& cfg, const KGSState& z);
KGSStepOutcome step_pavf_c(const Grid1D& grid, const StepperConfig& cfg, const KGSState& z);
KGSStepOutcome step_pavf_p(const Grid1D& grid, const StepperConfig& cfg, const KGSState& z);

KGSStepOutcome step(Method method, const Grid1D& grid, const StepperConfig& cfg, const KGSState& z);

/// U-stage matrix I - (tau^2/4)(D - I) with identity boundary rows.
numerics::TridiagonalMatrix u_stage_matrix(const Grid1D& grid, double tau);

/// Matrix I + i tau (D/4 + diag(weight)) for the psi = P + iQ stage, with
/// identity boundary rows.
numerics::ComplexTridiagonalMatrix psi_stage_matrix(const Grid1D& grid, double tau,
                                                    std::span<const double> weight);

/// L2 (grid norm) and max-norm errors summed over the four fields.
struct FieldError {
  double l2 = 0.0;
  double linf = 0.0;
};
FieldError solution_error(const Grid1D& grid, const KGSState& numeric, const KGSState& exact);

StepFunction make_stepper(Method method, const Grid1D& grid, const StepperConfig& cfg);

}  // namespace pavf::kgs
