#include "pavf/models/kgs.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pavf/errors.hpp"

namespace pavf::kgs {

namespace {

using Complex = std::complex<double>;
constexpr Complex kI{0.0, 1.0};

// (D x)_j for the Dirichlet-pinned central difference: boundary rows vanish
// and interior rows ignore the boundary columns.
inline double apply_d(std::span<const double> x, std::size_t j, double inv_h2) {
  const std::size_t last = x.size() - 1;
  if (j == 0 || j == last) return 0.0;
  const double left = j - 1 >= 1 ? x[j - 1] : 0.0;
  const double right = j + 1 <= last - 1 ? x[j + 1] : 0.0;
  return (left - 2.0 * x[j] + right) * inv_h2;
}

inline Complex apply_d(std::span<const Complex> x, std::size_t j, double inv_h2) {
  const std::size_t last = x.size() - 1;
  if (j == 0 || j == last) return 0.0;
  const Complex left = j - 1 >= 1 ? x[j - 1] : Complex{};
  const Complex right = j + 1 <= last - 1 ? x[j + 1] : Complex{};
  return (left - 2.0 * x[j] + right) * inv_h2;
}

double quadratic_form_d(std::span<const double> x, double inv_h2) {
  double s = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) s += x[j] * apply_d(x, j, inv_h2);
  return s;
}

double mean_product(double xa, double xb, double ya, double yb) {
  return (xa * ya + xb * yb) / 3.0 + (xa * yb + xb * ya) / 6.0;
}
double mean_square(double xa, double xb) { return (xa * xa + xa * xb + xb * xb) / 3.0; }

void check_state(const Grid1D& grid, const KGSState& z) {
  if (z.nodes() != grid.nodes()) throw ContractViolation("KGS: state length does not match the grid");
  z.validate();
}

// Scratch buffers reused within one step.
struct Workspace {
  std::vector<double> rhs;
  std::vector<double> scratch;
  std::vector<Complex> psi_rhs;
  std::vector<Complex> psi_scratch;
};

// Solves the (U, V) pair
//   U' - U = tau (V + V'),   V' - V = tau [ (D - I)(U + U')/4 + forcing ]
// by eliminating V'.
void solve_u_stage(const Grid1D& grid, double tau, const KGSState& z, std::span<const double> forcing,
                   std::vector<double>& u_new, std::vector<double>& v_new, Workspace& ws) {
  const std::size_t n = grid.nodes();
  const double inv_h2 = 1.0 / (grid.h() * grid.h());
  const double t2 = 0.25 * tau * tau;
  const auto matrix = u_stage_matrix(grid, tau);
  ws.rhs.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double d_minus_i = apply_d(z.U, j, inv_h2) - z.U[j];
    ws.rhs[j] = z.U[j] + 2.0 * tau * z.V[j] + t2 * d_minus_i + tau * tau * forcing[j];
  }
  ws.rhs.front() = ws.rhs.back() = 0.0;
  u_new.resize(n);
  numerics::solve_tridiagonal_into<double>(matrix, ws.rhs, u_new, ws.scratch);

  v_new.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double d_minus_i = apply_d(z.U, j, inv_h2) - z.U[j] + apply_d(u_new, j, inv_h2) - u_new[j];
    v_new[j] = z.V[j] + tau * (0.25 * d_minus_i + forcing[j]);
  }
  v_new.front() = v_new.back() = 0.0;
}

// Solves for psi' = P' + i Q' in
//   (I + i tau (D/4 + diag a)) psi' = (I - i tau (D/4 + diag b)) psi.
void solve_psi_stage(const Grid1D& grid, double tau, const KGSState& z, std::span<const double> a,
                     std::span<const double> b, std::vector<double>& p_new, std::vector<double>& q_new,
                     Workspace& ws) {
  const std::size_t n = grid.nodes();
  const double inv_h2 = 1.0 / (grid.h() * grid.h());
  const auto matrix = psi_stage_matrix(grid, tau, a);
  std::vector<Complex> psi(n);
  for (std::size_t j = 0; j < n; ++j) psi[j] = {z.P[j], z.Q[j]};
  ws.psi_rhs.resize(n);
  for (std::size_t j = 0; j < n; ++j)
    ws.psi_rhs[j] = psi[j] - kI * tau * (0.25 * apply_d(std::span<const Complex>(psi), j, inv_h2) + b[j] * psi[j]);
  ws.psi_rhs.front() = ws.psi_rhs.back() = 0.0;
  numerics::solve_tridiagonal_into<Complex>(matrix, ws.psi_rhs, ws.psi_rhs, ws.psi_scratch);
  p_new.resize(n);
  q_new.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    p_new[j] = ws.psi_rhs[j].real();
    q_new[j] = ws.psi_rhs[j].imag();
  }
  p_new.front() = p_new.back() = q_new.front() = q_new.back() = 0.0;
}

// PAVF: (U, V) with the density frozen at step n, then psi with U^{n+1}.
KGSState pavf_substep(const Grid1D& grid, double tau, const KGSState& z, Workspace& ws) {
  const std::size_t n = grid.nodes();
  KGSState out(n);
  std::vector<double> forcing(n), weight(n);
  for (std::size_t j = 0; j < n; ++j) forcing[j] = 0.5 * (z.P[j] * z.P[j] + z.Q[j] * z.Q[j]);
  solve_u_stage(grid, tau, z, forcing, out.U, out.V, ws);
  for (std::size_t j = 0; j < n; ++j) weight[j] = 0.5 * out.U[j];
  solve_psi_stage(grid, tau, z, weight, weight, out.P, out.Q, ws);
  return out;
}

// Adjoint: psi with U^n, then (U, V) with the density at step n+1.
KGSState adjoint_substep(const Grid1D& grid, double tau, const KGSState& z, Workspace& ws) {
  const std::size_t n = grid.nodes();
  KGSState out(n);
  std::vector<double> forcing(n), weight(n);
  for (std::size_t j = 0; j < n; ++j) weight[j] = 0.5 * z.U[j];
  solve_psi_stage(grid, tau, z, weight, weight, out.P, out.Q, ws);
  for (std::size_t j = 0; j < n; ++j) forcing[j] = 0.5 * (out.P[j] * out.P[j] + out.Q[j] * out.Q[j]);
  solve_u_stage(grid, tau, z, forcing, out.U, out.V, ws);
  return out;
}

enum class CoupledScheme { avf, plus };

// Fully implicit schemes: iterate the density forcing and the psi-stage
// weights, with every linear part handled by the tridiagonal solves.
KGSStepOutcome coupled_step(CoupledScheme scheme, const Grid1D& grid, const StepperConfig& cfg,
                            const KGSState& z) {
  const std::size_t n = grid.nodes();
  const double tau = cfg.tau;
  Workspace ws;
  KGSStepOutcome result;
  KGSState guess = z;
  KGSState next(n);
  std::vector<double> forcing(n), a(n), b(n);
  double residual = 0.0;
  for (std::size_t it = 1; it <= cfg.solver.max_iter; ++it) {
    for (std::size_t j = 0; j < n; ++j) {
      const double p0 = z.P[j], p1 = guess.P[j], q0 = z.Q[j], q1 = guess.Q[j];
      if (scheme == CoupledScheme::avf) {
        // (P'^2 + 4 P_mid^2 + P^2)/12 + same for Q
        forcing[j] = 0.5 * (mean_square(p0, p1) + mean_square(q0, q1));
      } else {
        forcing[j] = 0.25 * (p0 * p0 + q0 * q0 + p1 * p1 + q1 * q1);
      }
    }
    solve_u_stage(grid, tau, z, forcing, next.U, next.V, ws);
    for (std::size_t j = 0; j < n; ++j) {
      if (scheme == CoupledScheme::avf) {
        // (U' psi' + 4 U_mid psi_mid + U psi)/6 split into psi' and psi parts
        a[j] = (2.0 * next.U[j] + z.U[j]) / 6.0;
        b[j] = (next.U[j] + 2.0 * z.U[j]) / 6.0;
      } else {
        a[j] = b[j] = 0.25 * (next.U[j] + z.U[j]);
      }
    }
    solve_psi_stage(grid, tau, z, a, b, next.P, next.Q, ws);
    result.linear_solves += 2;

    residual = max_abs_difference(next, guess);
    std::swap(guess, next);
    if (!std::isfinite(residual)) break;
    if (residual <= cfg.solver.abs_tol) {
      result.state = std::move(guess);
      result.iterations = it;
      return result;
    }
  }
  throw NonConvergenceError("KGS coupled step: no convergence (residual " + std::to_string(residual) + ")",
                            guess.to_state().vector(), residual, cfg.solver.max_iter);
}

bool closed_form_average(const Grid1D& grid, std::span<const std::size_t> indices,
                         std::span<const double> a, std::span<const double> b, std::span<double> out) {
  const std::size_t n = grid.nodes();
  const double inv_h2 = 1.0 / (grid.h() * grid.h());
  auto block = [&](std::span<const double> z, std::size_t k) { return z.subspan(k * n, n); };
  const auto ua = block(a, 0), ub = block(b, 0), va = block(a, 1), vb = block(b, 1);
  const auto pa = block(a, 2), pb = block(b, 2), qa = block(a, 3), qb = block(b, 3);
  auto mean_d = [&](std::span<const double> xa, std::span<const double> xb, std::size_t j) {
    return 0.5 * (apply_d(xa, j, inv_h2) + apply_d(xb, j, inv_h2));
  };
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const std::size_t idx = indices[k];
    const std::size_t j = idx % n;
    switch (idx / n) {
      case 0:
        out[k] = -0.5 * mean_d(ua, ub, j) + 0.25 * (ua[j] + ub[j]) -
                 0.5 * (mean_square(pa[j], pb[j]) + mean_square(qa[j], qb[j]));
        break;
      case 1:
        out[k] = va[j] + vb[j];
        break;
      case 2:
        out[k] = -0.5 * mean_d(pa, pb, j) - mean_product(ua[j], ub[j], pa[j], pb[j]);
        break;
      case 3:
        out[k] = -0.5 * mean_d(qa, qb, j) - mean_product(ua[j], ub[j], qa[j], qb[j]);
        break;
      default:
        return false;
    }
  }
  return true;
}

}  // namespace

Grid1D::Grid1D(double left, double right, std::size_t j) : x_left(left), x_right(right), intervals(j) {
  if (j < 4) throw ContractViolation("Grid1D: need at least 4 intervals");
  if (!(right > left) || !std::isfinite(left) || !std::isfinite(right))
    throw ContractViolation("Grid1D: x_right must exceed x_left");
}

State KGSState::to_state() const {
  std::vector<double> flat;
  flat.reserve(4 * nodes());
  for (const auto* field : {&U, &V, &P, &Q}) flat.insert(flat.end(), field->begin(), field->end());
  return State(std::move(flat));
}

KGSState KGSState::from(std::span<const double> z) {
  if (z.size() % 4 != 0) throw ContractViolation("KGSState: flat length must be a multiple of 4");
  const std::size_t n = z.size() / 4;
  KGSState s;
  s.U.assign(z.begin(), z.begin() + n);
  s.V.assign(z.begin() + n, z.begin() + 2 * n);
  s.P.assign(z.begin() + 2 * n, z.begin() + 3 * n);
  s.Q.assign(z.begin() + 3 * n, z.end());
  return s;
}

void KGSState::validate() const {
  const std::size_t n = U.size();
  if (n < 2 || V.size() != n || P.size() != n || Q.size() != n)
    throw ContractViolation("KGSState: fields must share a length >= 2");
  for (const auto* field : {&U, &V, &P, &Q}) {
    if (!all_finite(*field)) throw ContractViolation("KGSState: non-finite entry");
    if (field->front() != 0.0 || field->back() != 0.0)
      throw ContractViolation("KGSState: Dirichlet boundary values must be zero");
  }
}

double max_abs_difference(const KGSState& a, const KGSState& b) {
  return std::max({pavf::max_abs_difference(a.U, b.U), pavf::max_abs_difference(a.V, b.V),
                   pavf::max_abs_difference(a.P, b.P), pavf::max_abs_difference(a.Q, b.Q)});
}

ExactValue kgs_exact(double x, double t, const SolitonParams& s) {
  const double one_minus_c2 = 1.0 - s.c * s.c;
  if (!(one_minus_c2 > 0.0)) throw ContractViolation("kgs_exact: |c| must be below 1");
  const double root = std::sqrt(one_minus_c2);
  const double theta = (x - s.c * t - s.x0) / (2.0 * root);
  const double sech = 1.0 / std::cosh(theta);
  const double sech2 = sech * sech;
  const double u_amp = 3.0 / (4.0 * one_minus_c2);
  const double phi_amp = 3.0 * std::sqrt(2.0) / (4.0 * root);
  const double omega = (1.0 - s.c * s.c + s.c * s.c * s.c * s.c) / (2.0 * one_minus_c2);
  ExactValue out;
  out.u = u_amp * sech2;
  out.v = 0.5 * u_amp * s.c * sech2 * std::tanh(theta) / root;
  out.phi = phi_amp * sech2 * std::polar(1.0, s.c * x + omega * t);
  return out;
}

numerics::TridiagonalMatrix build_laplacian(const Grid1D& grid) {
  const std::size_t n = grid.nodes();
  const double inv_h2 = 1.0 / (grid.h() * grid.h());
  numerics::TridiagonalMatrix d(n);
  for (std::size_t j = 1; j + 1 < n; ++j) {
    d.diag[j] = -2.0 * inv_h2;
    if (j >= 2) d.sub[j - 1] = inv_h2;
    if (j + 2 < n) d.super[j] = inv_h2;
  }
  return d;
}

InitialCondition kgs_initial(const Grid1D& grid, std::span<const SolitonParams> solitons) {
  const std::size_t n = grid.nodes();
  InitialCondition ic{KGSState(n), {}};
  auto& z = ic.state;
  for (const auto& s : solitons) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto e = kgs_exact(grid.x(j), 0.0, s);
      z.U[j] += e.u;
      z.V[j] += e.v;
      z.Q[j] += e.phi.real();
      z.P[j] += e.phi.imag();
    }
  }
  double leak = 0.0;
  for (const auto* field : {&z.U, &z.V, &z.P, &z.Q})
    leak = std::max({leak, std::abs(field->front()), std::abs(field->back())});
  if (leak > 1e-12) {
    std::ostringstream msg;
    msg << "soliton too close to the boundary: |boundary value| = " << leak << " truncated to 0";
    ic.warnings.push_back(msg.str());
  }
  for (auto* field : {&z.U, &z.V, &z.P, &z.Q}) field->front() = field->back() = 0.0;
  return ic;
}

KGSState kgs_exact_state(const Grid1D& grid, double t, const SolitonParams& s) {
  const std::size_t n = grid.nodes();
  KGSState z(n);
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const auto e = kgs_exact(grid.x(j), t, s);
    z.U[j] = e.u;
    z.V[j] = e.v;
    z.Q[j] = e.phi.real();
    z.P[j] = e.phi.imag();
  }
  return z;
}

double kgs_hamiltonian(const Grid1D& grid, const KGSState& z) {
  check_state(grid, z);
  const double inv_h2 = 1.0 / (grid.h() * grid.h());
  double coupling = 0.0, uu = 0.0, vv = 0.0;
  for (std::size_t j = 0; j < z.nodes(); ++j) {
    coupling += z.U[j] * (z.P[j] * z.P[j] + z.Q[j] * z.Q[j]);
    uu += z.U[j] * z.U[j];
    vv += z.V[j] * z.V[j];
  }
  return 0.25 * (-quadratic_form_d(z.P, inv_h2) - quadratic_form_d(z.Q, inv_h2) -
                 quadratic_form_d(z.U, inv_h2) + uu + 4.0 * vv - 2.0 * coupling);
}

double kgs_mass(const Grid1D& grid, const KGSState& z) {
  check_state(grid, z);
  double s = 0.0;
  for (std::size_t j = 0; j < z.nodes(); ++j) s += z.P[j] * z.P[j] + z.Q[j] * z.Q[j];
  return grid.h() * s;
}

HamiltonianSystem kgs_system(const Grid1D& grid) {
  const std::size_t n = grid.nodes();
  return HamiltonianSystem({
      .name = "kgs",
      .skew = SkewStructure::kgs_block(n),
      .hamiltonian = [grid](std::span<const double> z) { return kgs_hamiltonian(grid, KGSState::from(z)); },
      .gradient =
          [grid, n](std::span<const double> z, std::span<double> g) {
            if (z.size() != 4 * n || g.size() != 4 * n) throw ContractViolation("KGS gradient: size mismatch");
            const double inv_h2 = 1.0 / (grid.h() * grid.h());
            const auto U = z.subspan(0, n), V = z.subspan(n, n), P = z.subspan(2 * n, n), Q = z.subspan(3 * n, n);
            for (std::size_t j = 0; j < n; ++j) {
              g[j] = -0.5 * apply_d(U, j, inv_h2) + 0.5 * U[j] - 0.5 * (P[j] * P[j] + Q[j] * Q[j]);
              g[n + j] = 2.0 * V[j];
              g[2 * n + j] = -0.5 * apply_d(P, j, inv_h2) - U[j] * P[j];
              g[3 * n + j] = -0.5 * apply_d(Q, j, inv_h2) - U[j] * Q[j];
            }
          },
      .polynomial_degree = 3,
      .closed_form_average =
          [grid](std::span<const std::size_t> idx, std::span<const double> a, std::span<const double> b,
                 std::span<double> out) { return closed_form_average(grid, idx, a, b, out); },
  });
}

Grouping kgs_grouping(const Grid1D& grid) { return Grouping::contiguous_blocks(4 * grid.nodes(), grid.nodes()); }

numerics::TridiagonalMatrix u_stage_matrix(const Grid1D& grid, double tau) {
  const std::size_t n = grid.nodes();
  const auto d = build_laplacian(grid);
  const double t2 = 0.25 * tau * tau;
  numerics::TridiagonalMatrix m(n);
  for (std::size_t j = 1; j + 1 < n; ++j) m.diag[j] = 1.0 - t2 * (d.diag[j] - 1.0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    m.sub[j] = -t2 * d.sub[j];
    m.super[j] = -t2 * d.super[j];
  }
  m.diag.front() = m.diag.back() = 1.0;
  if (!m.strictly_diagonally_dominant())
    throw SingularMatrixError("KGS U-stage matrix is not diagonally dominant");
  return m;
}

numerics::ComplexTridiagonalMatrix psi_stage_matrix(const Grid1D& grid, double tau,
                                                    std::span<const double> weight) {
  const std::size_t n = grid.nodes();
  if (weight.size() != n) throw ContractViolation("psi_stage_matrix: weight length mismatch");
  const auto d = build_laplacian(grid);
  numerics::ComplexTridiagonalMatrix m(n);
  for (std::size_t j = 1; j + 1 < n; ++j) m.diag[j] = 1.0 + kI * tau * (0.25 * d.diag[j] + weight[j]);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    m.sub[j] = kI * tau * 0.25 * d.sub[j];
    m.super[j] = kI * tau * 0.25 * d.super[j];
  }
  m.diag.front() = m.diag.back() = 1.0;
  return m;
}

KGSStepOutcome step_pavf(const Grid1D& grid, const StepperConfig& cfg, const KGSState& z) {
  cfg.validate();
  check_state(grid, z);
  Workspace ws;
  return {pavf_substep(grid, cfg.tau, z, ws), 0, 2};
}

KGSStepOutcome step_pavf_adjoint(const Grid1D& grid, const StepperConfig& cfg, const KGSState& z) {
  cfg.validate();
  check_state(grid, z);
  Workspace ws;
  return {adjoint_substep(grid, cfg.tau, z, ws), 0, 2};
}

KGSStepOutcome step_pavf_c(const Grid1D& grid, const StepperConfig& cfg, const KGSState& z) {
  cfg.validate();
  check_state(grid, z);
  Workspace ws;
  const double half = 0.5 * cfg.tau;
  const KGSState star = pavf_substep(grid, half, z, ws);
  return {adjoint_substep(grid, half, star, ws), 0, 4};
}

KGSStepOutcome step_avf(const Grid1D& grid, const StepperConfig& cfg, const KGSState& z) {
  cfg.validate();
  check_state(grid, z);
  return coupled_step(CoupledScheme::avf, grid, cfg, z);
}

KGSStepOutcome step_pavf_p(const Grid1D& grid, const StepperConfig& cfg, const KGSState& z) {
  cfg.validate();
  check_state(grid, z);
  return coupled_step(CoupledScheme::plus, grid, cfg, z);
}

KGSStepOutcome step(Method method, const Grid1D& grid, const StepperConfig& cfg, const KGSState& z) {
  switch (method) {
    case Method::avf: return step_avf(grid, cfg, z);
    case Method::pavf: return step_pavf(grid, cfg, z);
    case Method::pavf_adjoint: return step_pavf_adjoint(grid, cfg, z);
    case Method::pavf_c: return step_pavf_c(grid, cfg, z);
    case Method::pavf_p: return step_pavf_p(grid, cfg, z);
  }
  throw ContractViolation("KGS step: unknown method");
}

FieldError solution_error(const Grid1D& grid, const KGSState& numeric, const KGSState& exact) {
  if (numeric.nodes() != exact.nodes()) throw ContractViolation("solution_error: length mismatch");
  FieldError err;
  const std::vector<double>* num[] = {&numeric.U, &numeric.V, &numeric.P, &numeric.Q};
  const std::vector<double>* ref[] = {&exact.U, &exact.V, &exact.P, &exact.Q};
  for (int f = 0; f < 4; ++f) {
    double sq = 0.0, mx = 0.0;
    for (std::size_t j = 0; j < numeric.nodes(); ++j) {
      const double d = (*num[f])[j] - (*ref[f])[j];
      sq += d * d;
      mx = std::max(mx, std::abs(d));
    }
    err.l2 += std::sqrt(grid.h() * sq);
    err.linf += mx;
  }
  return err;
}

StepFunction make_stepper(Method method, const Grid1D& grid, const StepperConfig& cfg) {
  cfg.validate();
  return [method, grid, cfg](const State& z) {
    auto out = step(method, grid, cfg, KGSState::from(z));
    return StepOutcome{out.state.to_state(), out.iterations};
  };
}

}  // namespace pavf::kgs
