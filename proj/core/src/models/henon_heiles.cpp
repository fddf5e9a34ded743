#include "pavf/models/henon_heiles.hpp"

#include <array>
#include <cmath>
#include <string>

#include "pavf/errors.hpp"
#include "pavf/numerics/nonlinear_solve.hpp"

namespace pavf::henon_heiles {

namespace {

using Vec4 = std::array<double, 4>;
constexpr double kThird = 1.0 / 3.0;

double distance(const Vec4& a, const Vec4& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < 4; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double scalar_distance(double a, double b) { return std::abs(a - b); }

// Means of products of two coordinates that vary linearly along a segment.
double mean_product(double xa, double xb, double ya, double yb) {
  return (xa * ya + xb * yb) / 3.0 + (xa * yb + xb * ya) / 6.0;
}
double mean_square(double xa, double xb) { return (xa * xa + xa * xb + xb * xb) / 3.0; }

bool closed_form_average(std::span<const std::size_t> indices, std::span<const double> a,
                         std::span<const double> b, std::span<double> out) {
  for (std::size_t k = 0; k < indices.size(); ++k) {
    switch (indices[k]) {
      case 0:
        out[k] = 0.5 * (a[0] + b[0]) + 2.0 * mean_product(a[0], b[0], a[1], b[1]);
        break;
      case 1:
        out[k] = 0.5 * (a[1] + b[1]) + mean_square(a[0], b[0]) - mean_square(a[1], b[1]);
        break;
      case 2:
        out[k] = 0.5 * (a[2] + b[2]);
        break;
      case 3:
        out[k] = 0.5 * (a[3] + b[3]);
        break;
      default:
        return false;
    }
  }
  return true;
}

void check_finite(const HHState& z) {
  if (!std::isfinite(z.q1) || !std::isfinite(z.q2) || !std::isfinite(z.p1) || !std::isfinite(z.p2))
    throw ContractViolation("Henon-Heiles: non-finite state");
}

// (q1, p1) update of the partitioned schemes: linear in (q1', p1') once q2 on
// the right-hand side is known.
//   q1' - q1 = (tau/2)(p1' + p1),   p1' - p1 = -tau (1/2 + q2_frozen)(q1' + q1)
void linear_q1p1(double tau, double q2_frozen, double q1, double p1, double& q1_new, double& p1_new) {
  const double a = 0.5 * tau;
  const double b = tau * (0.5 + q2_frozen);
  const double denom = 1.0 + a * b;
  if (denom == 0.0) throw SingularMatrixError("Henon-Heiles (q1, p1) elimination: singular 2x2 system");
  q1_new = (q1 * (1.0 - a * b) + 2.0 * a * p1) / denom;
  p1_new = p1 - b * (q1 + q1_new);
}

// (q2, p2) update with q1-dependent forcing frozen:
//   q2' - q2 = (tau/2)(p2' + p2)
//   p2' - p2 = tau [ -(q2' + q2)/2 - s + (q2'^2 + q2' q2 + q2^2)/3 ]
// where s is the mean of q1^2 over the relevant leg. Eliminating p2' leaves a
// scalar equation for q2', solved by fixed-point iteration.
std::size_t implicit_q2p2(const StepperConfig& cfg, double s, double q2, double p2, double& q2_new,
                          double& p2_new) {
  const double tau = cfg.tau;
  auto forcing = [&](double x) { return -(0.5 * (x + q2) + s) + (x * x + x * q2 + q2 * q2) * kThird; };
  // same map as q2 + tau p2 + (tau^2/2) forcing(x), expanded to c0 + x (c1 + c2 x)
  const double half_tau2 = 0.5 * tau * tau;
  const double c0 = q2 + tau * p2 + half_tau2 * (q2 * q2 * kThird - 0.5 * q2 - s);
  const double c1 = half_tau2 * (q2 * kThird - 0.5);
  const double c2 = half_tau2 * kThird;
  auto map = [=](double x) { return c0 + x * (c1 + c2 * x); };
  const auto [root, iters] = numerics::iterate_fixed_point(map, q2, scalar_distance, cfg.solver);
  q2_new = root;
  p2_new = p2 + tau * forcing(root);
  return iters;
}

}  // namespace

HHState HHState::from(std::span<const double> z) {
  if (z.size() != 4) throw ContractViolation("HHState: expected 4 components");
  return {z[0], z[1], z[2], z[3]};
}

double hamiltonian(const HHState& z) noexcept {
  return 0.5 * (z.q1 * z.q1 + z.q2 * z.q2 + z.p1 * z.p1 + z.p2 * z.p2) + z.q1 * z.q1 * z.q2 -
         z.q2 * z.q2 * z.q2 / 3.0;
}

double hamiltonian(std::span<const double> z) { return hamiltonian(HHState::from(z)); }

void gradient(std::span<const double> z, std::span<double> out) {
  if (z.size() != 4 || out.size() != 4) throw ContractViolation("Henon-Heiles gradient: expected 4 components");
  const double q1 = z[0], q2 = z[1];
  out[0] = q1 + 2.0 * q1 * q2;
  out[1] = q2 + q1 * q1 - q2 * q2;
  out[2] = z[2];
  out[3] = z[3];
}

HamiltonianSystem hh_system() {
  return HamiltonianSystem({
      .name = "henon-heiles",
      .skew = SkewStructure::canonical(2),
      .hamiltonian = [](std::span<const double> z) { return hamiltonian(z); },
      .gradient = [](std::span<const double> z, std::span<double> g) { gradient(z, g); },
      .polynomial_degree = 3,
      .closed_form_average = closed_form_average,
  });
}

Grouping hh_grouping() { return Grouping::singletons(4); }

HHState hh_initial_state(const HHInit& init) {
  const double potential = 0.5 * (init.q1 * init.q1 + init.q2 * init.q2 + init.p2 * init.p2) +
                           init.q1 * init.q1 * init.q2 - init.q2 * init.q2 * init.q2 / 3.0;
  const double twice_kinetic = 2.0 * (init.energy - potential);
  // Exact-zero radicands (the chaotic orbit) come out as tiny negatives.
  if (twice_kinetic < -1e-14)
    throw InfeasibleEnergyError("hh_initial_state: energy " + std::to_string(init.energy) +
                                " is below the potential at the given coordinates");
  return {init.q1, init.q2, std::sqrt(std::max(0.0, twice_kinetic)), init.p2};
}

HHStepOutcome step_pavf(const StepperConfig& cfg, const HHState& z) {
  cfg.validate();
  check_finite(z);
  HHStepOutcome out;
  auto& n = out.state;
  linear_q1p1(cfg.tau, z.q2, z.q1, z.p1, n.q1, n.p1);
  out.iterations = implicit_q2p2(cfg, n.q1 * n.q1, z.q2, z.p2, n.q2, n.p2);
  return out;
}

HHStepOutcome step_pavf_adjoint(const StepperConfig& cfg, const HHState& z) {
  cfg.validate();
  check_finite(z);
  HHStepOutcome out;
  auto& n = out.state;
  out.iterations = implicit_q2p2(cfg, z.q1 * z.q1, z.q2, z.p2, n.q2, n.p2);
  linear_q1p1(cfg.tau, n.q2, z.q1, z.p1, n.q1, n.p1);
  return out;
}

HHStepOutcome step_pavf_c(const StepperConfig& cfg, const HHState& z) {
  StepperConfig half = cfg;
  half.tau = 0.5 * cfg.tau;
  const auto first = step_pavf(half, z);
  auto second = step_pavf_adjoint(half, first.state);
  second.iterations += first.iterations;
  second.q1p1_iterations += first.q1p1_iterations;
  return second;
}

HHStepOutcome step_avf(const StepperConfig& cfg, const HHState& z) {
  cfg.validate();
  check_finite(z);
  const double tau = cfg.tau;
  const double q1 = z.q1, q2 = z.q2, p1 = z.p1, p2 = z.p2;
  auto map = [&](const Vec4& x) -> Vec4 {
    const double Q1 = x[0], Q2 = x[1], P1 = x[2], P2 = x[3];
    const double m1 = 0.5 * (Q1 + q1), m2 = 0.5 * (Q2 + q2);
    return {q1 + 0.5 * tau * (P1 + p1), q2 + 0.5 * tau * (P2 + p2),
            p1 - tau * (m1 + (Q1 * Q2 + 4.0 * m1 * m2 + q1 * q2) * kThird),
            p2 + tau * (-m2 + (Q2 * Q2 + Q2 * q2 + q2 * q2 - Q1 * Q1 - Q1 * q1 - q1 * q1) * kThird)};
  };
  const auto [x, iters] = numerics::iterate_fixed_point(map, Vec4{q1, q2, p1, p2}, distance, cfg.solver);
  HHStepOutcome out{{x[0], x[1], x[2], x[3]}, iters, iters};
  return out;
}

HHStepOutcome step_pavf_p(const StepperConfig& cfg, const HHState& z) {
  cfg.validate();
  check_finite(z);
  const double tau = cfg.tau;
  const double q1 = z.q1, q2 = z.q2, p1 = z.p1, p2 = z.p2;
  auto map = [&](const Vec4& x) -> Vec4 {
    const double Q1 = x[0], Q2 = x[1], P1 = x[2], P2 = x[3];
    return {q1 + 0.5 * tau * (P1 + p1), q2 + 0.5 * tau * (P2 + p2),
            p1 - 0.5 * tau * ((Q1 + q1) + (Q1 + q1) * (Q2 + q2)),
            p2 - 0.5 * tau * (Q2 + q2 + Q1 * Q1 + q1 * q1) + tau * (Q2 * Q2 + Q2 * q2 + q2 * q2) * kThird};
  };
  const auto [x, iters] = numerics::iterate_fixed_point(map, Vec4{q1, q2, p1, p2}, distance, cfg.solver);
  HHStepOutcome out{{x[0], x[1], x[2], x[3]}, iters, iters};
  return out;
}

HHStepOutcome step(Method method, const StepperConfig& cfg, const HHState& z) {
  switch (method) {
    case Method::avf: return step_avf(cfg, z);
    case Method::pavf: return step_pavf(cfg, z);
    case Method::pavf_adjoint: return step_pavf_adjoint(cfg, z);
    case Method::pavf_c: return step_pavf_c(cfg, z);
    case Method::pavf_p: return step_pavf_p(cfg, z);
  }
  throw ContractViolation("Henon-Heiles step: unknown method");
}

StepFunction make_stepper(Method method, const StepperConfig& cfg) {
  cfg.validate();
  return [method, cfg](const State& z) {
    const auto out = step(method, cfg, HHState::from(z));
    return StepOutcome{out.state.to_state(), out.iterations};
  };
}

std::vector<PoincarePoint> poincare_section(std::span<const StepRecord> records) {
  std::vector<PoincarePoint> points;
  for (std::size_t n = 0; n + 1 < records.size(); ++n) {
    const auto& sa = records[n].state;
    const auto& sb = records[n + 1].state;
    if (sa.size() != 4 || sb.size() != 4) continue;
    const double a = sa[0], b = sb[0];
    if ((a < 0.0) == (b < 0.0)) continue;
    const double s = a / (a - b);
    auto lerp = [s](double x, double y) { return x + s * (y - x); };
    if (!(lerp(sa[2], sb[2]) > 0.0)) continue;
    points.push_back({lerp(sa[1], sb[1]), lerp(sa[3], sb[3]), lerp(records[n].time, records[n + 1].time)});
  }
  return points;
}

}  // namespace pavf::henon_heiles
