#include "pavf/harness/convergence.hpp"

#include <algorithm>
#include <cmath>

#include "pavf/errors.hpp"

namespace pavf::harness {

double observed_order(double step1, double error1, double step2, double error2) {
  if (!(step1 > 0 && step2 > 0 && error1 > 0 && error2 > 0) || step1 == step2)
    throw ContractViolation("observed_order: steps and errors must be positive and distinct");
  return std::log(error1 / error2) / std::log(step1 / step2);
}

double fitted_order(std::span<const double> steps, std::span<const double> errors) {
  if (steps.size() != errors.size() || steps.size() < 2)
    throw ContractViolation("fitted_order: need at least two (step, error) pairs");
  const double n = static_cast<double>(steps.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    if (!(steps[i] > 0 && errors[i] > 0)) throw ContractViolation("fitted_order: non-positive entry");
    const double x = std::log(steps[i]), y = std::log(errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw ContractViolation("fitted_order: steps must not all coincide");
  return (n * sxy - sx * sy) / denom;
}

std::vector<ConvergenceRow> convergence_table(std::span<const double> steps,
                                              std::span<const double> errors_l2,
                                              std::span<const double> errors_linf) {
  if (steps.size() != errors_l2.size() || steps.size() != errors_linf.size())
    throw ContractViolation("convergence_table: column lengths differ");
  for (std::size_t i = 1; i < steps.size(); ++i)
    if (!(steps[i] < steps[i - 1])) throw ContractViolation("convergence_table: steps must decrease");
  std::vector<ConvergenceRow> table;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    ConvergenceRow row{steps[i], errors_l2[i], errors_linf[i], std::nullopt, std::nullopt};
    if (i > 0) {
      row.order_l2 = observed_order(steps[i - 1], errors_l2[i - 1], steps[i], errors_l2[i]);
      row.order_linf = observed_order(steps[i - 1], errors_linf[i - 1], steps[i], errors_linf[i]);
    }
    table.push_back(row);
  }
  return table;
}

namespace {

template <typename Pick>
double fit_column(std::span<const ConvergenceRow> table, Pick pick) {
  std::vector<double> s, e;
  for (const auto& r : table) {
    s.push_back(r.step);
    e.push_back(pick(r));
  }
  return fitted_order(s, e);
}

}  // namespace

double fitted_order_l2(std::span<const ConvergenceRow> table) {
  return fit_column(table, [](const ConvergenceRow& r) { return r.error_l2; });
}

double fitted_order_linf(std::span<const ConvergenceRow> table) {
  return fit_column(table, [](const ConvergenceRow& r) { return r.error_linf; });
}

std::size_t step_count(double t_final, double tau) {
  if (!(tau > 0.0) || !(t_final >= 0.0)) throw ContractViolation("step_count: need tau > 0 and t_final >= 0");
  return static_cast<std::size_t>(std::llround(t_final / tau));
}

namespace {

kgs::KGSState run_kgs(Method method, const kgs::Grid1D& grid, double tau, std::size_t steps,
                      const KgsAccuracySetup& setup) {
  const kgs::SolitonParams solitons[] = {setup.soliton};
  kgs::KGSState z = kgs::kgs_initial(grid, solitons).state;
  const StepperConfig cfg{tau, setup.solver};
  for (std::size_t n = 0; n < steps; ++n) z = kgs::step(method, grid, cfg, z).state;
  return z;
}

std::size_t intervals_for(double length, double h) {
  const double ratio = length / h;
  const auto j = static_cast<std::size_t>(std::llround(ratio));
  if (std::abs(ratio - static_cast<double>(j)) > 1e-9 * ratio)
    throw ContractViolation("spatial step does not divide the domain length");
  return j;
}

}  // namespace

std::vector<ConvergenceRow> kgs_temporal_convergence(Method method, std::span<const double> taus, double h,
                                                     const KgsAccuracySetup& setup) {
  const kgs::Grid1D grid(setup.x_left, setup.x_right, intervals_for(setup.x_right - setup.x_left, h));
  std::vector<double> l2, linf;
  for (double tau : taus) {
    const std::size_t steps = step_count(setup.t_final, tau);
    const auto z = run_kgs(method, grid, tau, steps, setup);
    const auto exact = kgs::kgs_exact_state(grid, static_cast<double>(steps) * tau, setup.soliton);
    const auto err = kgs::solution_error(grid, z, exact);
    l2.push_back(err.l2);
    linf.push_back(err.linf);
  }
  return convergence_table(taus, l2, linf);
}

std::vector<ConvergenceRow> kgs_spatial_convergence(Method method, std::span<const double> hs, double tau,
                                                    const KgsAccuracySetup& setup) {
  std::vector<double> l2, linf;
  const std::size_t steps = step_count(setup.t_final, tau);
  for (double h : hs) {
    const kgs::Grid1D grid(setup.x_left, setup.x_right, intervals_for(setup.x_right - setup.x_left, h));
    const auto z = run_kgs(method, grid, tau, steps, setup);
    const auto exact = kgs::kgs_exact_state(grid, static_cast<double>(steps) * tau, setup.soliton);
    const auto err = kgs::solution_error(grid, z, exact);
    l2.push_back(err.l2);
    linf.push_back(err.linf);
  }
  return convergence_table(hs, l2, linf);
}

std::vector<ConvergenceRow> hh_temporal_convergence(Method method, std::span<const double> taus,
                                                    const HhAccuracySetup& setup) {
  if (taus.empty()) throw ContractViolation("hh_temporal_convergence: empty step list");
  if (setup.reference_refinement < 1) throw ContractViolation("hh_temporal_convergence: bad refinement");
  const auto z0 = henon_heiles::hh_initial_state(setup.init);
  auto run = [&](Method m, double tau) {
    const std::size_t steps = step_count(setup.t_final, tau);
    if (std::abs(static_cast<double>(steps) * tau - setup.t_final) > 1e-9 * setup.t_final)
      throw ContractViolation("hh_temporal_convergence: tau must divide t_final");
    henon_heiles::HHState z = z0;
    const StepperConfig cfg{tau, setup.solver};
    for (std::size_t n = 0; n < steps; ++n) z = henon_heiles::step(m, cfg, z).state;
    return z;
  };
  const double tau_min = *std::min_element(taus.begin(), taus.end());
  const auto ref = run(Method::pavf_c, tau_min / setup.reference_refinement);
  std::vector<double> l2, linf;
  for (double tau : taus) {
    const auto z = run(method, tau);
    const double d[] = {z.q1 - ref.q1, z.q2 - ref.q2, z.p1 - ref.p1, z.p2 - ref.p2};
    double sq = 0.0, mx = 0.0;
    for (double v : d) {
      sq += v * v;
      mx = std::max(mx, std::abs(v));
    }
    l2.push_back(std::sqrt(sq));
    linf.push_back(mx);
  }
  return convergence_table(taus, l2, linf);
}

}  // namespace pavf::harness
