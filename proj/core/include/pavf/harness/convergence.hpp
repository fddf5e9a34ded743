#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pavf/integrators.hpp"
#include "pavf/models/henon_heiles.hpp"
#include "pavf/models/kgs.hpp"

namespace pavf::harness {

struct ConvergenceRow {
  double step = 0.0;  // tau or h
  double error_l2 = 0.0;
  double error_linf = 0.0;
  std::optional<double> order_l2;  // against the previous row
  std::optional<double> order_linf;
};

/// ln(e1/e2) / ln(s1/s2)
double observed_order(double step1, double error1, double step2, double error2);

/// Least-squares slope of ln(error) against ln(step).
double fitted_order(std::span<const double> steps, std::span<const double> errors);

std::vector<ConvergenceRow> convergence_table(std::span<const double> steps,
                                              std::span<const double> errors_l2,
                                              std::span<const double> errors_linf);

double fitted_order_l2(std::span<const ConvergenceRow> table);
double fitted_order_linf(std::span<const ConvergenceRow> table);

/// One-soliton accuracy runs against the exact solution.
struct KgsAccuracySetup {
  double x_left = -10.0;
  double x_right = 10.0;
  kgs::SolitonParams soliton{-0.8, 0.0};
  double t_final = 1.0;
  numerics::NonlinearSolveConfig solver{};
};

std::vector<ConvergenceRow> kgs_temporal_convergence(Method method, std::span<const double> taus, double h,
                                                     const KgsAccuracySetup& setup = {});
std::vector<ConvergenceRow> kgs_spatial_convergence(Method method, std::span<const double> hs, double tau,
                                                    const KgsAccuracySetup& setup = {});

/// Henon-Heiles has no closed-form solution: errors are measured against a
/// PAVF-C run at tau_min / reference_refinement.
struct HhAccuracySetup {
  henon_heiles::HHInit init = henon_heiles::kBoxOrbit;
  double t_final = 2.0;
  int reference_refinement = 64;
  numerics::NonlinearSolveConfig solver{};
};

std::vector<ConvergenceRow> hh_temporal_convergence(Method method, std::span<const double> taus,
                                                    const HhAccuracySetup& setup = {});

/// round(t_final / tau). Callers report the time actually reached.
std::size_t step_count(double t_final, double tau);

}  // namespace pavf::harness
