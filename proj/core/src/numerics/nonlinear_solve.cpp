#include "pavf/numerics/nonlinear_solve.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <string>

#include "pavf/errors.hpp"
#include "pavf/state.hpp"

namespace pavf::numerics {

void NonlinearSolveConfig::validate() const {
  if (!(abs_tol > 0.0)) throw ContractViolation("NonlinearSolveConfig: abs_tol must be positive");
  if (max_iter < 1) throw ContractViolation("NonlinearSolveConfig: max_iter must be >= 1");
}

namespace {

[[noreturn]] void fail(const char* what, std::vector<double> last, double residual, std::size_t iters) {
  throw NonConvergenceError(std::string(what) + ": no convergence after " + std::to_string(iters) +
                                " iterations (residual " + std::to_string(residual) + ")",
                            std::move(last), residual, iters);
}

FixedPointResult picard(const VectorMap& map, std::span<const double> guess,
                        const NonlinearSolveConfig& cfg) {
  std::vector<double> current(guess.begin(), guess.end());
  std::vector<double> next(current.size());
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t it = 1; it <= cfg.max_iter; ++it) {
    map(current, next);
    residual = max_abs_difference(current, next);
    current.swap(next);
    if (!std::isfinite(residual)) fail("fixed_point_solve", std::move(current), residual, it);
    if (residual <= cfg.abs_tol) return {std::move(current), it, residual};
  }
  fail("fixed_point_solve", std::move(current), residual, cfg.max_iter);
}

FixedPointResult newton(const VectorMap& map, std::span<const double> guess,
                        const NonlinearSolveConfig& cfg) {
  const std::size_t m = guess.size();
  std::vector<double> z(guess.begin(), guess.end());
  std::vector<double> mapped(m), probe(m), mapped_probe(m);
  Eigen::MatrixXd jac(m, m);
  Eigen::VectorXd rhs(m);
  double residual = std::numeric_limits<double>::infinity();
  const double eps = std::sqrt(std::numeric_limits<double>::epsilon());
  for (std::size_t it = 1; it <= cfg.max_iter; ++it) {
    map(z, mapped);
    for (std::size_t i = 0; i < m; ++i) rhs[static_cast<Eigen::Index>(i)] = mapped[i] - z[i];
    // Jacobian of F(z) = z - map(z) by forward differences.
    for (std::size_t j = 0; j < m; ++j) {
      probe = z;
      const double dz = eps * std::max(1.0, std::abs(z[j]));
      probe[j] += dz;
      map(probe, mapped_probe);
      for (std::size_t i = 0; i < m; ++i) {
        const double f_probe = probe[i] - mapped_probe[i];
        const double f_base = z[i] - mapped[i];
        jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (f_probe - f_base) / dz;
      }
    }
    const Eigen::VectorXd delta = jac.partialPivLu().solve(rhs);
    residual = delta.cwiseAbs().maxCoeff();
    for (std::size_t i = 0; i < m; ++i) z[i] += delta[static_cast<Eigen::Index>(i)];
    if (!std::isfinite(residual)) fail("newton_solve", std::move(z), residual, it);
    if (residual <= cfg.abs_tol) return {std::move(z), it, residual};
  }
  fail("newton_solve", std::move(z), residual, cfg.max_iter);
}

}  // namespace

FixedPointResult fixed_point_solve(const VectorMap& map, std::span<const double> guess,
                                   const NonlinearSolveConfig& cfg) {
  cfg.validate();
  return cfg.mode == SolveMode::newton ? newton(map, guess, cfg) : picard(map, guess, cfg);
}

ScalarFixedPointResult scalar_fixed_point(const std::function<double(double)>& map, double guess,
                                          const NonlinearSolveConfig& cfg) {
  double x = guess;
  for (std::size_t it = 1; it <= cfg.max_iter; ++it) {
    const double next = map(x);
    const double residual = std::abs(next - x);
    x = next;
    if (!std::isfinite(residual)) fail("scalar_fixed_point", {x}, residual, it);
    if (residual <= cfg.abs_tol) return {x, it};
  }
  fail("scalar_fixed_point", {x}, std::abs(map(x) - x), cfg.max_iter);
}

}  // namespace pavf::numerics
