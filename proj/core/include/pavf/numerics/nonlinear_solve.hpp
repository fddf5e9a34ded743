#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pavf/errors.hpp"

namespace pavf::numerics {

enum class SolveMode { fixed_point, newton };

struct NonlinearSolveConfig {
  double abs_tol = 1e-14;  // max-norm
  std::size_t max_iter = 500;
  SolveMode mode = SolveMode::fixed_point;

  void validate() const;
};

/// out = map(in); both spans have the problem dimension.
using VectorMap = std::function<void(std::span<const double> in, std::span<double> out)>;

struct FixedPointResult {
  std::vector<double> solution;
  std::size_t iterations = 0;
  double residual = 0.0;  // max-norm of the last update
};

/// Solves z = map(z) starting from `guess`.
///
/// In fixed-point mode the iteration z <- map(z) stops once the update is
/// <= abs_tol in the max norm. Newton mode applies Newton's method to
/// z - map(z) = 0 with a forward-difference Jacobian and stops on the same
/// criterion. Throws NonConvergenceError after max_iter iterations.
FixedPointResult fixed_point_solve(const VectorMap& map, std::span<const double> guess,
                                   const NonlinearSolveConfig& cfg = {});

/// Scalar version of the fixed-point iteration.
struct ScalarFixedPointResult {
  double solution = 0.0;
  std::size_t iterations = 0;
};
ScalarFixedPointResult scalar_fixed_point(const std::function<double(double)>& map, double guess,
                                          const NonlinearSolveConfig& cfg = {});

/// Allocation-free fixed-point loop for small fixed-size unknowns (scalars,
/// std::array). `distance(a, b)` must return the max-norm of a - b.
template <typename T, typename Map, typename Distance>
std::pair<T, std::size_t> iterate_fixed_point(Map&& map, T guess, Distance&& distance,
                                              const NonlinearSolveConfig& cfg) {
  T x = guess;
  double residual = 0.0;
  for (std::size_t it = 1; it <= cfg.max_iter; ++it) {
    T next = map(x);
    residual = distance(next, x);
    x = next;
    if (!(residual <= cfg.abs_tol)) {
      if (residual != residual) break;  // NaN
      continue;
    }
    return {x, it};
  }
  throw NonConvergenceError("fixed-point iteration did not converge (residual " +
                                std::to_string(residual) + ")",
                            {}, residual, cfg.max_iter);
}

}  // namespace pavf::numerics
