#include "pavf/numerics/gauss_legendre.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "pavf/errors.hpp"

namespace pavf::numerics {

namespace {

// Newton iteration on P_n for each root in (-1, 1), mapped to [0, 1].
std::vector<QuadratureNode> compute_rule(int order) {
  const int n = order;
  std::vector<QuadratureNode> rule(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    // Symmetric pair on [-1, 1] -> [0, 1]; weights halve.
    rule[static_cast<std::size_t>(i)] = {0.5 * (1.0 - x), 0.5 * w};
    rule[static_cast<std::size_t>(n - 1 - i)] = {0.5 * (1.0 + x), 0.5 * w};
  }
  if (n % 2 == 1) rule[static_cast<std::size_t>(n / 2)].node = 0.5;
  return rule;
}

}  // namespace

const std::vector<QuadratureNode>& gauss_legendre_nodes(int order) {
  if (order < 1) throw ContractViolation("gauss_legendre_nodes: order must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::vector<QuadratureNode>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, order == 1 ? std::vector<QuadratureNode>{{0.5, 1.0}}
                                                              : compute_rule(order)).first;
  return it->second;
}

double integrate_unit_interval(const std::function<double(double)>& f, int order) {
  double s = 0.0;
  for (const auto& [x, w] : gauss_legendre_nodes(order)) s += w * f(x);
  return s;
}

}  // namespace pavf::numerics
