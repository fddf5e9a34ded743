#pragma once

#include <functional>
#include <vector>

namespace pavf::numerics {

struct QuadratureNode {
  double node;    // in [0, 1]
  double weight;  // weights sum to 1
};

/// Gauss-Legendre rule mapped to [0, 1]; exact for polynomials of degree
/// <= 2*order - 1. Rules are computed once per order and cached.
const std::vector<QuadratureNode>& gauss_legendre_nodes(int order);

/// Integral over [0, 1] of f with the order-point rule.
double integrate_unit_interval(const std::function<double(double)>& f, int order);

}  // namespace pavf::numerics
