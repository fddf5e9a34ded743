#pragma once

#include <cmath>
#include <random>
#include <span>
#include <vector>

#include "pavf/hamiltonian_system.hpp"
#include "pavf/skew_structure.hpp"
#include "pavf/state.hpp"

namespace testing_support {

inline double max_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// H = (q^2 + p^2)/2 on R^2.
inline pavf::HamiltonianSystem oscillator() {
  return pavf::HamiltonianSystem({
      .name = "oscillator",
      .skew = pavf::SkewStructure::canonical(1),
      .hamiltonian = [](std::span<const double> z) { return 0.5 * (z[0] * z[0] + z[1] * z[1]); },
      .gradient =
          [](std::span<const double> z, std::span<double> g) {
            g[0] = z[0];
            g[1] = z[1];
          },
      .polynomial_degree = 2,
      .closed_form_average = {},
  });
}

// H = |z|^2 / 2 in any even dimension.
inline pavf::HamiltonianSystem half_norm(std::size_t half) {
  return pavf::HamiltonianSystem({
      .name = "half-norm",
      .skew = pavf::SkewStructure::canonical(half),
      .hamiltonian =
          [](std::span<const double> z) {
            double s = 0.0;
            for (double v : z) s += v * v;
            return 0.5 * s;
          },
      .gradient =
          [](std::span<const double> z, std::span<double> g) {
            for (std::size_t i = 0; i < z.size(); ++i) g[i] = z[i];
          },
      .polynomial_degree = 2,
      .closed_form_average = {},
  });
}

// Separable H = p^4/4 + q^4/4 + q^2/2, z = (q, p).
inline pavf::HamiltonianSystem separable_quartic() {
  return pavf::HamiltonianSystem({
      .name = "separable-quartic",
      .skew = pavf::SkewStructure::canonical(1),
      .hamiltonian =
          [](std::span<const double> z) {
            const double q = z[0], p = z[1];
            return 0.25 * p * p * p * p + 0.25 * q * q * q * q + 0.5 * q * q;
          },
      .gradient =
          [](std::span<const double> z, std::span<double> g) {
            g[0] = z[0] * z[0] * z[0] + z[0];
            g[1] = z[1] * z[1] * z[1];
          },
      .polynomial_degree = 4,
      .closed_form_average = {},
  });
}

inline std::vector<double> uniform(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

}  // namespace testing_support
