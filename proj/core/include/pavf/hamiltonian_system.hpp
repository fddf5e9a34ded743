#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pavf/skew_structure.hpp"
#include "pavf/state.hpp"

namespace pavf {

using ScalarField = std::function<double(std::span<const double>)>;
using GradientField = std::function<void(std::span<const double> z, std::span<double> grad)>;

/// Closed-form mean of the partial gradient dH/dz_i, i in `indices`, along the
/// straight segment from `start` to `end` (both full states). The result is
/// written to `out` (length indices.size()). Returning false defers to
/// quadrature.
using SegmentAverage = std::function<bool(std::span<const std::size_t> indices,
                                          std::span<const double> start,
                                          std::span<const double> end,
                                          std::span<double> out)>;

/// z' = S grad H(z) with constant skew S.
class HamiltonianSystem {
 public:
  struct Definition {
    std::string name;
    SkewStructure skew;
    ScalarField hamiltonian;
    GradientField gradient;
    std::optional<int> polynomial_degree;
    SegmentAverage closed_form_average;
  };

  explicit HamiltonianSystem(Definition def);

  const std::string& name() const noexcept { return def_.name; }
  std::size_t dimension() const noexcept { return def_.skew.dimension(); }
  const SkewStructure& skew() const noexcept { return def_.skew; }
  std::optional<int> polynomial_degree() const noexcept { return def_.polynomial_degree; }
  bool has_closed_form_average() const noexcept { return static_cast<bool>(def_.closed_form_average); }

  /// Gauss-Legendre node count for segment averages: ceil(d/2) for a declared
  /// polynomial degree d, 8 otherwise.
  int quadrature_order() const noexcept;

  double hamiltonian(std::span<const double> z) const { return def_.hamiltonian(z); }
  void gradient(std::span<const double> z, std::span<double> out) const { def_.gradient(z, out); }
  bool closed_form_average(std::span<const std::size_t> indices, std::span<const double> start,
                           std::span<const double> end, std::span<double> out) const {
    return def_.closed_form_average && def_.closed_form_average(indices, start, end, out);
  }

  /// Copy of this system that always integrates segment averages by
  /// quadrature. Useful as an independent route in tests.
  HamiltonianSystem without_closed_form() const;

  HamiltonianSystem with_closed_form(SegmentAverage average) const;

 private:
  Definition def_;
};

double eval_hamiltonian(const HamiltonianSystem& sys, const State& z);
std::vector<double> eval_gradient(const HamiltonianSystem& sys, const State& z);

}  // namespace pavf
