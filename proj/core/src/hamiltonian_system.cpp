#include "pavf/hamiltonian_system.hpp"

#include <algorithm>

#include "pavf/errors.hpp"

namespace pavf {

HamiltonianSystem::HamiltonianSystem(Definition def) : def_(std::move(def)) {
  if (!def_.hamiltonian || !def_.gradient)
    throw ContractViolation("HamiltonianSystem: hamiltonian and gradient are required");
  if (def_.polynomial_degree && *def_.polynomial_degree < 0)
    throw ContractViolation("HamiltonianSystem: negative polynomial degree");
}

int HamiltonianSystem::quadrature_order() const noexcept {
  if (def_.polynomial_degree) return std::max(1, (*def_.polynomial_degree + 1) / 2);
  return 8;
}

HamiltonianSystem HamiltonianSystem::without_closed_form() const {
  Definition d = def_;
  d.closed_form_average = nullptr;
  return HamiltonianSystem(std::move(d));
}

HamiltonianSystem HamiltonianSystem::with_closed_form(SegmentAverage average) const {
  Definition d = def_;
  d.closed_form_average = std::move(average);
  return HamiltonianSystem(std::move(d));
}

double eval_hamiltonian(const HamiltonianSystem& sys, const State& z) {
  if (z.size() != sys.dimension()) throw ContractViolation("eval_hamiltonian: dimension mismatch");
  return sys.hamiltonian(z.values());
}

std::vector<double> eval_gradient(const HamiltonianSystem& sys, const State& z) {
  if (z.size() != sys.dimension()) throw ContractViolation("eval_gradient: dimension mismatch");
  std::vector<double> g(z.size());
  sys.gradient(z.values(), g);
  return g;
}

}  // namespace pavf
