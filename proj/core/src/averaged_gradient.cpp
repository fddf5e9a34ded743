#include "pavf/averaged_gradient.hpp"

#include <cmath>

#include "pavf/errors.hpp"
#include "pavf/numerics/gauss_legendre.hpp"

namespace pavf {

namespace {

void check_pair(const HamiltonianSystem& sys, std::span<const double> a, std::span<const double> b) {
  if (a.size() != sys.dimension() || b.size() != sys.dimension())
    throw ContractViolation("averaged gradient: dimension mismatch");
}

}  // namespace

void segment_average(const HamiltonianSystem& sys, std::span<const std::size_t> indices,
                     std::span<const double> start, std::span<const double> end,
                     std::span<double> out) {
  if (out.size() != indices.size()) throw ContractViolation("segment_average: output size mismatch");
  if (sys.closed_form_average(indices, start, end, out)) return;

  const std::size_t m = sys.dimension();
  std::vector<double> point(m), grad(m);
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& [xi, w] : numerics::gauss_legendre_nodes(sys.quadrature_order())) {
    for (std::size_t i = 0; i < m; ++i) point[i] = start[i] + xi * (end[i] - start[i]);
    sys.gradient(point, grad);
    for (std::size_t a = 0; a < indices.size(); ++a) out[a] += w * grad[indices[a]];
  }
}

std::vector<double> avf_averaged_gradient(const HamiltonianSystem& sys, const State& z_old,
                                          const State& z_new) {
  check_pair(sys, z_old.values(), z_new.values());
  const Grouping all = Grouping::single(sys.dimension());
  std::vector<double> out(sys.dimension());
  segment_average(sys, all.group(0), z_old.values(), z_new.values(), out);
  return out;
}

std::vector<double> group_averaged_gradient(const HamiltonianSystem& sys, const Grouping& grouping,
                                            const State& z_old, const State& z_new, std::size_t k,
                                            PathOrder order) {
  check_pair(sys, z_old.values(), z_new.values());
  if (grouping.dimension() != sys.dimension())
    throw ContractViolation("group_averaged_gradient: grouping dimension mismatch");
  const auto indices = grouping.group(k);

  std::vector<double> start(z_old.begin(), z_old.end());
  for (std::size_t g = 0; g < grouping.group_count(); ++g) {
    const bool take_new = order == PathOrder::forward ? g < k : g > k;
    if (!take_new) continue;
    for (std::size_t i : grouping.group(g)) start[i] = z_new[i];
  }
  std::vector<double> end = start;
  for (std::size_t i : indices) end[i] = z_new[i];

  std::vector<double> out(indices.size());
  segment_average(sys, indices, start, end, out);
  return out;
}

void partitioned_averaged_gradient(const HamiltonianSystem& sys, const Grouping& grouping,
                                   std::span<const double> z_old, std::span<const double> z_new,
                                   PathOrder order, std::span<double> out) {
  check_pair(sys, z_old, z_new);
  if (out.size() != sys.dimension()) throw ContractViolation("partitioned gradient: output size");

  // Walk the path one group at a time; the adjoint walks it backwards.
  std::vector<double> start(z_old.begin(), z_old.end());
  std::vector<double> end = start;
  std::vector<double> avg;
  const std::size_t count = grouping.group_count();
  for (std::size_t step = 0; step < count; ++step) {
    const std::size_t k = order == PathOrder::forward ? step : count - 1 - step;
    const auto indices = grouping.group(k);
    for (std::size_t i : indices) end[i] = z_new[i];
    avg.resize(indices.size());
    segment_average(sys, indices, start, end, avg);
    for (std::size_t a = 0; a < indices.size(); ++a) out[indices[a]] = avg[a];
    for (std::size_t i : indices) start[i] = z_new[i];
  }
}

std::vector<double> itoh_abe_discrete_gradient(const HamiltonianSystem& sys, const State& z_old,
                                               const State& z_new) {
  check_pair(sys, z_old.values(), z_new.values());
  const std::size_t m = sys.dimension();
  std::vector<double> point(z_old.begin(), z_old.end());
  std::vector<double> grad(m), out(m);
  double h_before = sys.hamiltonian(point);
  for (std::size_t k = 0; k < m; ++k) {
    const double delta = z_new[k] - z_old[k];
    if (std::abs(delta) < kItohAbeDivisionFloor) {
      sys.gradient(point, grad);
      out[k] = grad[k];
      point[k] = z_new[k];
      h_before = sys.hamiltonian(point);
      continue;
    }
    point[k] = z_new[k];
    const double h_after = sys.hamiltonian(point);
    out[k] = (h_after - h_before) / delta;
    h_before = h_after;
  }
  return out;
}

}  // namespace pavf
