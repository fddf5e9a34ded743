#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pavf/grouping.hpp"
#include "pavf/hamiltonian_system.hpp"
#include "pavf/state.hpp"

namespace pavf {

/// Which endpoint the groups around group k are frozen at.
///  - forward: groups before k at z_new, groups after k at z_old (PAVF);
///  - adjoint: groups before k at z_old, groups after k at z_new (reversed path).
enum class PathOrder { forward, adjoint };

/// Divided differences below this magnitude fall back to the point gradient.
inline constexpr double kItohAbeDivisionFloor = 1e-12;

/// Mean of grad H along the straight segment z_old -> z_new.
std::vector<double> avf_averaged_gradient(const HamiltonianSystem& sys, const State& z_old,
                                          const State& z_new);

/// Mean of dH/dz_k over the k-th leg of the grouped path from z_old to z_new.
/// The result is indexed like grouping.group(k).
std::vector<double> group_averaged_gradient(const HamiltonianSystem& sys, const Grouping& grouping,
                                            const State& z_old, const State& z_new, std::size_t k,
                                            PathOrder order = PathOrder::forward);

/// All group averages scattered back into state layout, so that entry i holds
/// the average for index i. `out` must have length m.
void partitioned_averaged_gradient(const HamiltonianSystem& sys, const Grouping& grouping,
                                   std::span<const double> z_old, std::span<const double> z_new,
                                   PathOrder order, std::span<double> out);

/// Mean of dH/dz_i (i in indices) along the segment start -> end, via the
/// system's closed form when it provides one and Gauss-Legendre otherwise.
void segment_average(const HamiltonianSystem& sys, std::span<const std::size_t> indices,
                     std::span<const double> start, std::span<const double> end,
                     std::span<double> out);

/// Coordinate-increment (Itoh-Abe) discrete gradient.
std::vector<double> itoh_abe_discrete_gradient(const HamiltonianSystem& sys, const State& z_old,
                                               const State& z_new);

}  // namespace pavf
