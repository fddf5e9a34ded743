#include "pavf/skew_structure.hpp"

#include <string>

#include "pavf/errors.hpp"

namespace pavf {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

SkewStructure SkewStructure::canonical(std::size_t half_dimension) {
  if (half_dimension == 0) throw ContractViolation("canonical J: d must be positive");
  return SkewStructure(Canonical{half_dimension});
}

SkewStructure SkewStructure::kgs_block(std::size_t block_size) {
  if (block_size == 0) throw ContractViolation("KGS block structure: empty blocks");
  return SkewStructure(KgsBlock{block_size});
}

SkewStructure SkewStructure::explicit_matrix(std::size_t dimension, std::vector<double> row_major) {
  if (dimension == 0 || row_major.size() != dimension * dimension)
    throw ContractViolation("explicit skew matrix: expected dimension^2 entries");
  for (std::size_t i = 0; i < dimension; ++i) {
    for (std::size_t j = i; j < dimension; ++j) {
      if (row_major[i * dimension + j] != -row_major[j * dimension + i])
        throw ContractViolation("explicit skew matrix: S^T != -S at (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
    }
  }
  return SkewStructure(Explicit{dimension, std::move(row_major)});
}

std::size_t SkewStructure::dimension() const noexcept {
  return std::visit(overloaded{[](const Canonical& c) { return 2 * c.half_dimension; },
                               [](const KgsBlock& k) { return 4 * k.block_size; },
                               [](const Explicit& e) { return e.dimension; }},
                    kind_);
}

std::vector<double> SkewStructure::apply(std::span<const double> v) const {
  std::vector<double> out(v.size());
  apply(v, out);
  return out;
}

void SkewStructure::apply(std::span<const double> v, std::span<double> out) const {
  const std::size_t m = dimension();
  if (v.size() != m || out.size() != m) throw ContractViolation("SkewStructure::apply: size mismatch");
  std::visit(overloaded{
                 [&](const Canonical& c) {
                   const std::size_t d = c.half_dimension;
                   for (std::size_t i = 0; i < d; ++i) {
                     out[i] = v[d + i];
                     out[d + i] = -v[i];
                   }
                 },
                 [&](const KgsBlock& k) {
                   // (U, V, P, Q) -> (V, -U, -Q, P)
                   const std::size_t n = k.block_size;
                   for (std::size_t i = 0; i < n; ++i) {
                     out[i] = v[n + i];
                     out[n + i] = -v[i];
                     out[2 * n + i] = -v[3 * n + i];
                     out[3 * n + i] = v[2 * n + i];
                   }
                 },
                 [&](const Explicit& e) {
                   for (std::size_t i = 0; i < m; ++i) {
                     double s = 0.0;
                     for (std::size_t j = 0; j < m; ++j) s += e.entries[i * m + j] * v[j];
                     out[i] = s;
                   }
                 }},
             kind_);
}

double SkewStructure::entry(std::size_t i, std::size_t j) const {
  const std::size_t m = dimension();
  if (i >= m || j >= m) throw ContractViolation("SkewStructure::entry: index out of range");
  return std::visit(overloaded{
                        [&](const Canonical& c) -> double {
                          const std::size_t d = c.half_dimension;
                          if (i < d && j == i + d) return 1.0;
                          if (i >= d && j + d == i) return -1.0;
                          return 0.0;
                        },
                        [&](const KgsBlock& k) -> double {
                          const std::size_t n = k.block_size;
                          if (i % n != j % n) return 0.0;
                          const std::size_t bi = i / n, bj = j / n;
                          if (bi == 0 && bj == 1) return 1.0;
                          if (bi == 1 && bj == 0) return -1.0;
                          if (bi == 2 && bj == 3) return -1.0;
                          if (bi == 3 && bj == 2) return 1.0;
                          return 0.0;
                        },
                        [&](const Explicit& e) { return e.entries[i * m + j]; }},
                    kind_);
}

}  // namespace pavf
