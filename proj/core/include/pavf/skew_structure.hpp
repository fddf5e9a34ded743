#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace pavf {

/// Constant skew-symmetric structure matrix S of z' = S grad H(z).
///
/// Three encodings are supported:
///  - canonical J(d): z = (q, p) with q, p in R^d and S = [[0, I], [-I, 0]];
///  - KGS block: z = (U, V, P, Q), each block of length n, with
///    S = [[0, I, 0, 0], [-I, 0, 0, 0], [0, 0, 0, -I], [0, 0, I, 0]];
///  - an explicit dense m x m matrix, checked entry-wise for S^T = -S.
class SkewStructure {
 public:
  struct Canonical {
    std::size_t half_dimension;
  };
  struct KgsBlock {
    std::size_t block_size;
  };
  struct Explicit {
    std::size_t dimension;
    std::vector<double> entries;  // row-major
  };

  static SkewStructure canonical(std::size_t half_dimension);
  static SkewStructure kgs_block(std::size_t block_size);
  static SkewStructure explicit_matrix(std::size_t dimension, std::vector<double> row_major);

  std::size_t dimension() const noexcept;

  /// Returns S v.
  std::vector<double> apply(std::span<const double> v) const;
  void apply(std::span<const double> v, std::span<double> out) const;

  /// Entry S(i, j); O(1) for the structured kinds.
  double entry(std::size_t i, std::size_t j) const;

  const std::variant<Canonical, KgsBlock, Explicit>& kind() const noexcept { return kind_; }

 private:
  explicit SkewStructure(std::variant<Canonical, KgsBlock, Explicit> kind) : kind_(std::move(kind)) {}

  std::variant<Canonical, KgsBlock, Explicit> kind_;
};

}  // namespace pavf
