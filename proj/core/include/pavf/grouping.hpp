#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pavf {

/// Ordered partition of the state indices {0, ..., m-1}. The order of the
/// groups is the path order in which a partitioned method increments them.
class Grouping {
 public:
  /// Throws ContractViolation unless the groups are nonempty, pairwise
  /// disjoint and cover 0..dimension-1 exactly.
  Grouping(std::size_t dimension, std::vector<std::vector<std::size_t>> groups);

  /// One group containing every index (PAVF collapses to AVF).
  static Grouping single(std::size_t dimension);
  /// One group per index, in index order (Itoh-Abe path).
  static Grouping singletons(std::size_t dimension);
  /// Consecutive equal-sized blocks of length block_size.
  static Grouping contiguous_blocks(std::size_t dimension, std::size_t block_size);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t group_count() const noexcept { return groups_.size(); }
  std::span<const std::size_t> group(std::size_t k) const;
  const std::vector<std::vector<std::size_t>>& groups() const noexcept { return groups_; }

  /// Group index owning state index i.
  std::size_t owner(std::size_t i) const { return owner_.at(i); }

  /// The same groups in reverse path order.
  Grouping reversed() const;

 private:
  std::size_t dimension_;
  std::vector<std::vector<std::size_t>> groups_;
  std::vector<std::size_t> owner_;
};

}  // namespace pavf
