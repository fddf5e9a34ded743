#include "pavf/grouping.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "pavf/errors.hpp"

namespace pavf {

namespace {
constexpr std::size_t kUnowned = std::numeric_limits<std::size_t>::max();
}

Grouping::Grouping(std::size_t dimension, std::vector<std::vector<std::size_t>> groups)
    : dimension_(dimension), groups_(std::move(groups)), owner_(dimension, kUnowned) {
  if (dimension_ == 0) throw ContractViolation("Grouping: zero dimension");
  if (groups_.empty()) throw ContractViolation("Grouping: no groups");
  for (std::size_t k = 0; k < groups_.size(); ++k) {
    if (groups_[k].empty()) throw ContractViolation("Grouping: group " + std::to_string(k) + " is empty");
    for (std::size_t i : groups_[k]) {
      if (i >= dimension_)
        throw ContractViolation("Grouping: index " + std::to_string(i) + " out of range");
      if (owner_[i] != kUnowned)
        throw ContractViolation("Grouping: index " + std::to_string(i) + " appears twice");
      owner_[i] = k;
    }
  }
  if (std::find(owner_.begin(), owner_.end(), kUnowned) != owner_.end())
    throw ContractViolation("Grouping: groups do not cover every index");
}

Grouping Grouping::single(std::size_t dimension) {
  std::vector<std::size_t> all(dimension);
  for (std::size_t i = 0; i < dimension; ++i) all[i] = i;
  return Grouping(dimension, {std::move(all)});
}

Grouping Grouping::singletons(std::size_t dimension) {
  std::vector<std::vector<std::size_t>> groups(dimension);
  for (std::size_t i = 0; i < dimension; ++i) groups[i] = {i};
  return Grouping(dimension, std::move(groups));
}

Grouping Grouping::contiguous_blocks(std::size_t dimension, std::size_t block_size) {
  if (block_size == 0 || dimension % block_size != 0)
    throw ContractViolation("Grouping: block size must divide the dimension");
  std::vector<std::vector<std::size_t>> groups(dimension / block_size);
  for (std::size_t i = 0; i < dimension; ++i) groups[i / block_size].push_back(i);
  return Grouping(dimension, std::move(groups));
}

std::span<const std::size_t> Grouping::group(std::size_t k) const {
  if (k >= groups_.size()) throw ContractViolation("Grouping: invalid group index " + std::to_string(k));
  return groups_[k];
}

Grouping Grouping::reversed() const {
  auto groups = groups_;
  std::reverse(groups.begin(), groups.end());
  return Grouping(dimension_, std::move(groups));
}

}  // namespace pavf
