#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pavf {

/// A point z in R^m. Immutable once built; every entry is finite.
class State {
 public:
  State() = default;
  explicit State(std::vector<double> values);
  State(std::initializer_list<double> values);

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  const std::vector<double>& vector() const noexcept { return values_; }

  auto begin() const noexcept { return values_.cbegin(); }
  auto end() const noexcept { return values_.cend(); }

  friend bool operator==(const State&, const State&) = default;

 private:
  std::vector<double> values_;
};

double max_abs_difference(std::span<const double> a, std::span<const double> b);
double max_abs(std::span<const double> a);
double dot(std::span<const double> a, std::span<const double> b);
bool all_finite(std::span<const double> a) noexcept;

}  // namespace pavf
