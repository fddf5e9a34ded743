#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "pavf/errors.hpp"

namespace pavf::numerics {

/// Tridiagonal matrix stored by diagonals: sub (n-1), diag (n), super (n-1).
template <typename T>
struct Tridiagonal {
  std::vector<T> sub;
  std::vector<T> diag;
  std::vector<T> super;

  Tridiagonal() = default;
  explicit Tridiagonal(std::size_t n) : sub(n ? n - 1 : 0), diag(n), super(n ? n - 1 : 0) {}
  Tridiagonal(std::vector<T> lower, std::vector<T> main, std::vector<T> upper)
      : sub(std::move(lower)), diag(std::move(main)), super(std::move(upper)) {
    if (diag.empty() || sub.size() + 1 != diag.size() || super.size() + 1 != diag.size())
      throw ContractViolation("tridiagonal: inconsistent diagonal lengths");
  }

  static Tridiagonal identity(std::size_t n) {
    Tridiagonal m(n);
    for (auto& d : m.diag) d = T{1};
    return m;
  }

  std::size_t size() const noexcept { return diag.size(); }

  /// y = A x
  void multiply(std::span<const T> x, std::span<T> y) const {
    const std::size_t n = size();
    if (x.size() != n || y.size() != n) throw ContractViolation("tridiagonal multiply: size mismatch");
    if (n == 1) {
      y[0] = diag[0] * x[0];
      return;
    }
    y[0] = diag[0] * x[0] + super[0] * x[1];
    for (std::size_t i = 1; i + 1 < n; ++i)
      y[i] = sub[i - 1] * x[i - 1] + diag[i] * x[i] + super[i] * x[i + 1];
    y[n - 1] = sub[n - 2] * x[n - 2] + diag[n - 1] * x[n - 1];
  }

  std::vector<T> multiply(std::span<const T> x) const {
    std::vector<T> y(size());
    multiply(x, y);
    return y;
  }

  /// |a_ii| > sum of |off-diagonal| in every row.
  bool strictly_diagonally_dominant() const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i) {
      double off = 0.0;
      if (i > 0) off += std::abs(sub[i - 1]);
      if (i + 1 < n) off += std::abs(super[i]);
      if (!(std::abs(diag[i]) > off)) return false;
    }
    return true;
  }
};

using TridiagonalMatrix = Tridiagonal<double>;
using ComplexTridiagonalMatrix = Tridiagonal<std::complex<double>>;

/// Thomas algorithm, no pivoting. Writes the solution of A x = b into x
/// (x may alias b). Throws SingularMatrixError on a zero or non-finite pivot.
template <typename T>
void solve_tridiagonal_into(const Tridiagonal<T>& a, std::span<const T> b, std::span<T> x,
                            std::vector<T>& scratch) {
  const std::size_t n = a.size();
  if (b.size() != n || x.size() != n) throw ContractViolation("solve_tridiagonal: size mismatch");
  scratch.resize(n);
  auto pivot_ok = [](const T& p) {
    const double mag = std::abs(p);
    return mag != 0.0 && std::isfinite(mag);
  };

  T pivot = a.diag[0];
  if (!pivot_ok(pivot)) throw SingularMatrixError("solve_tridiagonal: zero pivot in row 0");
  scratch[0] = n > 1 ? a.super[0] / pivot : T{};
  x[0] = b[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = a.diag[i] - a.sub[i - 1] * scratch[i - 1];
    if (!pivot_ok(pivot))
      throw SingularMatrixError("solve_tridiagonal: zero pivot in row " + std::to_string(i));
    scratch[i] = i + 1 < n ? a.super[i] / pivot : T{};
    x[i] = (b[i] - a.sub[i - 1] * x[i - 1]) / pivot;
  }
  for (std::size_t i = n - 1; i-- > 0;) x[i] -= scratch[i] * x[i + 1];
}

template <typename T>
std::vector<T> solve_tridiagonal(const Tridiagonal<T>& a, std::span<const T> b) {
  std::vector<T> x(b.begin(), b.end());
  std::vector<T> scratch;
  solve_tridiagonal_into<T>(a, x, x, scratch);
  return x;
}

inline std::vector<double> solve_tridiagonal(const TridiagonalMatrix& a, const std::vector<double>& b) {
  return solve_tridiagonal<double>(a, std::span<const double>(b));
}

inline std::vector<std::complex<double>> solve_complex_tridiagonal(
    const ComplexTridiagonalMatrix& a, const std::vector<std::complex<double>>& b) {
  return solve_tridiagonal<std::complex<double>>(a, std::span<const std::complex<double>>(b));
}

}  // namespace pavf::numerics
