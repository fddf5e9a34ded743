#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "pavf/errors.hpp"
#include "pavf/models/henon_heiles.hpp"
#include "pavf/numerics/gauss_legendre.hpp"
#include "pavf/numerics/nonlinear_solve.hpp"
#include "pavf/numerics/tridiagonal.hpp"

using namespace pavf;
using namespace pavf::numerics;
using cplx = std::complex<double>;

TEST_SUITE("tridiagonal") {
  TEST_CASE("identity returns b") {
    const std::vector<double> b{3, -1, 2, 7};
    CHECK(solve_tridiagonal(TridiagonalMatrix::identity(4), b) == b);
  }
  TEST_CASE("tridiag(-1, 2, -1) with ones") {
    const TridiagonalMatrix a({-1, -1}, {2, 2, 2}, {-1, -1});
    const auto x = solve_tridiagonal(a, std::vector<double>{1, 1, 1});
    CHECK(x[0] == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(x[2] == doctest::Approx(1.5).epsilon(1e-15));
  }
  TEST_CASE("diagonal case divides entry-wise") {
    const TridiagonalMatrix a({0, 0}, {2, -4, 0.5}, {0, 0});
    CHECK(solve_tridiagonal(a, std::vector<double>{1, 1, 1}) == std::vector<double>{0.5, -0.25, 2});
  }
  TEST_CASE("1x1 system") {
    const TridiagonalMatrix a({}, {4}, {});
    CHECK(solve_tridiagonal(a, std::vector<double>{2})[0] == 0.5);
  }
  TEST_CASE("zero pivot is reported") {
    CHECK_THROWS_AS(solve_tridiagonal(TridiagonalMatrix({0}, {0, 1}, {0}), std::vector<double>{1, 1}),
                    SingularMatrixError);
    // the second pivot cancels: 1 - 1*1/1 = 0
    CHECK_THROWS_AS(solve_tridiagonal(TridiagonalMatrix({1}, {1, 1}, {1}), std::vector<double>{1, 1}),
                    SingularMatrixError);
  }
  TEST_CASE("inconsistent shapes") {
    CHECK_THROWS_AS(TridiagonalMatrix({1, 1}, {1, 1}, {1}), ContractViolation);
    CHECK_THROWS_AS(solve_tridiagonal(TridiagonalMatrix::identity(3), std::vector<double>{1, 1}), ContractViolation);
  }
  TEST_CASE("diagonal dominance check") {
    CHECK(TridiagonalMatrix({-1, -1}, {3, 3, 3}, {-1, -1}).strictly_diagonally_dominant());
    CHECK_FALSE(TridiagonalMatrix({-1, -1}, {2, 2, 2}, {-1, -1}).strictly_diagonally_dominant());
  }
  TEST_CASE("random dominant systems round-trip up to n = 4096") {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> u(-1, 1);
    for (std::size_t n : {2u, 17u, 256u, 4096u}) {
      TridiagonalMatrix a(n);
      for (auto& v : a.sub) v = u(rng);
      for (auto& v : a.super) v = u(rng);
      for (auto& v : a.diag) v = 2.5 + u(rng);
      std::vector<double> b(n);
      for (auto& v : b) v = u(rng);
      const auto x = solve_tridiagonal(a, b);
      const auto ax = a.multiply(std::span<const double>(x));
      double bmax = 0.0, r = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        bmax = std::max(bmax, std::abs(b[i]));
        r = std::max(r, std::abs(ax[i] - b[i]));
      }
      CHECK(r <= 1e-12 * (1 + bmax));
    }
  }
  TEST_CASE("agrees with a dense LU") {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> u(-1, 1);
    const std::size_t n = 40;
    TridiagonalMatrix a(n);
    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      a.diag[i] = 3 + u(rng);
      dense(i, i) = a.diag[i];
      if (i + 1 < n) {
        a.super[i] = u(rng);
        a.sub[i] = u(rng);
        dense(i, i + 1) = a.super[i];
        dense(i + 1, i) = a.sub[i];
      }
    }
    Eigen::VectorXd b = Eigen::VectorXd::Random(n);
    const Eigen::VectorXd ref = dense.partialPivLu().solve(b);
    const auto x = solve_tridiagonal(a, std::vector<double>(b.data(), b.data() + n));
    for (std::size_t i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(ref[i]).epsilon(1e-12));
  }
  TEST_CASE("in-place solve with b aliasing x") {
    const TridiagonalMatrix a({-1, -1}, {2, 2, 2}, {-1, -1});
    std::vector<double> bx{1, 1, 1}, scratch;
    solve_tridiagonal_into<double>(a, bx, bx, scratch);
    CHECK(bx[1] == doctest::Approx(2.0));
  }
}

TEST_SUITE("complex tridiagonal") {
  TEST_CASE("identity") {
    const std::vector<cplx> b{{1, 2}, {-3, 0.5}};
    CHECK(solve_complex_tridiagonal(ComplexTridiagonalMatrix::identity(2), b) == b);
  }
  TEST_CASE("diag(i) with ones gives -i") {
    const std::size_t n = 5;
    ComplexTridiagonalMatrix a(n);
    for (auto& d : a.diag) d = cplx(0, 1);
    const auto x = solve_complex_tridiagonal(a, std::vector<cplx>(n, cplx(1, 0)));
    for (const auto& v : x) {
      CHECK(v.real() == doctest::Approx(0.0));
      CHECK(v.imag() == doctest::Approx(-1.0));
    }
  }
  TEST_CASE("random well-conditioned system recovers x") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(-1, 1);
    const std::size_t n = 300;
    ComplexTridiagonalMatrix a(n);
    for (auto& v : a.sub) v = {u(rng), u(rng)};
    for (auto& v : a.super) v = {u(rng), u(rng)};
    for (auto& v : a.diag) v = {4 + u(rng), u(rng)};
    std::vector<cplx> x(n);
    for (auto& v : x) v = {u(rng), u(rng)};
    const auto b = a.multiply(std::span<const cplx>(x));
    const auto got = solve_complex_tridiagonal(a, b);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(got[i] - x[i]));
    CHECK(err <= 1e-12);
  }
}

TEST_SUITE("gauss-legendre") {
  TEST_CASE("order 1 is the midpoint") {
    const auto& r = gauss_legendre_nodes(1);
    REQUIRE(r.size() == 1);
    CHECK(r[0].node == 0.5);
    CHECK(r[0].weight == 1.0);
  }
  TEST_CASE("order 2 integrates the cube and constants exactly") {
    CHECK(integrate_unit_interval([](double x) { return x * x * x; }, 2) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(integrate_unit_interval([](double) { return 1.0; }, 2) == doctest::Approx(1.0).epsilon(1e-15));
  }
  TEST_CASE("monomials up to degree 2n-1") {
    for (int order = 1; order <= 12; ++order)
      for (int k = 0; k <= 2 * order - 1; ++k) {
        const double got = integrate_unit_interval([k](double x) { return std::pow(x, k); }, order);
        CHECK(std::abs(got - 1.0 / (k + 1)) <= 1e-14);
      }
  }
  TEST_CASE("nodes lie in (0, 1) and weights are positive") {
    for (const auto& q : gauss_legendre_nodes(8)) {
      CHECK(q.node > 0.0);
      CHECK(q.node < 1.0);
      CHECK(q.weight > 0.0);
    }
  }
  TEST_CASE("order below 1 is rejected") { CHECK_THROWS_AS(gauss_legendre_nodes(0), ContractViolation); }
}

TEST_SUITE("nonlinear solve") {
  TEST_CASE("affine contraction") {
    const auto r = fixed_point_solve([](std::span<const double> x, std::span<double> y) { y[0] = 0.5 * x[0] + 1; },
                                     std::vector<double>{0.0});
    CHECK(r.solution[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(0.5 * r.solution[0] + 1 - r.solution[0]) <= 1e-14);
    CHECK(r.residual <= 1e-14);
  }
  TEST_CASE("identity map returns the guess at once") {
    const auto r = fixed_point_solve(
        [](std::span<const double> x, std::span<double> y) { std::copy(x.begin(), x.end(), y.begin()); },
        std::vector<double>{3.0, -1.0});
    CHECK(r.solution == std::vector<double>{3.0, -1.0});
    CHECK(r.iterations <= 1);
  }
  TEST_CASE("non-convergence carries the last iterate") {
    NonlinearSolveConfig cfg;
    cfg.max_iter = 5;
    try {
      fixed_point_solve([](std::span<const double> x, std::span<double> y) { y[0] = x[0] + 1; },
                        std::vector<double>{0.0}, cfg);
      FAIL("expected NonConvergenceError");
    } catch (const NonConvergenceError& e) {
      CHECK(e.iterations() == 5);
      REQUIRE(e.last_iterate().size() == 1);
      CHECK(e.last_iterate()[0] == 5.0);
      CHECK(e.residual() == 1.0);
    }
    CHECK_THROWS_AS(scalar_fixed_point([](double x) { return 2 * x + 1; }, 0.0, cfg), NonConvergenceError);
  }
  TEST_CASE("divergence to infinity stops early") {
    CHECK_THROWS_AS(scalar_fixed_point([](double x) { return x * x + 1e300; }, 1e200), NonConvergenceError);
  }
  TEST_CASE("Newton mode solves a non-contractive problem") {
    // x = 3 - x^3 has root 1.2134..., and the plain iteration diverges there
    NonlinearSolveConfig cfg;
    cfg.mode = SolveMode::newton;
    const auto r = fixed_point_solve([](std::span<const double> x, std::span<double> y) { y[0] = 3 - x[0] * x[0] * x[0]; },
                                     std::vector<double>{1.0}, cfg);
    const double x = r.solution[0];
    CHECK(std::abs(x + x * x * x - 3) <= 1e-12);
    NonlinearSolveConfig plain;
    plain.max_iter = 200;
    CHECK_THROWS_AS(fixed_point_solve([](std::span<const double> v, std::span<double> y) { y[0] = 3 - v[0] * v[0] * v[0]; },
                                      std::vector<double>{1.0}, plain),
                    NonConvergenceError);
  }
  TEST_CASE("Henon-Heiles AVF step converges within 20 iterations") {
    const StepperConfig cfg{0.2, {}};
    const auto z = henon_heiles::hh_initial_state(henon_heiles::kChaoticOrbit);
    CHECK(henon_heiles::step_avf(cfg, z).iterations <= 20);
  }
  TEST_CASE("config validation") {
    NonlinearSolveConfig cfg;
    cfg.abs_tol = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ContractViolation);
    cfg.abs_tol = 1e-10;
    cfg.max_iter = 0;
    CHECK_THROWS_AS(cfg.validate(), ContractViolation);
  }
}
