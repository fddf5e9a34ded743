#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "pavf/errors.hpp"
#include "pavf/integrators.hpp"
#include "pavf/models/henon_heiles.hpp"
#include "support.hpp"

using namespace pavf;
using namespace pavf::henon_heiles;

namespace {

using V4 = std::array<double, 4>;

V4 grad(const HHState& z) {
  return {z.q1 + 2 * z.q1 * z.q2, z.q2 + z.q1 * z.q1 - z.q2 * z.q2, z.p1, z.p2};
}

double msq(double a, double b) { return (a * a + a * b + b * b) / 3.0; }

// max |(z' - z)/tau - J g|
double residual(const HHState& a, const HHState& b, double tau, const V4& g) {
  const V4 lhs{(b.q1 - a.q1) / tau, (b.q2 - a.q2) / tau, (b.p1 - a.p1) / tau, (b.p2 - a.p2) / tau};
  const V4 rhs{g[2], g[3], -g[0], -g[1]};
  double m = 0.0;
  for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(lhs[i] - rhs[i]));
  return m;
}

// straight-line mean gradient by Simpson (exact: the gradient is quadratic)
V4 avf_mean(const HHState& a, const HHState& b) {
  const HHState m{(a.q1 + b.q1) / 2, (a.q2 + b.q2) / 2, (a.p1 + b.p1) / 2, (a.p2 + b.p2) / 2};
  const auto ga = grad(a), gm = grad(m), gb = grad(b);
  V4 g;
  for (int i = 0; i < 4; ++i) g[i] = (ga[i] + 4 * gm[i] + gb[i]) / 6;
  return g;
}

// path q1, q2, p1, p2
V4 forward_mean(const HHState& a, const HHState& b) {
  const double s1 = a.q1 + b.q1, s2 = a.q2 + b.q2;
  return {0.5 * s1 + s1 * a.q2, 0.5 * s2 + b.q1 * b.q1 - msq(a.q2, b.q2), 0.5 * (a.p1 + b.p1),
          0.5 * (a.p2 + b.p2)};
}

// path p2, p1, q2, q1
V4 adjoint_mean(const HHState& a, const HHState& b) {
  const double s1 = a.q1 + b.q1, s2 = a.q2 + b.q2;
  return {0.5 * s1 + s1 * b.q2, 0.5 * s2 + a.q1 * a.q1 - msq(a.q2, b.q2), 0.5 * (a.p1 + b.p1),
          0.5 * (a.p2 + b.p2)};
}

HHState random_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-0.3, 0.3);
  return {d(rng), d(rng), d(rng), d(rng)};
}

double dist(const HHState& a, const HHState& b) {
  return std::max({std::abs(a.q1 - b.q1), std::abs(a.q2 - b.q2), std::abs(a.p1 - b.p1), std::abs(a.p2 - b.p2)});
}

constexpr Method kFour[] = {Method::avf, Method::pavf, Method::pavf_c, Method::pavf_p};

}  // namespace

TEST_SUITE("henon-heiles model") {
  TEST_CASE("energy and gradient values") {
    CHECK(hamiltonian(HHState{}) == 0.0);
    CHECK(hamiltonian(HHState{0.1, -0.5, 0, 0}) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
    std::array<double, 4> g{};
    gradient(std::array<double, 4>{0, -0.082, 0, 0}, g);
    CHECK(g[0] == 0.0);
    CHECK(g[1] == doctest::Approx(-0.088724));
    CHECK(g[2] == 0.0);
    const auto sys = hh_system();
    CHECK(sys.dimension() == 4);
    CHECK(sys.polynomial_degree() == 3);
    CHECK(sys.has_closed_form_average());
  }
  TEST_CASE("initial states solve the energy relation for p1") {
    const auto chaotic = hh_initial_state(kChaoticOrbit);
    CHECK(chaotic.p1 == doctest::Approx(0.0).epsilon(1e-7));
    CHECK(std::abs(chaotic.p1) < 1e-7);
    CHECK(std::abs(hamiltonian(chaotic) - 1.0 / 6.0) <= 1e-15);
    const auto box = hh_initial_state(kBoxOrbit);
    CHECK(box.p1 == doctest::Approx(0.1814067).epsilon(1e-7));
    CHECK(std::abs(hamiltonian(box) - 0.02) <= 1e-15);
    CHECK(hh_initial_state(HHInit{0, 0, 0, 0}) == HHState{});
    CHECK_THROWS_AS(hh_initial_state(HHInit{0.01, 0.0, 0.5, 0.0}), InfeasibleEnergyError);
  }
  TEST_CASE("tiny steps barely move the state") {
    const StepperConfig cfg{1e-8, {}};
    const auto z = hh_initial_state(kBoxOrbit);
    for (Method m : kFour) CHECK(dist(step(m, cfg, z).state, z) <= 2e-8);
  }
  TEST_CASE("one step from the chaotic state keeps H at 1/6") {
    const StepperConfig cfg{0.2, {}};
    const auto z = hh_initial_state(kChaoticOrbit);
    for (Method m : kFour) CHECK(std::abs(hamiltonian(step(m, cfg, z).state) - 1.0 / 6.0) <= 1e-13);
  }
  TEST_CASE("hand-coded steps satisfy their defining equations") {
    std::mt19937_64 rng(41);
    for (double tau : {0.05, 0.2}) {
      const StepperConfig cfg{tau, {}};
      for (int t = 0; t < 100; ++t) {
        const auto z = random_state(rng);
        const auto avf = step_avf(cfg, z).state;
        CHECK(residual(z, avf, tau, avf_mean(z, avf)) <= 1e-12);
        const auto fw = step_pavf(cfg, z).state;
        CHECK(residual(z, fw, tau, forward_mean(z, fw)) <= 1e-12);
        const auto ad = step_pavf_adjoint(cfg, z).state;
        CHECK(residual(z, ad, tau, adjoint_mean(z, ad)) <= 1e-12);
        const auto pp = step_pavf_p(cfg, z).state;
        const auto gf = forward_mean(z, pp), ga = adjoint_mean(z, pp);
        CHECK(residual(z, pp, tau, V4{(gf[0] + ga[0]) / 2, (gf[1] + ga[1]) / 2, gf[2], gf[3]}) <= 1e-12);
        const StepperConfig half{tau / 2, {}};
        CHECK(dist(step_pavf_c(cfg, z).state, step_pavf_adjoint(half, step_pavf(half, z).state).state) <= 1e-15);
      }
    }
  }
  TEST_CASE("hand-coded schemes agree with the generic integrators") {
    std::mt19937_64 rng(42);
    const auto sys = hh_system();
    const auto quad = sys.without_closed_form();
    const auto g = hh_grouping();
    for (double tau : {0.05, 0.2}) {
      const StepperConfig cfg{tau, {}};
      for (int t = 0; t < 100; ++t) {
        const auto z = random_state(rng);
        for (Method m : {Method::avf, Method::pavf, Method::pavf_adjoint, Method::pavf_c, Method::pavf_p}) {
          const auto hand = step(m, cfg, z).state;
          CHECK(dist(hand, HHState::from(pavf::step(m, sys, g, cfg, z.to_state()).state)) <= 1e-11);
          CHECK(dist(hand, HHState::from(pavf::step(m, quad, g, cfg, z.to_state()).state)) <= 1e-11);
        }
      }
    }
  }
  TEST_CASE("semi-implicit structure: the (q1, p1) sub-step needs no iterations") {
    const StepperConfig cfg{0.2, {}};
    const auto z = hh_initial_state(kChaoticOrbit);
    CHECK(step_pavf(cfg, z).q1p1_iterations == 0);
    CHECK(step_pavf_adjoint(cfg, z).q1p1_iterations == 0);
    CHECK(step_pavf_c(cfg, z).q1p1_iterations == 0);
    CHECK(step_pavf(cfg, z).iterations > 0);
    CHECK(step_avf(cfg, z).q1p1_iterations > 0);
  }
  TEST_CASE("PAVF-C and PAVF-P are reversible") {
    std::mt19937_64 rng(43);
    const StepperConfig fwd{0.2, {}}, back{-0.2, {}};
    for (int t = 0; t < 100; ++t) {
      const auto z = random_state(rng);
      CHECK(dist(step_pavf_c(back, step_pavf_c(fwd, z).state).state, z) <= 1e-10);
      CHECK(dist(step_pavf_p(back, step_pavf_p(fwd, z).state).state, z) <= 1e-10);
      CHECK(dist(step_avf(back, step_avf(fwd, z).state).state, z) <= 1e-10);
      CHECK(dist(step_pavf(back, step_pavf_adjoint(fwd, z).state).state, z) <= 1e-10);
    }
  }
  TEST_CASE("non-finite input is rejected") {
    CHECK_THROWS_AS(step_pavf({0.2, {}}, HHState{NAN, 0, 0, 0}), ContractViolation);
    CHECK_THROWS_AS(HHState::from(std::vector<double>{1, 2, 3}), ContractViolation);
  }
  TEST_CASE("the integrate adapter matches direct stepping") {
    const StepperConfig cfg{0.2, {}};
    const auto z0 = hh_initial_state(kBoxOrbit);
    auto fn = make_stepper(Method::pavf_c, cfg);
    const auto out = fn(z0.to_state());
    CHECK(HHState::from(out.state) == step_pavf_c(cfg, z0).state);
  }
}

TEST_SUITE("poincare section") {
  auto rec = [](double t, HHState z) { return StepRecord{z.to_state(), t, hamiltonian(z), 0, 0}; };

  TEST_CASE("no crossings") {
    std::vector<StepRecord> r{rec(0, {0.5, 0, 0.1, 0}), rec(1, {0.5, 0.1, 0.1, 0}), rec(2, {0.5, 0.2, 0.1, 0})};
    CHECK(poincare_section(r).empty());
    CHECK(poincare_section(std::span<const StepRecord>{}).empty());
  }
  TEST_CASE("interpolated crossing") {
    std::vector<StepRecord> r{rec(1.0, {-0.1, 0.0, 0.3, 1.0}), rec(1.2, {0.1, 0.2, 0.3, 2.0})};
    const auto pts = poincare_section(r);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].q2 == doctest::Approx(0.1));
    CHECK(pts[0].p2 == doctest::Approx(1.5));
    CHECK(pts[0].t == doctest::Approx(1.1));
  }
  TEST_CASE("crossings with p1 < 0 are skipped") {
    std::vector<StepRecord> r{rec(0, {0.1, 0.0, -0.3, 0}), rec(1, {-0.1, 0.2, -0.3, 0})};
    CHECK(poincare_section(r).empty());
  }
  TEST_CASE("box orbit points sit near the energy surface") {
    const auto z0 = hh_initial_state(kBoxOrbit);
    const auto traj = integrate(make_stepper(Method::pavf_c, {0.2, {}}),
                                [](const State& z) { return hamiltonian(z.values()); }, 0.2, z0.to_state(), 5000);
    const auto pts = poincare_section(traj.records);
    REQUIRE(pts.size() > 10);
    // rebuild each crossing state from the same interpolation and compare energies
    std::size_t checked = 0;
    for (std::size_t n = 0; n + 1 < traj.records.size(); ++n) {
      const auto a = HHState::from(traj.records[n].state), b = HHState::from(traj.records[n + 1].state);
      if ((a.q1 < 0) == (b.q1 < 0)) continue;
      const double s = a.q1 / (a.q1 - b.q1);
      const HHState c{0.0, a.q2 + s * (b.q2 - a.q2), a.p1 + s * (b.p1 - a.p1), a.p2 + s * (b.p2 - a.p2)};
      if (c.p1 <= 0) continue;
      CHECK(std::abs(hamiltonian(c) - 0.02) <= 1e-3);
      ++checked;
    }
    CHECK(checked == pts.size());
  }
}
