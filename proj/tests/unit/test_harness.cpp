#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>
#include <sstream>

#include "pavf/errors.hpp"
#include "pavf/harness/benchmark.hpp"
#include "pavf/harness/convergence.hpp"
#include "pavf/harness/csv.hpp"
#include "pavf/harness/experiment.hpp"
#include "pavf/harness/verify.hpp"

using namespace pavf;
using namespace pavf::harness;

namespace {

ExperimentSpec small_hh(Method m = Method::pavf) {
  ExperimentSpec s;
  s.methods = {m};
  s.tau = 0.2;
  s.t_final = 20.0;
  return s;
}

ExperimentSpec small_kgs() {
  ExperimentSpec s;
  s.model = Model::kgs;
  s.methods = {Method::pavf};
  s.tau = 0.05;
  s.h = 0.2;
  s.x_left = -20;
  s.x_right = 20;
  s.solitons = {{-0.8, 5.0}};
  s.t_final = 1.0;
  return s;
}

std::string orbit_csv(const ExperimentSpec& s, Method m) {
  std::ostringstream out;
  write_orbit_csv(out, run_experiment(s, m));
  return out.str();
}

}  // namespace

TEST_SUITE("csv") {
  TEST_CASE("format_double round-trips") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0, 1e-17, 123456789.125}) {
      const auto s = format_double(v);
      CHECK(std::stod(s) == v);
    }
    CHECK(format_double(0.5) == "0.5");
  }
  TEST_CASE("writer emits header and rows") {
    std::ostringstream out;
    CsvWriter w(out, {"a", "b"});
    w.row({1.0, 0.25});
    w.row({-3.0, 1e-20});
    CHECK(out.str() == "a,b\n1,0.25\n-3,1e-20\n");
    CHECK(w.rows_written() == 2);
    CHECK_THROWS_AS(w.row({1.0}), ContractViolation);
  }
}

TEST_SUITE("convergence") {
  TEST_CASE("observed order") {
    CHECK(observed_order(0.2, 4e-2, 0.1, 1e-2) == doctest::Approx(2.0));
    CHECK(observed_order(0.2, 4e-2, 0.1, 2e-2) == doctest::Approx(1.0));
    CHECK(observed_order(0.1, 1.15e-2, 1.0 / 11, 9.44e-3) == doctest::Approx(2.07).epsilon(0.01));
  }
  TEST_CASE("fitted order of a pure power law") {
    const std::vector<double> s{0.1, 0.05, 0.025, 0.0125};
    std::vector<double> e;
    for (double x : s) e.push_back(3.0 * x * x * x);
    CHECK(fitted_order(s, e) == doctest::Approx(3.0).epsilon(1e-12));
  }
  TEST_CASE("table columns") {
    const std::vector<double> s{0.2, 0.1}, l2{4e-2, 1e-2}, linf{8e-2, 4e-2};
    const auto t = convergence_table(s, l2, linf);
    REQUIRE(t.size() == 2);
    CHECK_FALSE(t[0].order_l2.has_value());
    CHECK(*t[1].order_l2 == doctest::Approx(2.0));
    CHECK(*t[1].order_linf == doctest::Approx(1.0));
    const std::vector<double> bad{0.1, 0.2};
    CHECK_THROWS_AS(convergence_table(bad, l2, linf), ContractViolation);
  }
  TEST_CASE("step count") {
    CHECK(step_count(1.0, 0.1) == 10);
    CHECK(step_count(2000.0, 0.2) == 10000);
    CHECK(step_count(0.0, 0.2) == 0);
    CHECK_THROWS_AS(step_count(1.0, 0.0), ContractViolation);
  }
  TEST_CASE("henon-heiles temporal orders") {
    const std::vector<double> taus{0.1, 0.05, 0.025};
    HhAccuracySetup setup;
    CHECK(fitted_order_l2(hh_temporal_convergence(Method::pavf, taus, setup)) == doctest::Approx(1.0).epsilon(0.15));
    CHECK(fitted_order_l2(hh_temporal_convergence(Method::pavf_c, taus, setup)) == doctest::Approx(2.0).epsilon(0.15));
    CHECK(fitted_order_l2(hh_temporal_convergence(Method::avf, taus, setup)) == doctest::Approx(2.0).epsilon(0.15));
  }
}

TEST_SUITE("experiment") {
  TEST_CASE("configuration validation") {
    auto s = small_hh();
    CHECK_NOTHROW(s.validate());
    s.tau = 0.0;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = small_hh();
    s.t_final = -1;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = small_hh();
    s.methods.clear();
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = small_hh();
    s.hh_init = {0.01, 0.0, 0.5, 0.0};  // energy below the potential there
    CHECK_THROWS_AS(s.validate(), ConfigError);
    auto k = small_kgs();
    CHECK_NOTHROW(k.validate());
    k.h = 0.3;
    CHECK_THROWS_AS(k.validate(), ConfigError);
    k = small_kgs();
    k.solitons = {{1.2, 0.0}};
    CHECK_THROWS_AS(k.validate(), ConfigError);
  }
  TEST_CASE("zero final time gives only the initial record") {
    auto s = small_hh();
    s.t_final = 0.0;
    const auto r = run_experiment(s, Method::pavf);
    REQUIRE(r.rows.size() == 1);
    CHECK(r.rows[0].t == 0.0);
    CHECK(r.rows[0].RH == 0.0);
  }
  TEST_CASE("orbit output is deterministic") {
    const auto a = orbit_csv(small_hh(), Method::pavf_c);
    const auto b = orbit_csv(small_hh(), Method::pavf_c);
    CHECK(a == b);
    CHECK(a.rfind("t,q1,q2,p1,p2,H,RH,iters\n", 0) == 0);
  }
  TEST_CASE("henon-heiles invariants") {
    for (Method m : {Method::avf, Method::pavf, Method::pavf_c, Method::pavf_p}) {
      const auto r = run_experiment(small_hh(), m);
      CHECK_FALSE(r.failure.has_value());
      CHECK(r.rows.size() == 101);
      CHECK(r.max_RH <= 1e-12);
      CHECK(r.rows.back().t == doctest::Approx(20.0));
    }
  }
  TEST_CASE("kgs invariants and profiles") {
    auto s = small_kgs();
    s.profile_stride = 10;
    const auto r = run_experiment(s, Method::pavf);
    CHECK_FALSE(r.failure.has_value());
    CHECK(r.rows.front().RM == 0.0);
    CHECK(r.rows.front().RH == 0.0);
    CHECK(r.max_RM <= 1e-12);
    CHECK(r.max_RH <= 1e-12);
    CHECK(r.profiles.size() == 3);  // steps 0, 10, 20
    std::ostringstream inv;
    write_invariants_csv(inv, r);
    CHECK(inv.str().rfind("t,H,RH,M,RM,iters\n", 0) == 0);
  }
  TEST_CASE("solver failure is reported, not thrown") {
    auto s = small_hh(Method::avf);
    s.solver.max_iter = 1;
    const auto r = run_experiment(s, Method::avf);
    CHECK(r.failure.has_value());
    CHECK(r.rows.size() >= 1);
  }
}

TEST_SUITE("poincare") {
  TEST_CASE("no crossings gives a header-only file") {
    std::ostringstream out;
    write_poincare_csv(out, {});
    CHECK(out.str() == "q2,p2,t_cross\n");
  }
  TEST_CASE("chaotic and box orbits cross the plane") {
    auto s = small_hh();
    s.t_final = 200.0;
    CHECK(!emit_poincare(s, Method::pavf).empty());
    s.hh_init = henon_heiles::kBoxOrbit;
    const auto a = emit_poincare(s, Method::pavf);
    const auto b = emit_poincare(s, Method::pavf_c);
    CHECK(!a.empty());
    CHECK(!b.empty());
    for (const auto& p : b) CHECK(henon_heiles::hamiltonian(henon_heiles::HHState{0.0, p.q2, 0.0, p.p2}) <= 0.02 + 1e-6);
  }
  TEST_CASE("rejects the kgs model") { CHECK_THROWS_AS(emit_poincare(small_kgs(), Method::pavf), ConfigError); }
}

TEST_SUITE("summary and tools") {
  TEST_CASE("summary json parses and echoes the configuration") {
    const auto s = small_hh();
    const std::vector<RunReport> reports{run_experiment(s, Method::pavf)};
    const auto j = nlohmann::json::parse(summary_json(s, reports));
    CHECK(j.contains("runs"));
    CHECK(j["runs"].size() == 1);
  }
  TEST_CASE("cost benchmark rows") {
    auto s = small_hh();
    s.t_final = 2.0;
    const Method ms[] = {Method::pavf, Method::pavf_c};
    const auto rows = cost_benchmark(s, ms, 2);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
      CHECK(r.seconds >= 0.0);
      CHECK(r.samples.size() == 2);
      CHECK(r.steps == 10);
    }
    CHECK_THROWS_AS(cost_benchmark(s, ms, 0), ConfigError);
  }
  TEST_CASE("property suites pass") {
    VerifyOptions o;
    o.samples = 10;
    for (const auto& c : run_property_suites(o)) {
      INFO(c.name << ": " << c.detail);
      CHECK(c.passed);
    }
  }
}
