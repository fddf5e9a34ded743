// pavf: experiment runner for the PAVF integrator family.
//
// Exit status: 0 ok, 1 verify found a failing property, 2 bad configuration,
// 3 solver failure (partial output is still written).

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pavf/errors.hpp"
#include "pavf/harness/benchmark.hpp"
#include "pavf/harness/convergence.hpp"
#include "pavf/harness/csv.hpp"
#include "pavf/harness/experiment.hpp"
#include "pavf/harness/verify.hpp"

namespace fs = std::filesystem;
using namespace pavf;
using namespace pavf::harness;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

struct Common {
  std::vector<std::string> methods;
  std::optional<double> tau;
  std::optional<double> h;
  std::optional<double> t_final;
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 0;
  std::size_t stride = 1;
  double tol = 1e-14;
  std::size_t max_iter = 500;
  bool newton = false;
};

void add_common(CLI::App* app, Common& c, bool with_h) {
  app->add_option("--method", c.methods, "avf, pavf, pavf-adjoint, pavf-c, pavf-p (repeat or comma-separate)")
      ->delimiter(',');
  app->add_option("--tau", c.tau, "time step");
  if (with_h) app->add_option("--h", c.h, "mesh width");
  app->add_option("--t-final", c.t_final, "final time");
  app->add_option("--out", c.out, "output directory (stdout when omitted)");
  app->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--seed", c.seed, "random seed");
  app->add_option("--stride", c.stride, "record every n-th step")->check(CLI::PositiveNumber);
  app->add_option("--tol", c.tol, "nonlinear solver tolerance (max norm)");
  app->add_option("--max-iter", c.max_iter, "nonlinear solver iteration cap");
  app->add_flag("--newton", c.newton, "Newton iteration instead of plain fixed point");
}

std::vector<Method> resolve_methods(const std::vector<std::string>& names, std::vector<Method> fallback) {
  if (names.empty()) return fallback;
  std::vector<Method> out;
  for (const auto& n : names) {
    auto m = parse_method(n);
    if (!m) throw ConfigError("unknown method '" + n + "'");
    out.push_back(*m);
  }
  return out;
}

const std::vector<Method> kFour{Method::avf, Method::pavf, Method::pavf_c, Method::pavf_p};

ExperimentSpec base_spec(const Common& c, Model model) {
  ExperimentSpec s;
  s.model = model;
  s.seed = c.seed;
  s.stride = c.stride;
  s.solver.abs_tol = c.tol;
  s.solver.max_iter = c.max_iter;
  s.solver.mode = c.newton ? numerics::SolveMode::newton : numerics::SolveMode::fixed_point;
  return s;
}

// Writes to <out>/<name>, or to stdout when no directory was given.
class Sink {
 public:
  explicit Sink(const std::string& dir) : dir_(dir) {
    if (!dir_.empty()) {
      std::error_code ec;
      fs::create_directories(dir_, ec);
      if (ec) throw ConfigError("cannot create --out directory '" + dir_ + "': " + ec.message());
    }
  }
  bool to_stdout() const { return dir_.empty(); }

  template <typename F>
  void write(const std::string& name, F&& body) {
    if (dir_.empty()) {
      body(std::cout);
      return;
    }
    const fs::path p = fs::path(dir_) / name;
    std::ofstream f(p, std::ios::binary);
    if (!f) throw ConfigError("cannot open " + p.string() + " for writing");
    body(f);
    if (!f) throw std::runtime_error("write failed: " + p.string());
  }

 private:
  std::string dir_;
};

std::string tag(Method m) { return std::string(to_string(m)); }

int status_of(std::span<const RunReport> reports) {
  for (const auto& r : reports)
    if (r.failure) {
      std::cerr << "solver failure (" << to_string(r.method) << "): " << *r.failure << "\n";
      return kExitSolver;
    }
  return kExitOk;
}

henon_heiles::HHInit parse_init(const std::string& name) {
  if (name == "chaotic") return henon_heiles::kChaoticOrbit;
  if (name == "box") return henon_heiles::kBoxOrbit;
  throw ConfigError("unknown --init '" + name + "' (chaotic or box)");
}

// --- subcommands -----------------------------------------------------------

int hh_orbit(const Common& c, const std::string& init) {
  auto spec = base_spec(c, Model::henon_heiles);
  spec.methods = resolve_methods(c.methods, {Method::pavf});
  spec.tau = c.tau.value_or(0.2);
  spec.t_final = c.t_final.value_or(2000.0);
  spec.hh_init = parse_init(init);
  spec.validate();

  Sink sink(c.out);
  std::vector<RunReport> reports;
  for (Method m : spec.methods) reports.push_back(run_experiment(spec, m));
  if (c.format == "csv") {
    for (const auto& r : reports)
      sink.write("orbit_" + tag(r.method) + ".csv", [&](std::ostream& o) { write_orbit_csv(o, r); });
  }
  if (c.format == "json" || !sink.to_stdout())
    sink.write("summary.json", [&](std::ostream& o) { o << summary_json(spec, reports) << "\n"; });
  return status_of(reports);
}

int hh_poincare(const Common& c, const std::string& init) {
  auto spec = base_spec(c, Model::henon_heiles);
  spec.methods = resolve_methods(c.methods, {Method::pavf});
  spec.tau = c.tau.value_or(0.2);
  spec.t_final = c.t_final.value_or(2000.0);
  spec.hh_init = parse_init(init);
  spec.validate();

  Sink sink(c.out);
  nlohmann::ordered_json summary = nlohmann::ordered_json::array();
  int status = kExitOk;
  for (Method m : spec.methods) {
    auto s = spec;
    s.stride = 1;
    const auto report = run_experiment(s, m);
    const auto pts = henon_heiles::poincare_section(report.records);
    if (c.format == "csv")
      sink.write("poincare_" + tag(m) + ".csv", [&](std::ostream& o) { write_poincare_csv(o, pts); });
    summary.push_back({{"method", tag(m)}, {"crossings", pts.size()}, {"ok", !report.failure}});
    if (report.failure) {
      std::cerr << "solver failure (" << tag(m) << "): " << *report.failure << "\n";
      status = kExitSolver;
    }
  }
  if (c.format == "json" || !sink.to_stdout())
    sink.write("summary.json", [&](std::ostream& o) { o << summary.dump(2) << "\n"; });
  return status;
}

// "two" adds the mirror image (-c, -x0): the head-on collision setup
std::vector<kgs::SolitonParams> solitons_for(const std::string& which, double cvel, double x0) {
  if (which == "two") return {{cvel, x0}, {-cvel, -x0}};
  return {{cvel, x0}};
}

int run_bench(const Common& c, Model model, double default_tau, double default_t, const std::string& init,
              const std::vector<kgs::SolitonParams>& solitons, int repetitions) {
  auto spec = base_spec(c, model);
  spec.methods = resolve_methods(c.methods, kFour);
  spec.tau = c.tau.value_or(default_tau);
  spec.t_final = c.t_final.value_or(default_t);
  if (model == Model::henon_heiles) spec.hh_init = parse_init(init);
  else {
    spec.h = c.h.value_or(0.1);
    spec.solitons = solitons;
  }
  spec.validate();

  const auto rows = cost_benchmark(spec, spec.methods, repetitions);
  Sink sink(c.out);
  const std::string stem = model == Model::henon_heiles ? "hh_bench" : "kgs_bench";
  if (c.format == "csv") {
    sink.write(stem + ".csv", [&](std::ostream& o) {
      o << "method,seconds,iterations,steps\n";
      for (const auto& r : rows)
        o << to_string(r.method) << ',' << format_double(r.seconds) << ',' << r.iterations << ',' << r.steps
          << '\n';
    });
  } else {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : rows)
      j.push_back({{"method", tag(r.method)},
                   {"seconds_median", r.seconds},
                   {"samples", r.samples},
                   {"iterations", r.iterations},
                   {"steps", r.steps}});
    sink.write(stem + ".json", [&](std::ostream& o) { o << j.dump(2) << "\n"; });
  }
  return kExitOk;
}

int kgs_run(const Common& c, const std::vector<kgs::SolitonParams>& solitons, double left, double right,
            std::size_t profile_stride) {
  auto spec = base_spec(c, Model::kgs);
  spec.methods = resolve_methods(c.methods, {Method::pavf});
  spec.tau = c.tau.value_or(0.05);
  spec.h = c.h.value_or(0.1);
  spec.t_final = c.t_final.value_or(50.0);
  spec.x_left = left;
  spec.x_right = right;
  spec.solitons = solitons;
  spec.profile_stride = profile_stride;
  spec.validate();

  Sink sink(c.out);
  std::vector<RunReport> reports;
  for (Method m : spec.methods) reports.push_back(run_experiment(spec, m));
  for (const auto& r : reports)
    for (const auto& w : r.warnings) std::cerr << "warning: " << w << "\n";
  if (c.format == "csv") {
    for (const auto& r : reports) {
      sink.write("invariants_" + tag(r.method) + ".csv", [&](std::ostream& o) { write_invariants_csv(o, r); });
      if (profile_stride > 0 && !sink.to_stdout())
        sink.write("profiles_" + tag(r.method) + ".csv",
                   [&](std::ostream& o) { write_profiles_csv(o, spec, r); });
    }
  }
  if (c.format == "json" || !sink.to_stdout())
    sink.write("summary.json", [&](std::ostream& o) { o << summary_json(spec, reports) << "\n"; });
  return status_of(reports);
}

int kgs_accuracy(const Common& c, const std::string& mode, std::vector<double> steps) {
  const auto methods = resolve_methods(c.methods, kFour);
  KgsAccuracySetup setup;
  setup.t_final = c.t_final.value_or(1.0);
  setup.solver = base_spec(c, Model::kgs).solver;
  const bool temporal = mode == "temporal";
  if (steps.empty())
    steps = temporal ? std::vector<double>{1.0 / 10, 1.0 / 11, 1.0 / 12, 1.0 / 13}
                     : std::vector<double>{2.0 / 10, 2.0 / 15, 2.0 / 20, 2.0 / 25};
  const double fixed = temporal ? c.h.value_or(0.02) : c.tau.value_or(0.001);
  if (!(fixed > 0.0)) throw ConfigError(temporal ? "--h must be positive" : "--tau must be positive");

  Sink sink(c.out);
  nlohmann::ordered_json summary = nlohmann::ordered_json::array();
  for (Method m : methods) {
    const auto table = temporal ? kgs_temporal_convergence(m, steps, fixed, setup)
                                : kgs_spatial_convergence(m, steps, fixed, setup);
    const double p2 = fitted_order_l2(table);
    const double pinf = fitted_order_linf(table);
    if (c.format == "csv") {
      sink.write("accuracy_" + mode + "_" + tag(m) + ".csv", [&](std::ostream& o) {
        o << (temporal ? "tau" : "h") << ",error_l2,error_linf,order_l2,order_linf\n";
        for (const auto& r : table)
          o << format_double(r.step) << ',' << format_double(r.error_l2) << ',' << format_double(r.error_linf)
            << ',' << (r.order_l2 ? format_double(*r.order_l2) : "") << ','
            << (r.order_linf ? format_double(*r.order_linf) : "") << '\n';
      });
    }
    summary.push_back({{"method", tag(m)}, {"fitted_order_l2", p2}, {"fitted_order_linf", pinf}});
  }
  if (c.format == "json" || !sink.to_stdout())
    sink.write("accuracy_" + mode + ".json", [&](std::ostream& o) { o << summary.dump(2) << "\n"; });
  return kExitOk;
}

int verify(const Common& c, std::size_t samples) {
  VerifyOptions opt;
  if (c.seed != 0) opt.seed = c.seed;
  opt.samples = samples;
  const auto results = run_property_suites(opt);
  bool all = true;
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  std::ostringstream text;
  for (const auto& r : results) {
    all = all && r.passed;
    text << (r.passed ? "PASS " : "FAIL ") << r.name << "  max_err=" << format_double(r.max_error)
         << " tol=" << format_double(r.tolerance) << "  (" << r.detail << ")\n";
    j.push_back({{"name", r.name},
                 {"passed", r.passed},
                 {"max_error", r.max_error},
                 {"tolerance", r.tolerance},
                 {"detail", r.detail}});
  }
  Sink sink(c.out);
  if (c.format == "json") sink.write("verify.json", [&](std::ostream& o) { o << j.dump(2) << "\n"; });
  else sink.write("verify.txt", [&](std::ostream& o) { o << text.str(); });
  if (!sink.to_stdout()) std::cout << text.str();
  return all ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pavf: partitioned AVF integrators, experiments and checks"};
  app.set_help_flag("--help", "print help");  // -h would clash with --h
  app.require_subcommand(1);

  Common c;
  std::string init = "chaotic";
  double x0 = 20.0, cvel = -0.8, left = -50.0, right = 50.0;
  std::size_t profile_stride = 0, samples = 100;
  int repetitions = 3;
  std::string mode = "temporal";
  std::string which = "one";
  std::vector<double> steps;

  auto* orbit = app.add_subcommand("hh-orbit", "Henon-Heiles trajectory with energy drift");
  add_common(orbit, c, false);
  orbit->add_option("--init", init, "chaotic or box");

  auto* poincare = app.add_subcommand("hh-poincare", "Henon-Heiles Poincare cut q1 = 0, p1 > 0");
  add_common(poincare, c, false);
  poincare->add_option("--init", init, "chaotic or box");

  auto* hbench = app.add_subcommand("hh-bench", "Henon-Heiles CPU cost per method");
  add_common(hbench, c, false);
  hbench->add_option("--init", init, "chaotic or box");
  hbench->add_option("--repetitions", repetitions)->check(CLI::PositiveNumber);

  auto* krun = app.add_subcommand("kgs-run", "KGS soliton run with energy and mass drift");
  add_common(krun, c, true);
  krun->add_option("--x0", x0, "soliton centre");
  krun->add_option("--c", cvel, "soliton velocity, |c| < 1");
  krun->add_option("--solitons", which, "one, or two for the head-on collision")
      ->check(CLI::IsMember({"one", "two"}));
  krun->add_option("--x-left", left);
  krun->add_option("--x-right", right);
  krun->add_option("--profile-stride", profile_stride, "write U and |phi| every n steps (0 = off)");

  auto* kacc = app.add_subcommand("kgs-accuracy", "KGS convergence table against the exact soliton");
  add_common(kacc, c, true);
  kacc->add_option("--mode", mode, "temporal or spatial")->check(CLI::IsMember({"temporal", "spatial"}));
  kacc->add_option("--steps", steps, "tau list (temporal) or h list (spatial)")->delimiter(',');

  auto* kbench = app.add_subcommand("kgs-bench", "KGS CPU cost per method");
  add_common(kbench, c, true);
  kbench->add_option("--x0", x0, "soliton centre");
  kbench->add_option("--c", cvel, "soliton velocity, |c| < 1");
  kbench->add_option("--solitons", which, "one, or two for the head-on collision")
      ->check(CLI::IsMember({"one", "two"}));
  kbench->add_option("--repetitions", repetitions)->check(CLI::PositiveNumber);

  auto* ver = app.add_subcommand("verify", "run the invariant property suites");
  add_common(ver, c, false);
  ver->add_option("--samples", samples, "random states per model")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*orbit) return hh_orbit(c, init);
    if (*poincare) return hh_poincare(c, init);
    if (*hbench) return run_bench(c, Model::henon_heiles, 0.2, 1e4, init, {}, repetitions);
    if (*krun) return kgs_run(c, solitons_for(which, cvel, x0), left, right, profile_stride);
    if (*kacc) return kgs_accuracy(c, mode, steps);
    if (*kbench) return run_bench(c, Model::kgs, 0.05, 50.0, init, solitons_for(which, cvel, x0), repetitions);
    if (*ver) return verify(c, samples);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ContractViolation& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const InfeasibleEnergyError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const NonConvergenceError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const SingularMatrixError& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitConfig;
}
