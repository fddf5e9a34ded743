#include "pavf/harness/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "pavf/errors.hpp"
#include "pavf/harness/convergence.hpp"
#include "pavf/harness/csv.hpp"

namespace pavf::harness {

std::string_view to_string(Model m) noexcept {
  return m == Model::henon_heiles ? "henon-heiles" : "kgs";
}

std::size_t ExperimentSpec::steps() const { return step_count(t_final, tau); }

kgs::Grid1D ExperimentSpec::grid() const {
  const double ratio = (x_right - x_left) / h;
  return kgs::Grid1D(x_left, x_right, static_cast<std::size_t>(std::llround(ratio)));
}

void ExperimentSpec::validate() const {
  if (methods.empty()) throw ConfigError("no method selected");
  if (!std::isfinite(tau) || !(tau > 0.0)) throw ConfigError("--tau must be a positive number");
  if (!std::isfinite(t_final) || t_final < 0.0) throw ConfigError("--t-final must be >= 0");
  if (stride == 0) throw ConfigError("stride must be >= 1");
  try {
    solver.validate();
  } catch (const ContractViolation& e) {
    throw ConfigError(e.what());
  }
  if (model == Model::henon_heiles) {
    try {
      (void)henon_heiles::hh_initial_state(hh_init);
    } catch (const InfeasibleEnergyError& e) {
      throw ConfigError(e.what());
    }
  }
  if (model == Model::kgs) {
    if (!std::isfinite(h) || !(h > 0.0)) throw ConfigError("--h must be a positive number");
    if (!(x_right > x_left)) throw ConfigError("domain must satisfy x_left < x_right");
    const double ratio = (x_right - x_left) / h;
    if (std::abs(ratio - std::round(ratio)) > 1e-6 * ratio)
      throw ConfigError("--h must divide the domain length");
    if (std::llround(ratio) < 4) throw ConfigError("--h too coarse: need at least 4 intervals");
    for (const auto& s : solitons)
      if (!(std::abs(s.c) < 1.0)) throw ConfigError("soliton velocity must satisfy |c| < 1");
  }
}

namespace {

double relative_drift(double value, double initial) {
  return initial != 0.0 ? std::abs((value - initial) / initial) : std::abs(value - initial);
}

RunReport run_henon_heiles(const ExperimentSpec& spec, Method method) {
  RunReport report;
  report.model = Model::henon_heiles;
  report.method = method;

  henon_heiles::HHState z0;
  try {
    z0 = henon_heiles::hh_initial_state(spec.hh_init);
  } catch (const InfeasibleEnergyError& e) {
    throw ConfigError(e.what());
  }
  const StepperConfig cfg{spec.tau, spec.solver};
  const double h0 = henon_heiles::hamiltonian(z0);
  ObserverOptions obs;
  obs.stride = spec.stride;
  obs.on_record = [&](const StepRecord& rec) {
    ReportRow row;
    row.t = rec.time;
    row.H = rec.hamiltonian;
    row.RH = relative_drift(rec.hamiltonian, h0);
    row.iterations = rec.solver_iterations;
    row.hh = henon_heiles::HHState::from(rec.state);
    report.max_RH = std::max(report.max_RH, row.RH);
    report.max_abs_coordinate = std::max({report.max_abs_coordinate, std::abs(row.hh.q1), std::abs(row.hh.q2)});
    report.rows.push_back(row);
  };
  auto traj = integrate(henon_heiles::make_stepper(method, cfg),
                        [](const State& z) { return henon_heiles::hamiltonian(z.values()); }, spec.tau,
                        z0.to_state(), spec.steps(), obs);
  report.records = std::move(traj.records);
  report.steps = traj.steps_taken;
  report.total_iterations = traj.total_iterations;
  report.wall_seconds = static_cast<double>(traj.total_step_nanos) * 1e-9;
  report.failure = traj.failure;
  return report;
}

RunReport run_kgs(const ExperimentSpec& spec, Method method) {
  RunReport report;
  report.model = Model::kgs;
  report.method = method;

  const auto grid = spec.grid();
  auto ic = kgs::kgs_initial(grid, spec.solitons);
  report.warnings = ic.warnings;
  const StepperConfig cfg{spec.tau, spec.solver};
  const double h0 = kgs::kgs_hamiltonian(grid, ic.state);
  const double m0 = kgs::kgs_mass(grid, ic.state);
  const std::size_t steps = spec.steps();

  ObserverOptions obs;
  obs.stride = spec.stride;
  obs.keep_states = false;
  obs.on_record = [&](const StepRecord& rec) {
    const auto z = kgs::KGSState::from(rec.state);
    ReportRow row;
    row.t = rec.time;
    row.H = rec.hamiltonian;
    row.RH = relative_drift(rec.hamiltonian, h0);
    row.M = kgs::kgs_mass(grid, z);
    row.RM = relative_drift(row.M, m0);
    row.iterations = rec.solver_iterations;
    report.max_RH = std::max(report.max_RH, row.RH);
    report.max_RM = std::max(report.max_RM, row.RM);
    report.rows.push_back(row);

    const std::size_t step_index = static_cast<std::size_t>(std::llround(rec.time / spec.tau));
    if (spec.profile_stride > 0 && (step_index % spec.profile_stride == 0 || step_index == steps)) {
      ProfileSnapshot snap{rec.time, z.U, std::vector<double>(z.nodes())};
      for (std::size_t j = 0; j < z.nodes(); ++j) snap.abs_phi[j] = std::hypot(z.P[j], z.Q[j]);
      report.profiles.push_back(std::move(snap));
    }
  };
  auto traj = integrate(kgs::make_stepper(method, grid, cfg),
                        [&grid](const State& z) { return kgs::kgs_hamiltonian(grid, kgs::KGSState::from(z)); },
                        spec.tau, ic.state.to_state(), steps, obs);
  report.steps = traj.steps_taken;
  report.total_iterations = traj.total_iterations;
  report.wall_seconds = static_cast<double>(traj.total_step_nanos) * 1e-9;
  report.failure = traj.failure;
  return report;
}

}  // namespace

RunReport run_experiment(const ExperimentSpec& spec, Method method) {
  spec.validate();
  return spec.model == Model::henon_heiles ? run_henon_heiles(spec, method) : run_kgs(spec, method);
}

void write_orbit_csv(std::ostream& out, const RunReport& report) {
  CsvWriter csv(out, {"t", "q1", "q2", "p1", "p2", "H", "RH", "iters"});
  for (const auto& r : report.rows)
    csv.row({r.t, r.hh.q1, r.hh.q2, r.hh.p1, r.hh.p2, r.H, r.RH, static_cast<double>(r.iterations)});
}

void write_invariants_csv(std::ostream& out, const RunReport& report) {
  CsvWriter csv(out, {"t", "H", "RH", "M", "RM", "iters"});
  for (const auto& r : report.rows) csv.row({r.t, r.H, r.RH, r.M, r.RM, static_cast<double>(r.iterations)});
}

void write_profiles_csv(std::ostream& out, const ExperimentSpec& spec, const RunReport& report) {
  CsvWriter csv(out, {"t", "x", "U", "abs_phi"});
  const auto grid = spec.grid();
  for (const auto& snap : report.profiles)
    for (std::size_t j = 0; j < snap.U.size(); ++j) csv.row({snap.t, grid.x(j), snap.U[j], snap.abs_phi[j]});
}

void write_poincare_csv(std::ostream& out, std::span<const henon_heiles::PoincarePoint> points) {
  CsvWriter csv(out, {"q2", "p2", "t_cross"});
  for (const auto& p : points) csv.row({p.q2, p.p2, p.t});
}

std::vector<henon_heiles::PoincarePoint> emit_poincare(const ExperimentSpec& spec, Method method) {
  if (spec.model != Model::henon_heiles) throw ConfigError("Poincare cuts are defined for henon-heiles only");
  ExperimentSpec s = spec;
  s.stride = 1;  // interpolation needs every step
  const auto report = run_experiment(s, method);
  return henon_heiles::poincare_section(report.records);
}

std::string summary_json(const ExperimentSpec& spec, std::span<const RunReport> reports) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["library"] = {{"name", "pavf"}, {"version", "0.1.0"}};
  ordered_json s;
  s["model"] = std::string(to_string(spec.model));
  s["tau"] = spec.tau;
  s["t_final"] = spec.t_final;
  s["steps"] = spec.steps();
  s["t_reached"] = static_cast<double>(spec.steps()) * spec.tau;
  s["stride"] = spec.stride;
  s["seed"] = spec.seed;
  s["solver"] = {{"abs_tol", spec.solver.abs_tol},
                 {"max_iter", spec.solver.max_iter},
                 {"mode", spec.solver.mode == numerics::SolveMode::newton ? "newton" : "fixed-point"}};
  if (spec.model == Model::henon_heiles) {
    s["initial"] = {{"H0", spec.hh_init.energy}, {"q1", spec.hh_init.q1}, {"q2", spec.hh_init.q2}, {"p2", spec.hh_init.p2}};
  } else {
    s["h"] = spec.h;
    s["domain"] = {spec.x_left, spec.x_right};
    ordered_json sol = ordered_json::array();
    for (const auto& p : spec.solitons) sol.push_back({{"c", p.c}, {"x0", p.x0}});
    s["solitons"] = sol;
  }
  j["spec"] = s;
  ordered_json runs = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json run;
    run["method"] = std::string(to_string(r.method));
    run["steps"] = r.steps;
    run["total_iterations"] = r.total_iterations;
    run["wall_seconds"] = r.wall_seconds;
    run["max_RH"] = r.max_RH;
    if (r.model == Model::kgs) run["max_RM"] = r.max_RM;
    else run["max_abs_q"] = r.max_abs_coordinate;
    run["ok"] = !r.failure.has_value();
    if (r.failure) run["failure"] = *r.failure;
    if (!r.warnings.empty()) run["warnings"] = r.warnings;
    runs.push_back(run);
  }
  j["runs"] = runs;
  j["environment"] = "single-threaded; wall_seconds measured with a monotonic clock around step calls only";
  return j.dump(2);
}

}  // namespace pavf::harness
