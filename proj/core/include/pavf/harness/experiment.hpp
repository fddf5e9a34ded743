#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pavf/integrators.hpp"
#include "pavf/models/henon_heiles.hpp"
#include "pavf/models/kgs.hpp"

namespace pavf::harness {

/// Invalid experiment configuration (maps to CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Model { henon_heiles, kgs };

std::string_view to_string(Model m) noexcept;

struct ExperimentSpec {
  Model model = Model::henon_heiles;
  std::vector<Method> methods{Method::pavf};
  double tau = 0.2;
  double h = 0.1;  // kgs only
  double t_final = 2000.0;

  henon_heiles::HHInit hh_init = henon_heiles::kChaoticOrbit;

  double x_left = -50.0;
  double x_right = 50.0;
  std::vector<kgs::SolitonParams> solitons{{-0.8, 20.0}};

  std::size_t stride = 1;          // record every stride-th step
  std::size_t profile_stride = 0;  // kgs field snapshots; 0 disables
  std::uint64_t seed = 0;
  numerics::NonlinearSolveConfig solver{};

  std::size_t steps() const;
  kgs::Grid1D grid() const;
  void validate() const;  // throws ConfigError
};

struct ReportRow {
  double t = 0.0;
  double H = 0.0;
  double RH = 0.0;
  double M = 0.0;   // kgs only
  double RM = 0.0;  // kgs only
  std::size_t iterations = 0;
  henon_heiles::HHState hh;  // henon-heiles only
};

struct ProfileSnapshot {
  double t = 0.0;
  std::vector<double> U;
  std::vector<double> abs_phi;
};

struct RunReport {
  Model model = Model::henon_heiles;
  Method method = Method::pavf;
  std::vector<ReportRow> rows;
  std::vector<ProfileSnapshot> profiles;
  std::vector<StepRecord> records;  // henon-heiles states (for Poincare cuts)
  std::size_t steps = 0;
  std::size_t total_iterations = 0;
  double wall_seconds = 0.0;  // stepping only
  double max_RH = 0.0;
  double max_RM = 0.0;
  double max_abs_coordinate = 0.0;  // henon-heiles: max(|q1|, |q2|)
  std::vector<std::string> warnings;
  std::optional<std::string> failure;
};

/// Runs one method of the spec. Deterministic given the spec (timing aside).
RunReport run_experiment(const ExperimentSpec& spec, Method method);

void write_orbit_csv(std::ostream& out, const RunReport& report);
void write_invariants_csv(std::ostream& out, const RunReport& report);
void write_profiles_csv(std::ostream& out, const ExperimentSpec& spec, const RunReport& report);
void write_poincare_csv(std::ostream& out, std::span<const henon_heiles::PoincarePoint> points);

/// Poincare cut (q1 = 0, p1 > 0) of a Henon-Heiles run.
std::vector<henon_heiles::PoincarePoint> emit_poincare(const ExperimentSpec& spec, Method method);

/// JSON summary: configuration echo, totals, invariant maxima, environment note.
std::string summary_json(const ExperimentSpec& spec, std::span<const RunReport> reports);

}  // namespace pavf::harness
