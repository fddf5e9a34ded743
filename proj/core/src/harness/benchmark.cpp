#include "pavf/harness/benchmark.hpp"

#include <algorithm>
#include <chrono>

#include "pavf/errors.hpp"

namespace pavf::harness {

namespace {

struct Timed {
  double seconds;
  std::size_t iterations;
};

Timed time_henon_heiles(const ExperimentSpec& spec, Method method) {
  const auto z0 = henon_heiles::hh_initial_state(spec.hh_init);
  const StepperConfig cfg{spec.tau, spec.solver};
  const std::size_t steps = spec.steps();
  std::size_t iters = 0;
  henon_heiles::HHState z = z0;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t n = 0; n < steps; ++n) {
    const auto out = henon_heiles::step(method, cfg, z);
    z = out.state;
    iters += out.iterations;
  }
  const auto t1 = std::chrono::steady_clock::now();
  return {std::chrono::duration<double>(t1 - t0).count(), iters};
}

Timed time_kgs(const ExperimentSpec& spec, Method method) {
  const auto grid = spec.grid();
  auto z = kgs::kgs_initial(grid, spec.solitons).state;
  const StepperConfig cfg{spec.tau, spec.solver};
  const std::size_t steps = spec.steps();
  std::size_t iters = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t n = 0; n < steps; ++n) {
    auto out = kgs::step(method, grid, cfg, z);
    z = std::move(out.state);
    iters += out.iterations;
  }
  const auto t1 = std::chrono::steady_clock::now();
  return {std::chrono::duration<double>(t1 - t0).count(), iters};
}

}  // namespace

std::vector<CostRow> cost_benchmark(const ExperimentSpec& spec, std::span<const Method> methods,
                                    int repetitions) {
  spec.validate();
  if (repetitions < 1) throw ConfigError("cost_benchmark: repetitions must be >= 1");
  auto run = [&](Method m) {
    return spec.model == Model::henon_heiles ? time_henon_heiles(spec, m) : time_kgs(spec, m);
  };
  std::vector<CostRow> rows;
  for (Method m : methods) {
    CostRow row;
    row.method = m;
    row.steps = spec.steps();
    run(m);  // warm-up
    for (int r = 0; r < repetitions; ++r) {
      const auto t = run(m);
      row.samples.push_back(t.seconds);
      row.iterations = t.iterations;
    }
    auto sorted = row.samples;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    row.seconds = sorted.size() % 2 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pavf::harness
