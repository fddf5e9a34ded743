#include <benchmark/benchmark.h>

#include "pavf/models/henon_heiles.hpp"
#include "pavf/models/kgs.hpp"
#include "pavf/numerics/tridiagonal.hpp"

using namespace pavf;

namespace {

void hh_steps(benchmark::State& st, Method method) {
  const StepperConfig cfg{0.2, {}};
  auto z = henon_heiles::hh_initial_state(henon_heiles::kChaoticOrbit);
  std::size_t iters = 0;
  for (auto _ : st) {
    const auto out = henon_heiles::step(method, cfg, z);
    z = out.state;
    iters += out.iterations;
    benchmark::DoNotOptimize(z);
  }
  st.counters["iters/step"] = benchmark::Counter(static_cast<double>(iters), benchmark::Counter::kAvgIterations);
}

void kgs_steps(benchmark::State& st, Method method) {
  const kgs::Grid1D grid(-50.0, 50.0, 1000);
  const StepperConfig cfg{0.05, {}};
  const std::vector<kgs::SolitonParams> sol{{-0.8, 20.0}};
  auto z = kgs::kgs_initial(grid, sol).state;
  for (auto _ : st) {
    auto out = kgs::step(method, grid, cfg, z);
    z = std::move(out.state);
    benchmark::DoNotOptimize(z.U.data());
  }
}

void thomas(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  numerics::TridiagonalMatrix a;
  a.sub.assign(n - 1, -1.0);
  a.diag.assign(n, 4.0);
  a.super.assign(n - 1, -1.0);
  std::vector<double> b(n, 1.0);
  for (auto _ : st) benchmark::DoNotOptimize(numerics::solve_tridiagonal(a, b));
  st.SetComplexityN(st.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(hh_steps, avf, Method::avf);
BENCHMARK_CAPTURE(hh_steps, pavf, Method::pavf);
BENCHMARK_CAPTURE(hh_steps, pavf_c, Method::pavf_c);
BENCHMARK_CAPTURE(hh_steps, pavf_p, Method::pavf_p);
BENCHMARK_CAPTURE(kgs_steps, avf, Method::avf)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(kgs_steps, pavf, Method::pavf)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(kgs_steps, pavf_c, Method::pavf_c)->Unit(benchmark::kMicrosecond);
BENCHMARK_CAPTURE(kgs_steps, pavf_p, Method::pavf_p)->Unit(benchmark::kMicrosecond);
BENCHMARK(thomas)->RangeMultiplier(8)->Range(64, 32768)->Complexity(benchmark::oN);

BENCHMARK_MAIN();
