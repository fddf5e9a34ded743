#pragma once

#include <span>
#include <vector>

#include "pavf/harness/experiment.hpp"

namespace pavf::harness {

struct CostRow {
  Method method = Method::pavf;
  double seconds = 0.0;  // median over repetitions
  std::vector<double> samples;
  std::size_t iterations = 0;
  std::size_t steps = 0;
};

/// Times each method on the same physics configuration. One warm-up run is
/// discarded, then the median of `repetitions` runs is reported. Runs are
/// serial on the calling thread.
std::vector<CostRow> cost_benchmark(const ExperimentSpec& spec, std::span<const Method> methods,
                                    int repetitions = 3);

}  // namespace pavf::harness
