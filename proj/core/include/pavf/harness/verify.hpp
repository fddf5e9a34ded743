#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pavf::harness {

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct VerifyOptions {
  std::uint64_t seed = 20240601;
  std::size_t samples = 100;  // random states per model and property
};

/// Invariant suites over both built-in models: collapse to AVF, Itoh-Abe
/// identity, adjoint pairing, symmetry, discrete chain rule, hand-coded vs
/// generic schemes, gradient consistency.
std::vector<CheckResult> run_property_suites(const VerifyOptions& options = {});

}  // namespace pavf::harness
