#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fermiloss/state_io.hpp"

namespace fermiloss {

struct SuiteOptions {
  int n = 0;       // 0 = suite default
  int trials = 0;  // 0 = suite default
  std::uint64_t seed = 0;
  int workers = 1;
  std::size_t samples = 0;  // oracle suite only; 0 = default
};

struct SuiteResult {
  std::string suite;
  bool passed = false;
  Json summary;  // per-suite extremal deviations and parameters
};

const std::vector<std::string>& suite_names();

/// Runs one named invariant suite; deterministic for a given seed.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

/// e^{-iH} rho e^{iH} for the one-body Hamiltonian of `g`, on the space's sector.
CMatrix rotate_state(const CMatrix& rho, const FockSpace& space, const OneBodyGenerator& g);

}  // namespace fermiloss
