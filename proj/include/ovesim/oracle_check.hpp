#pragma once

#include <string>
#include <vector>

#include "ovesim/harness.hpp"

namespace ovesim {

struct OracleCheckLine {
  std::string name;
  double oracle = 0.0;
  double monte_carlo = 0.0;
  double tolerance = 0.0;  // 3 combined standard errors
  bool ok = false;
};

struct OracleCheckResult {
  std::vector<OracleCheckLine> lines;
  int failures = 0;
};

struct OracleCheckOptions {
  long pairs = 300;        // sampled (U, phase) pairs per comparison
  long repeats = 40;       // Monte Carlo runs per pair
  long binary_trials = 4000;  // Monte Carlo runs for SCM / OST moments
};

/// Small-instance agreement between the exact oracle and the Monte Carlo
/// strategy engine: paired TT/TP mean-squared-error comparisons at
/// N' in {2,3} and c in {0.25, 0.5, 0.75}, plus SCM and OST moment checks.
/// Uses the config's seed and gamma.
OracleCheckResult run_oracle_checks(const ExperimentConfig& config,
                                    const OracleCheckOptions& options = {});

}  // namespace ovesim
