#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ovesim/analytics.hpp"
#include "ovesim/rng.hpp"
#include "ovesim/states.hpp"

namespace ovesim {

/// Campaign parameters. Defaults mirror the reference experiment:
/// M = 100 pairs, N = 900 copies, n = 20 repeats, R = 10 runs over the
/// 11-point overlap grid.
struct ExperimentConfig {
  std::vector<Strategy> strategies = {Strategy::Tt, Strategy::Tp, Strategy::Scm,
                                      Strategy::Ost};
  std::vector<double> c_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5,
                                0.6, 0.7, 0.8, 0.9, 1.0};
  long m_pairs = 100;
  long n_copies = 900;
  long n_repeats = 20;
  long r_runs = 10;
  std::uint64_t seed = 20250913;
  double kappa = 11.0 / 8.0;
  double gamma = 0.965;
  double eta = 0.5;
  double alpha = 1.0 / 30.0;
  double c_t = 4.0 / 11.0;
  bool bootstrap = false;
  // Pair dimension for scm_qudit campaigns; not a config-file key.
  long dim = 2;
};

void validate(const ExperimentConfig& config);

/// Aggregates for one overlap grid point.
struct OverlapPointReport {
  double c_target = 0.0;
  // Estimator-based exact-overlap statistics: c_bar_m = mean over (j, r) of
  // the estimates for pair m; c_bar / c_bar_std are their mean and spread.
  double c_bar = 0.0;
  double c_bar_std = 0.0;
  // The sampled pairs' true overlaps (known exactly in simulation).
  double exact_c_bar = 0.0;
  double exact_c_bar_std = 0.0;
  double v_tilde = 0.0;
  double v_tilde_std = 0.0;
  double nv = 0.0;
  double nv_std = 0.0;
  std::vector<double> per_pair_c_bar;
  std::vector<double> per_pair_exact_c;
};

struct StrategyReport {
  Strategy strategy = Strategy::Scm;
  long n_copies = 0;
  std::uint64_t seed = 0;
  std::vector<OverlapPointReport> points;
};

struct VarianceReport {
  ExperimentConfig config;
  std::vector<StrategyReport> strategies;
};

/// Runs the full campaign: for every strategy and overlap, samples M pairs,
/// produces the estimate set {c~_m^{j,r}}, and reduces it to the average
/// variance and its run-to-run uncertainty (unbiased per-pair sample
/// variance over j, mean over m, mean/std over r), plus exact-overlap
/// statistics. Work is parallel over pairs; every (c, m, j, r) cell has a
/// seed-derived stream, so the report is identical for any thread count.
VarianceReport run_benchmark(const ExperimentConfig& config);

/// One estimate from n copies of the pair.
using EstimatorFn =
    std::function<double(const FixedOverlapPair&, long, RandomStream&)>;

/// Same pipeline with a caller-supplied estimator (strategy stubs in tests).
/// `strategy_index` offsets the seed derivation the way the strategy's
/// position in ExperimentConfig::strategies would.
StrategyReport run_benchmark_with(const ExperimentConfig& config,
                                  Strategy label, std::size_t strategy_index,
                                  const EstimatorFn& estimator);

/// Bootstrap resampling of a single run: for each pair, draws n estimates
/// with replacement from that pair's observed estimates, r_runs times.
/// single_run[m] holds pair m's estimates.
std::vector<std::vector<std::vector<double>>> bootstrap_runs(
    const std::vector<std::vector<double>>& single_run, long r_runs,
    RandomStream& rng);

struct VarianceFit {
  double alpha = 0.0;      // coefficient of c(1-c)
  double beta = 0.0;       // intercept
  double r_squared = 0.0;
};

/// Least-squares fit of the scaled average variance to alpha*c(1-c) + beta
/// over the report's grid (at least 5 points).
VarianceFit fit_scaled_variance(const StrategyReport& report);

}  // namespace ovesim
