#include "ovesim/harness.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "ovesim/errors.hpp"
#include "ovesim/parallel.hpp"
#include "ovesim/strategies.hpp"

namespace ovesim {

namespace {

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return std::sqrt(s / static_cast<double>(v.size() - 1));
}

// Namespacing constants for seed-path derivation.
constexpr std::uint64_t kPairTag = 0x70;
constexpr std::uint64_t kRunTag = 0x71;
constexpr std::uint64_t kBootTag = 0x72;

}  // namespace

void validate(const ExperimentConfig& config) {
  if (config.strategies.empty()) throw ConfigError("strategies: none selected");
  if (config.c_grid.empty()) throw ConfigError("c_grid: empty");
  for (double c : config.c_grid) {
    if (!(c >= 0.0 && c <= 1.0)) {
      throw ConfigError("c_grid: entries must lie in [0,1]");
    }
  }
  if (config.m_pairs < 2) throw ConfigError("m_pairs: must be >= 2");
  if (config.n_copies < 1) throw ConfigError("n_copies: must be >= 1");
  if (config.n_repeats < 2) throw ConfigError("n_repeats: must be >= 2");
  if (config.r_runs < 1) throw ConfigError("r_runs: must be >= 1");
  if (!(config.kappa > 0.0)) throw ConfigError("kappa: must be positive");
  if (!(config.gamma > 0.0 && config.gamma <= 1.0)) {
    throw ConfigError("gamma: must lie in (0,1]");
  }
  if (!(config.eta > 0.0 && config.eta < 1.0)) {
    throw ConfigError("eta: must lie in (0,1)");
  }
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw ConfigError("alpha: must lie in (0,1)");
  }
  if (!(config.c_t >= 0.0 && config.c_t <= 1.0)) {
    throw ConfigError("c_t: must lie in [0,1]");
  }
  if (config.dim < 2) throw ConfigError("dim: must be >= 2");

  for (Strategy s : config.strategies) {
    if ((s == Strategy::Tt || s == Strategy::Tp) && config.n_copies % 3 != 0) {
      throw ConfigError("n_copies: tomography strategies need a multiple of 3");
    }
    if (s == Strategy::Ost && config.n_copies % 2 != 0) {
      throw ConfigError("n_copies: ost needs an even value");
    }
  }
}

StrategyReport run_benchmark_with(const ExperimentConfig& config,
                                  Strategy label, std::size_t strategy_index,
                                  const EstimatorFn& estimator) {
  validate(config);
  const long m_count = config.m_pairs;
  const long n_rep = config.n_repeats;
  const long r_runs = config.r_runs;
  const std::uint64_t s_idx = static_cast<std::uint64_t>(strategy_index);

  StrategyReport report;
  report.strategy = label;
  report.n_copies = config.n_copies;
  report.seed = config.seed;
  report.points.resize(config.c_grid.size());

  for (std::size_t ci = 0; ci < config.c_grid.size(); ++ci) {
    const double c = config.c_grid[ci];
    // estimates[m][r][j] and the pairs' exact overlaps.
    std::vector<std::vector<std::vector<double>>> estimates(
        m_count, std::vector<std::vector<double>>(
                     r_runs, std::vector<double>(n_rep, 0.0)));
    std::vector<double> exact_c(m_count, 0.0);

    const long generated_runs = config.bootstrap ? 1 : r_runs;
    parallel_for(m_count, [&](long m) {
      RandomStream pair_stream = derive_stream(
          config.seed, {kPairTag, s_idx, ci, static_cast<std::uint64_t>(m)});
      const FixedOverlapPair pair =
          (label == Strategy::ScmQudit)
              ? sample_qudit_pair(c, static_cast<std::size_t>(config.dim),
                                  pair_stream)
              : sample_pair(c, pair_stream);
      exact_c[m] = overlap(pair.psi, pair.phi);
      for (long r = 0; r < generated_runs; ++r) {
        for (long j = 0; j < n_rep; ++j) {
          RandomStream stream = derive_stream(
              config.seed,
              {kRunTag, s_idx, ci, static_cast<std::uint64_t>(m),
               static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(j)});
          estimates[m][r][j] = estimator(pair, config.n_copies, stream);
        }
      }
    });

    // Exact-overlap statistics come from the generated (non-resampled) data.
    std::vector<double> per_pair_c_bar(m_count, 0.0);
    for (long m = 0; m < m_count; ++m) {
      double s = 0.0;
      long cells = 0;
      for (long r = 0; r < generated_runs; ++r) {
        for (double e : estimates[m][r]) {
          s += e;
          ++cells;
        }
      }
      per_pair_c_bar[m] = s / static_cast<double>(cells);
    }

    if (config.bootstrap) {
      std::vector<std::vector<double>> single(m_count);
      for (long m = 0; m < m_count; ++m) single[m] = estimates[m][0];
      RandomStream boot_stream = derive_stream(config.seed, {kBootTag, s_idx, ci});
      const auto synthetic = bootstrap_runs(single, r_runs, boot_stream);
      for (long m = 0; m < m_count; ++m) {
        for (long r = 0; r < r_runs; ++r) estimates[m][r] = synthetic[r][m];
      }
    }

    // Per-run average variance: v^r = mean_m of the unbiased sample variance
    // over the n repeats of pair m.
    std::vector<double> v_run(r_runs, 0.0);
    for (long r = 0; r < r_runs; ++r) {
      double acc = 0.0;
      for (long m = 0; m < m_count; ++m) {
        const double mu = mean_of(estimates[m][r]);
        double ss = 0.0;
        for (double e : estimates[m][r]) ss += (e - mu) * (e - mu);
        acc += ss / static_cast<double>(n_rep - 1);
      }
      v_run[r] = acc / static_cast<double>(m_count);
    }

    OverlapPointReport& point = report.points[ci];
    point.c_target = c;
    point.v_tilde = mean_of(v_run);
    point.v_tilde_std = sample_std(v_run, point.v_tilde);
    point.nv = static_cast<double>(config.n_copies) * point.v_tilde;
    point.nv_std = static_cast<double>(config.n_copies) * point.v_tilde_std;

    point.per_pair_c_bar = std::move(per_pair_c_bar);
    point.c_bar = mean_of(point.per_pair_c_bar);
    point.c_bar_std = sample_std(point.per_pair_c_bar, point.c_bar);
    point.per_pair_exact_c = exact_c;
    point.exact_c_bar = mean_of(exact_c);
    point.exact_c_bar_std = sample_std(exact_c, point.exact_c_bar);
  }
  return report;
}

VarianceReport run_benchmark(const ExperimentConfig& config) {
  validate(config);
  VarianceReport report;
  report.config = config;
  for (std::size_t si = 0; si < config.strategies.size(); ++si) {
    const Strategy s = config.strategies[si];
    const OstPhysics physics{config.gamma, config.eta, true};
    EstimatorFn estimator;
    switch (s) {
      case Strategy::Tt:
        estimator = [](const FixedOverlapPair& p, long n, RandomStream& rng) {
          return run_tt(p, n, rng).estimate;
        };
        break;
      case Strategy::Tp:
        estimator = [](const FixedOverlapPair& p, long n, RandomStream& rng) {
          return run_tp(p, n, rng).estimate;
        };
        break;
      case Strategy::Scm:
        estimator = [](const FixedOverlapPair& p, long n, RandomStream& rng) {
          return run_scm(p, n, rng).estimate;
        };
        break;
      case Strategy::Ost:
        estimator = [physics](const FixedOverlapPair& p, long n,
                              RandomStream& rng) {
          return run_ost(p, n, physics, rng).estimate;
        };
        break;
      case Strategy::Adaptive:
        estimator = [alpha = config.alpha, c_t = config.c_t](
                        const FixedOverlapPair& p, long n, RandomStream& rng) {
          return run_adaptive(p, n, alpha, c_t, rng).estimate;
        };
        break;
      case Strategy::ScmQudit:
        estimator = [](const FixedOverlapPair& p, long n, RandomStream& rng) {
          return run_scm_qudit(p, n, rng).estimate;
        };
        break;
    }
    report.strategies.push_back(run_benchmark_with(config, s, si, estimator));
  }
  return report;
}

std::vector<std::vector<std::vector<double>>> bootstrap_runs(
    const std::vector<std::vector<double>>& single_run, long r_runs,
    RandomStream& rng) {
  for (const auto& pair_estimates : single_run) {
    if (pair_estimates.size() < 2) {
      throw ConfigError("bootstrap needs at least 2 repeats per pair");
    }
  }
  std::vector<std::vector<std::vector<double>>> out(
      r_runs, std::vector<std::vector<double>>(single_run.size()));
  for (long r = 0; r < r_runs; ++r) {
    for (std::size_t m = 0; m < single_run.size(); ++m) {
      const auto& src = single_run[m];
      std::uniform_int_distribution<std::size_t> pick(0, src.size() - 1);
      auto& dst = out[r][m];
      dst.resize(src.size());
      for (double& e : dst) e = src[pick(rng)];
    }
  }
  return out;
}

VarianceFit fit_scaled_variance(const StrategyReport& report) {
  if (report.points.size() < 5) {
    throw FitError("scaled-variance fit needs at least 5 grid points");
  }
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(report.points.size());
  for (const OverlapPointReport& p : report.points) {
    const double x = p.c_target * (1.0 - p.c_target);
    sx += x;
    sy += p.nv;
    sxx += x * x;
    sxy += x * p.nv;
  }
  const double det = n * sxx - sx * sx;
  if (std::abs(det) < 1e-14 * std::max(1.0, n * sxx)) {
    throw FitError("scaled-variance fit design is singular");
  }
  VarianceFit fit;
  fit.alpha = (n * sxy - sx * sy) / det;
  fit.beta = (sy - fit.alpha * sx) / n;

  const double y_mean = sy / n;
  double ss_res = 0.0, ss_tot = 0.0;
  for (const OverlapPointReport& p : report.points) {
    const double x = p.c_target * (1.0 - p.c_target);
    const double resid = p.nv - (fit.alpha * x + fit.beta);
    ss_res += resid * resid;
    ss_tot += (p.nv - y_mean) * (p.nv - y_mean);
  }
  fit.r_squared = (ss_tot > 0.0) ? 1.0 - ss_res / ss_tot
                                 : (ss_res == 0.0 ? 1.0 : 0.0);
  return fit;
}

}  // namespace ovesim
