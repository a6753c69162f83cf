#include "ovesim/oracle_check.hpp"

#include <cmath>
#include <functional>

#include "ovesim/oracle.hpp"
#include "ovesim/parallel.hpp"
#include "ovesim/strategies.hpp"

namespace ovesim {

namespace {

struct PairedComparison {
  double oracle_mean = 0.0;
  double mc_mean = 0.0;
  double diff_se = 0.0;
};

/// Paired comparison over a shared pair ensemble: for each sampled pair the
/// oracle value is exact and the Monte Carlo value averages `repeats`
/// independent runs, so the difference has zero mean when engine and oracle
/// agree. The reported tolerance is the standard error of the mean
/// difference.
PairedComparison compare_paired(
    double c, long pairs, long repeats, std::uint64_t seed,
    const std::function<double(const FixedOverlapPair&)>& oracle_fn,
    const std::function<double(const FixedOverlapPair&, RandomStream&)>&
        mc_sq_error_fn) {
  std::vector<double> oracle(pairs), mc(pairs);
  parallel_for(pairs, [&](long i) {
    RandomStream pair_stream =
        derive_stream(seed, {0xC0, static_cast<std::uint64_t>(i)});
    const FixedOverlapPair pair = sample_pair(c, pair_stream);
    oracle[i] = oracle_fn(pair);
    double acc = 0.0;
    for (long r = 0; r < repeats; ++r) {
      RandomStream run_stream =
          derive_stream(seed, {0xC1, static_cast<std::uint64_t>(i),
                               static_cast<std::uint64_t>(r)});
      acc += mc_sq_error_fn(pair, run_stream);
    }
    mc[i] = acc / static_cast<double>(repeats);
  });

  PairedComparison out;
  double diff_sum = 0.0;
  for (long i = 0; i < pairs; ++i) {
    out.oracle_mean += oracle[i];
    out.mc_mean += mc[i];
    diff_sum += mc[i] - oracle[i];
  }
  out.oracle_mean /= static_cast<double>(pairs);
  out.mc_mean /= static_cast<double>(pairs);
  const double diff_mean = diff_sum / static_cast<double>(pairs);
  double ss = 0.0;
  for (long i = 0; i < pairs; ++i) {
    const double d = (mc[i] - oracle[i]) - diff_mean;
    ss += d * d;
  }
  out.diff_se = std::sqrt(ss / static_cast<double>(pairs - 1) /
                          static_cast<double>(pairs));
  return out;
}

}  // namespace

OracleCheckResult run_oracle_checks(const ExperimentConfig& config,
                                    const OracleCheckOptions& options) {
  OracleCheckResult result;
  const std::uint64_t seed = config.seed;
  auto push = [&](const std::string& name, double oracle_v, double mc_v,
                  double tol) {
    const bool ok = std::abs(mc_v - oracle_v) <= tol;
    result.lines.push_back({name, oracle_v, mc_v, tol, ok});
    if (!ok) ++result.failures;
  };

  const double c_values[] = {0.25, 0.5, 0.75};
  const long n_values[] = {6, 9};  // N' = 2, 3
  std::uint64_t salt = 1;
  for (long n : n_values) {
    for (double c : c_values) {
      const auto tt = compare_paired(
          c, options.pairs, options.repeats, mix64(seed) + salt++,
          [n](const FixedOverlapPair& p) { return exact_tt_variance(p, n).variance; },
          [n, c](const FixedOverlapPair& p, RandomStream& rng) {
            const double e = run_tt(p, n, rng).estimate - c;
            return e * e;
          });
      push("tt mse n=" + std::to_string(n) + " c=" + std::to_string(c),
           tt.oracle_mean, tt.mc_mean, 3.0 * tt.diff_se);

      const auto tp = compare_paired(
          c, options.pairs, options.repeats, mix64(seed) + salt++,
          [n](const FixedOverlapPair& p) { return exact_tp_variance(p, n).variance; },
          [n, c](const FixedOverlapPair& p, RandomStream& rng) {
            const double e = run_tp(p, n, rng).estimate - c;
            return e * e;
          });
      push("tp mse n=" + std::to_string(n) + " c=" + std::to_string(c),
           tp.oracle_mean, tp.mc_mean, 3.0 * tp.diff_se);
    }
  }

  // SCM and OST outcome laws depend on the pair only through c, so one pair
  // stands in for the ensemble.
  {
    const double c = 0.5;
    const long n = 100;
    RandomStream pair_stream = derive_stream(seed, {0xC2});
    const FixedOverlapPair pair = sample_pair(c, pair_stream);

    const ExactResult scm = exact_scm_moments(c, n);
    std::vector<double> estimates(options.binary_trials);
    RandomStream scm_stream = derive_stream(seed, {0xC3});
    for (double& e : estimates) e = run_scm(pair, n, scm_stream).estimate;
    double mean = 0.0;
    for (double e : estimates) mean += e;
    mean /= static_cast<double>(options.binary_trials);
    double m2 = 0.0, m4 = 0.0;
    for (double e : estimates) {
      const double d = e - mean;
      m2 += d * d;
      m4 += d * d * d * d;
    }
    m2 /= static_cast<double>(options.binary_trials);
    m4 /= static_cast<double>(options.binary_trials);
    const double var = m2 * static_cast<double>(options.binary_trials) /
                       static_cast<double>(options.binary_trials - 1);
    const double se_mean = std::sqrt(var / static_cast<double>(options.binary_trials));
    const double se_var = std::sqrt(std::max(m4 - m2 * m2, 0.0) /
                                    static_cast<double>(options.binary_trials));
    push("scm mean c=0.5 n=100", scm.mean, mean, 3.0 * se_mean);
    push("scm variance c=0.5 n=100", scm.variance, var, 3.0 * se_var);

    const OstPhysics physics{config.gamma, 0.5, true};
    const ExactResult ost = exact_ost_moments(c, config.gamma, n);
    RandomStream ost_stream = derive_stream(seed, {0xC4});
    for (double& e : estimates) e = run_ost(pair, n, physics, ost_stream).estimate;
    mean = 0.0;
    for (double e : estimates) mean += e;
    mean /= static_cast<double>(options.binary_trials);
    m2 = m4 = 0.0;
    for (double e : estimates) {
      const double d = e - mean;
      m2 += d * d;
      m4 += d * d * d * d;
    }
    m2 /= static_cast<double>(options.binary_trials);
    m4 /= static_cast<double>(options.binary_trials);
    const double ost_var = m2 * static_cast<double>(options.binary_trials) /
                           static_cast<double>(options.binary_trials - 1);
    const double ost_se_mean =
        std::sqrt(ost_var / static_cast<double>(options.binary_trials));
    const double ost_se_var = std::sqrt(std::max(m4 - m2 * m2, 0.0) /
                                        static_cast<double>(options.binary_trials));
    push("ost mean c=0.5 n=100", ost.mean, mean, 3.0 * ost_se_mean);
    push("ost variance c=0.5 n=100", ost.variance, ost_var, 3.0 * ost_se_var);
  }

  return result;
}

}  // namespace ovesim
