#include <cmath>
#include <cstdlib>

#include <doctest.h>

#include "ovesim/config_io.hpp"
#include "ovesim/errors.hpp"
#include "ovesim/harness.hpp"

using namespace ovesim;

namespace {

ExperimentConfig small_config() {
  ExperimentConfig config;
  config.strategies = {Strategy::Scm};
  config.c_grid = {0.0, 0.5, 1.0};
  config.m_pairs = 8;
  config.n_copies = 90;
  config.n_repeats = 5;
  config.r_runs = 3;
  config.seed = 314159;
  return config;
}

}  // namespace

TEST_CASE("config validation") {
  ExperimentConfig config = small_config();
  SUBCASE("single pair is rejected") {
    config.m_pairs = 1;
    CHECK_THROWS_AS(validate(config), ConfigError);
  }
  SUBCASE("single repeat is rejected") {
    config.n_repeats = 1;
    CHECK_THROWS_AS(validate(config), ConfigError);
  }
  SUBCASE("tomography divisibility is enforced per strategy") {
    config.strategies = {Strategy::Tt};
    config.n_copies = 91;
    CHECK_THROWS_AS(validate(config), ConfigError);
    config.strategies = {Strategy::Scm};
    CHECK_NOTHROW(validate(config));
  }
}

TEST_CASE("constant stub collapses the variance to zero") {
  ExperimentConfig config = small_config();
  config.m_pairs = 2;
  config.n_repeats = 2;
  config.r_runs = 1;
  const StrategyReport report = run_benchmark_with(
      config, Strategy::Scm, 0,
      [](const FixedOverlapPair& p, long, RandomStream&) { return p.c; });
  for (const OverlapPointReport& point : report.points) {
    CHECK(point.v_tilde == 0.0);
    CHECK(point.v_tilde_std == 0.0);
    CHECK(point.c_bar == doctest::Approx(point.c_target));
  }
}

TEST_CASE("pipeline recovers a known injected variance") {
  // Stub estimator: Normal(c, v0). The pipeline's average variance must
  // land on v0 within 3/sqrt(M n R) relative error.
  ExperimentConfig config = small_config();
  config.c_grid = {0.5};
  config.m_pairs = 50;
  config.n_repeats = 10;
  config.r_runs = 4;
  const double v0 = 1e-3;
  const StrategyReport report = run_benchmark_with(
      config, Strategy::Scm, 0,
      [v0](const FixedOverlapPair& p, long, RandomStream& rng) {
        std::normal_distribution<double> noise(p.c, std::sqrt(v0));
        return noise(rng);
      });
  const double rel =
      3.0 / std::sqrt(static_cast<double>(config.m_pairs * config.n_repeats *
                                          config.r_runs));
  CHECK(std::abs(report.points[0].v_tilde - v0) / v0 < rel);
}

TEST_CASE("scm campaign matches the closed form") {
  ExperimentConfig config = small_config();
  config.c_grid = {0.5};
  config.m_pairs = 40;
  config.n_repeats = 10;
  config.r_runs = 5;
  config.n_copies = 900;
  const VarianceReport report = run_benchmark(config);
  const OverlapPointReport& point = report.strategies[0].points[0];
  CHECK(std::abs(point.nv - 0.75) <
        std::max(3.0 * point.nv_std, 0.08));
  CHECK(point.exact_c_bar == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(point.exact_c_bar_std < 1e-10);
}

TEST_CASE("scaled variance is n-invariant for scm") {
  ExperimentConfig config = small_config();
  config.c_grid = {0.5};
  config.m_pairs = 40;
  config.n_repeats = 10;
  config.r_runs = 5;

  config.n_copies = 300;
  const OverlapPointReport a = run_benchmark(config).strategies[0].points[0];
  config.n_copies = 900;
  const OverlapPointReport b = run_benchmark(config).strategies[0].points[0];
  const double tol =
      3.0 * std::sqrt(a.nv_std * a.nv_std + b.nv_std * b.nv_std);
  CHECK(std::abs(a.nv - b.nv) <= std::max(tol, 0.05));
}

TEST_CASE("reports are reproducible") {
  const ExperimentConfig config = small_config();
  SUBCASE("same seed, same bytes") {
    const std::string a = render_report(run_benchmark(config), ReportFormat::Csv);
    const std::string b = render_report(run_benchmark(config), ReportFormat::Csv);
    CHECK(a == b);
  }
  SUBCASE("independent of the worker thread count") {
    setenv("OVESIM_THREADS", "1", 1);
    const std::string one = render_report(run_benchmark(config), ReportFormat::Csv);
    setenv("OVESIM_THREADS", "5", 1);
    const std::string five = render_report(run_benchmark(config), ReportFormat::Csv);
    unsetenv("OVESIM_THREADS");
    CHECK(one == five);
  }
  SUBCASE("different seeds differ") {
    ExperimentConfig other = config;
    other.seed += 1;
    CHECK(render_report(run_benchmark(config), ReportFormat::Csv) !=
          render_report(run_benchmark(other), ReportFormat::Csv));
  }
}

TEST_CASE("bootstrap resampling") {
  SUBCASE("constant input gives zero synthetic variance") {
    RandomStream rng = derive_stream(61, {1});
    const std::vector<std::vector<double>> single(4,
                                                  std::vector<double>(6, 0.3));
    const auto runs = bootstrap_runs(single, 5, rng);
    CHECK(runs.size() == 5);
    for (const auto& run : runs) {
      for (const auto& pair_estimates : run) {
        for (double e : pair_estimates) CHECK(e == 0.3);
      }
    }
  }
  SUBCASE("bit-for-bit reproducible under a fixed stream") {
    const std::vector<std::vector<double>> single = {{0.1, 0.2, 0.3, 0.4},
                                                     {0.5, 0.6, 0.7, 0.8}};
    RandomStream a = derive_stream(61, {2});
    RandomStream b = derive_stream(61, {2});
    CHECK(bootstrap_runs(single, 3, a) == bootstrap_runs(single, 3, b));
  }
  SUBCASE("bootstrap uncertainty tracks direct replication") {
    ExperimentConfig direct = small_config();
    direct.c_grid = {0.5};
    direct.m_pairs = 50;
    direct.n_repeats = 20;
    direct.r_runs = 10;
    direct.n_copies = 900;
    ExperimentConfig boot = direct;
    boot.bootstrap = true;

    const OverlapPointReport d = run_benchmark(direct).strategies[0].points[0];
    const OverlapPointReport b = run_benchmark(boot).strategies[0].points[0];
    CHECK(b.v_tilde == doctest::Approx(d.v_tilde).epsilon(0.25));
    const double ratio = b.v_tilde_std / d.v_tilde_std;
    CHECK(ratio > 0.5);
    CHECK(ratio < 2.0);
  }
}

TEST_CASE("scaled variance fit") {
  SUBCASE("exact synthetic input") {
    StrategyReport report;
    report.strategy = Strategy::Scm;
    report.n_copies = 900;
    for (int i = 0; i <= 10; ++i) {
      OverlapPointReport p;
      p.c_target = i / 10.0;
      p.nv = 2.0 * p.c_target * (1.0 - p.c_target);
      report.points.push_back(p);
    }
    const VarianceFit fit = fit_scaled_variance(report);
    CHECK(fit.alpha == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(std::abs(fit.beta) < 1e-12);
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("too few points") {
    StrategyReport report;
    report.points.resize(4);
    CHECK_THROWS_AS(fit_scaled_variance(report), FitError);
  }
  SUBCASE("singular design") {
    StrategyReport report;
    for (int i = 0; i < 6; ++i) {
      OverlapPointReport p;
      p.c_target = 0.5;
      p.nv = 1.0;
      report.points.push_back(p);
    }
    CHECK_THROWS_AS(fit_scaled_variance(report), FitError);
  }
  SUBCASE("tt campaign lands near the asymptotic coefficient") {
    ExperimentConfig config;
    config.strategies = {Strategy::Tt};
    config.m_pairs = 40;
    config.n_repeats = 10;
    config.r_runs = 4;
    config.seed = 2718;
    const VarianceReport report = run_benchmark(config);
    const VarianceFit fit = fit_scaled_variance(report.strategies[0]);
    CHECK(fit.alpha > 5.1);
    CHECK(fit.alpha < 5.9);
    CHECK(fit.r_squared > 0.98);
  }
}

TEST_CASE("adaptive campaign runs through the harness") {
  ExperimentConfig config = small_config();
  config.strategies = {Strategy::Adaptive};
  config.c_grid = {0.1, 0.9};
  config.n_copies = 900;
  config.m_pairs = 10;
  config.n_repeats = 4;
  config.r_runs = 2;
  const VarianceReport report = run_benchmark(config);
  CHECK(report.strategies[0].points.size() == 2);
  for (const auto& point : report.strategies[0].points) {
    CHECK(point.nv >= 0.0);
  }
}
