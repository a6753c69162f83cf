// Command-line front end for the overlap-estimation benchmark library.
// Talks to the core exclusively through the C API in ovesim.h.

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ovesim.h"

namespace {

int fail_with(ove_status status) {
  std::fprintf(stderr, "error: %s: %s\n", ove_status_name(status),
               ove_last_error());
  return 1;
}

struct TheoryFlags {
  double kappa = 0.0;
  double gamma = 0.0;
  double eta = 0.0;
  long dim = 0;

  ove_theory_params resolve() const {
    ove_theory_params params;
    ove_theory_params_default(&params);
    if (kappa > 0.0) params.kappa = kappa;
    if (gamma > 0.0) params.gamma = gamma;
    if (eta > 0.0) params.eta = eta;
    if (dim > 0) params.dim = dim;
    return params;
  }
};

void add_theory_flags(CLI::App* cmd, TheoryFlags* flags) {
  cmd->add_option("--kappa", flags->kappa, "scaled average infidelity");
  cmd->add_option("--gamma", flags->gamma, "photon indistinguishability");
  cmd->add_option("--eta", flags->eta, "beam-splitter reflectivity");
  cmd->add_option("--dim", flags->dim, "state dimension");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"overlap estimation strategy benchmark"};
  app.require_subcommand(1);

  bool seed_set = false;
  std::uint64_t seed = 0;
  app.add_option("--seed", seed, "master seed override")
      ->each([&](const std::string&) { seed_set = true; });

  // benchmark <config> [--out file] [--format csv|json]
  auto* benchmark = app.add_subcommand("benchmark", "run a variance campaign");
  std::string config_path;
  std::string out_path;
  std::string format = "csv";
  benchmark->add_option("config", config_path, "campaign config file")
      ->required();
  benchmark->add_option("--out", out_path, "output file (default stdout)");
  benchmark->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  // theory --strategy --c --n
  auto* theory = app.add_subcommand("theory", "closed-form scaled variance");
  std::string strategy;
  double c_value = 0.0;
  long long n_copies = 900;
  TheoryFlags theory_flags;
  theory->add_option("--strategy", strategy, "tt|tp|scm|ost|scm_qudit")
      ->required();
  theory->add_option("--c", c_value, "overlap")->required();
  theory->add_option("--n", n_copies, "copy count");
  add_theory_flags(theory, &theory_flags);

  // crossover --a --b
  auto* cross = app.add_subcommand("crossover",
                                   "overlap where two variance curves meet");
  std::string strat_a, strat_b;
  TheoryFlags cross_flags;
  cross->add_option("--a", strat_a, "first strategy")->required();
  cross->add_option("--b", strat_b, "second strategy")->required();
  add_theory_flags(cross, &cross_flags);

  // overhead --strategy --c --eps --prob
  auto* overhead = app.add_subcommand("overhead", "Chebyshev copy overhead");
  std::string oh_strategy;
  double oh_c = 0.0, oh_eps = 0.0, oh_prob = 0.0;
  TheoryFlags oh_flags;
  overhead->add_option("--strategy", oh_strategy, "strategy tag")->required();
  overhead->add_option("--c", oh_c, "overlap")->required();
  overhead->add_option("--eps", oh_eps, "error bound")->required();
  overhead->add_option("--prob", oh_prob, "failure probability")->required();
  add_theory_flags(overhead, &oh_flags);

  // oracle-check <config>
  auto* oracle = app.add_subcommand(
      "oracle-check", "compare the Monte Carlo engine with the exact oracle");
  std::string oracle_config_path;
  oracle->add_option("config", oracle_config_path,
                     "campaign config file (optional; defaults)");

  // kappa-fit
  auto* kappa_cmd =
      app.add_subcommand("kappa-fit", "fit the scaled tomography infidelity");
  std::vector<long long> kappa_grid = {300, 900, 3000};
  long long kappa_samples = 4000;
  long long kappa_repeats = 20;
  kappa_cmd->add_option("--grid", kappa_grid,
                        "copy-count grid (multiples of 3)");
  kappa_cmd->add_option("--samples", kappa_samples, "states per grid point");
  kappa_cmd->add_option("--repeats", kappa_repeats, "tomography runs per state");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (benchmark->parsed()) {
    ove_config* config = nullptr;
    ove_status status = ove_config_parse_file(config_path.c_str(), &config);
    if (status != OVE_OK) return fail_with(status);
    if (seed_set) ove_config_set_seed(config, seed);

    ove_report* report = nullptr;
    status = ove_benchmark_run(config, &report);
    ove_config_free(config);
    if (status != OVE_OK) return fail_with(status);

    if (out_path.empty()) {
      char* text = nullptr;
      status = ove_report_render(report, format.c_str(), &text);
      if (status == OVE_OK) {
        std::fputs(text, stdout);
        ove_string_free(text);
      }
    } else {
      status = ove_report_write(report, format.c_str(), out_path.c_str());
    }
    ove_report_free(report);
    return status == OVE_OK ? 0 : fail_with(status);
  }

  if (theory->parsed()) {
    const ove_theory_params params = theory_flags.resolve();
    double v = 0.0;
    const ove_status status =
        ove_theory_variance(strategy.c_str(), c_value, n_copies, &params, &v);
    if (status != OVE_OK) return fail_with(status);
    std::printf("Nv = %.9g\n", static_cast<double>(n_copies) * v);
    return 0;
  }

  if (cross->parsed()) {
    const ove_theory_params params = cross_flags.resolve();
    double c_star = 0.0;
    const ove_status status =
        ove_crossover(strat_a.c_str(), strat_b.c_str(), &params, &c_star);
    if (status != OVE_OK) return fail_with(status);
    std::printf("%.9g\n", c_star);
    return 0;
  }

  if (overhead->parsed()) {
    const ove_theory_params params = oh_flags.resolve();
    long long copies = 0;
    const ove_status status = ove_copy_overhead(oh_strategy.c_str(), oh_c,
                                                oh_eps, oh_prob, &params,
                                                &copies);
    if (status != OVE_OK) return fail_with(status);
    std::printf("%lld\n", copies);
    return 0;
  }

  if (oracle->parsed()) {
    ove_config* config = nullptr;
    ove_status status =
        oracle_config_path.empty()
            ? ove_config_default(&config)
            : ove_config_parse_file(oracle_config_path.c_str(), &config);
    if (status != OVE_OK) return fail_with(status);
    if (seed_set) ove_config_set_seed(config, seed);

    char* text = nullptr;
    int failures = 0;
    status = ove_oracle_check(config, &text, &failures);
    ove_config_free(config);
    if (status != OVE_OK) return fail_with(status);
    std::fputs(text, stdout);
    ove_string_free(text);
    std::printf("oracle-check: %s\n", failures == 0 ? "OK" : "FAILED");
    return failures == 0 ? 0 : 1;
  }

  if (kappa_cmd->parsed()) {
    double kappa = 0.0, std_error = 0.0;
    const ove_status status = ove_kappa_fit(
        kappa_grid.data(), kappa_grid.size(), kappa_samples, kappa_repeats,
        seed_set ? seed : 0x6b61, &kappa, &std_error);
    if (status != OVE_OK) return fail_with(status);
    std::printf("kappa = %.9g\n", kappa);
    std::printf("kappa_stderr = %.9g\n", std_error);
    return 0;
  }

  return 2;
}
