#include "ovesim.h"

#include <cstring>
#include <sstream>
#include <string>

#include "ovesim/config_io.hpp"
#include "ovesim/errors.hpp"
#include "ovesim/harness.hpp"
#include "ovesim/oracle_check.hpp"
#include "ovesim/tomography.hpp"

struct ove_config {
  ovesim::ExperimentConfig config;
};

struct ove_report {
  ovesim::VarianceReport report;
};

namespace {

thread_local std::string g_last_error;

template <class Fn>
ove_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return OVE_OK;
  } catch (const ovesim::DomainError& e) {
    g_last_error = e.what();
    return OVE_ERR_DOMAIN;
  } catch (const ovesim::ConfigError& e) {
    g_last_error = e.what();
    return OVE_ERR_CONFIG;
  } catch (const ovesim::ParseError& e) {
    g_last_error = e.what();
    return OVE_ERR_PARSE;
  } catch (const ovesim::NoCrossoverError& e) {
    g_last_error = e.what();
    return OVE_ERR_NO_CROSSOVER;
  } catch (const ovesim::EnumerationBoundError& e) {
    g_last_error = e.what();
    return OVE_ERR_ENUMERATION_BOUND;
  } catch (const ovesim::FitError& e) {
    g_last_error = e.what();
    return OVE_ERR_FIT;
  } catch (const ovesim::IoError& e) {
    g_last_error = e.what();
    return OVE_ERR_IO;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return OVE_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return OVE_ERR_INTERNAL;
  }
}

ove_status invalid_argument(const char* message) {
  g_last_error = message;
  return OVE_ERR_DOMAIN;
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ovesim::TheoryParams to_theory_params(const ove_theory_params* params) {
  if (!params) return {};
  return {params->kappa, params->gamma, params->eta, params->dim};
}

ovesim::ReportFormat parse_format(const char* format) {
  const std::string f = format ? format : "";
  if (f == "csv") return ovesim::ReportFormat::Csv;
  if (f == "json") return ovesim::ReportFormat::Json;
  throw ovesim::DomainError("unknown report format: '" + f + "'");
}

}  // namespace

extern "C" {

const char* ove_status_name(ove_status status) {
  switch (status) {
    case OVE_OK: return "ok";
    case OVE_ERR_DOMAIN: return "domain error";
    case OVE_ERR_CONFIG: return "configuration error";
    case OVE_ERR_PARSE: return "parse error";
    case OVE_ERR_NO_CROSSOVER: return "no crossover";
    case OVE_ERR_ENUMERATION_BOUND: return "enumeration bound exceeded";
    case OVE_ERR_FIT: return "fit error";
    case OVE_ERR_IO: return "io error";
    case OVE_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* ove_last_error(void) { return g_last_error.c_str(); }

void ove_string_free(char* text) { delete[] text; }

ove_status ove_config_default(ove_config** out) {
  if (!out) return invalid_argument("out must not be NULL");
  return guarded([&] { *out = new ove_config{}; });
}

ove_status ove_config_parse_file(const char* path, ove_config** out) {
  if (!path || !out) return invalid_argument("path and out must not be NULL");
  return guarded([&] {
    *out = new ove_config{ovesim::parse_config_file(path)};
  });
}

ove_status ove_config_parse_text(const char* text, ove_config** out) {
  if (!text || !out) return invalid_argument("text and out must not be NULL");
  return guarded([&] {
    *out = new ove_config{ovesim::parse_config_text(text)};
  });
}

ove_status ove_config_set(ove_config* config, const char* key,
                          const char* value) {
  if (!config || !key || !value) {
    return invalid_argument("config, key and value must not be NULL");
  }
  return guarded([&] {
    const std::string line =
        ovesim::serialize_config(config->config) + std::string(key) + " = " +
        value + "\n";
    config->config = ovesim::parse_config_text(line);
  });
}

ove_status ove_config_set_seed(ove_config* config, uint64_t seed) {
  if (!config) return invalid_argument("config must not be NULL");
  config->config.seed = seed;
  return OVE_OK;
}

ove_status ove_config_serialize(const ove_config* config, char** out_text) {
  if (!config || !out_text) {
    return invalid_argument("config and out_text must not be NULL");
  }
  return guarded([&] {
    *out_text = copy_string(ovesim::serialize_config(config->config));
  });
}

void ove_config_free(ove_config* config) { delete config; }

ove_status ove_benchmark_run(const ove_config* config, ove_report** out) {
  if (!config || !out) return invalid_argument("config and out must not be NULL");
  return guarded([&] {
    *out = new ove_report{ovesim::run_benchmark(config->config)};
  });
}

ove_status ove_report_render(const ove_report* report, const char* format,
                             char** out_text) {
  if (!report || !out_text) {
    return invalid_argument("report and out_text must not be NULL");
  }
  return guarded([&] {
    *out_text = copy_string(
        ovesim::render_report(report->report, parse_format(format)));
  });
}

ove_status ove_report_write(const ove_report* report, const char* format,
                            const char* path) {
  if (!report || !path) {
    return invalid_argument("report and path must not be NULL");
  }
  return guarded([&] {
    ovesim::emit_report(report->report, parse_format(format), path);
  });
}

void ove_report_free(ove_report* report) { delete report; }

ove_status ove_report_fit(const ove_report* report, const char* strategy,
                          double* alpha, double* beta, double* r_squared) {
  if (!report || !strategy || !alpha || !beta || !r_squared) {
    return invalid_argument("report, strategy and outputs must not be NULL");
  }
  return guarded([&] {
    const ovesim::Strategy tag = ovesim::strategy_from_string(strategy);
    for (const ovesim::StrategyReport& s : report->report.strategies) {
      if (s.strategy == tag) {
        const ovesim::VarianceFit fit = ovesim::fit_scaled_variance(s);
        *alpha = fit.alpha;
        *beta = fit.beta;
        *r_squared = fit.r_squared;
        return;
      }
    }
    throw ovesim::DomainError("report has no campaign for strategy '" +
                              std::string(strategy) + "'");
  });
}

void ove_theory_params_default(ove_theory_params* params) {
  if (!params) return;
  const ovesim::TheoryParams defaults{};
  params->kappa = defaults.kappa;
  params->gamma = defaults.gamma;
  params->eta = defaults.eta;
  params->dim = defaults.dim;
}

ove_status ove_theory_variance(const char* strategy, double c, long long n,
                               const ove_theory_params* params, double* out) {
  if (!strategy || !out) {
    return invalid_argument("strategy and out must not be NULL");
  }
  return guarded([&] {
    *out = ovesim::theory_variance(ovesim::strategy_from_string(strategy), c,
                                   static_cast<long>(n),
                                   to_theory_params(params));
  });
}

ove_status ove_fisher_information(const char* strategy, double c, long long n,
                                  const ove_theory_params* params,
                                  long long mc_samples, uint64_t mc_seed,
                                  double* out) {
  if (!strategy || !out) {
    return invalid_argument("strategy and out must not be NULL");
  }
  return guarded([&] {
    ovesim::TpFisherOptions opts;
    if (mc_samples > 0) opts.samples = static_cast<long>(mc_samples);
    if (mc_seed != 0) opts.seed = mc_seed;
    *out = ovesim::fisher_information(ovesim::strategy_from_string(strategy),
                                      c, static_cast<long>(n),
                                      to_theory_params(params), opts);
  });
}

ove_status ove_crossover(const char* strategy_a, const char* strategy_b,
                         const ove_theory_params* params, double* out) {
  if (!strategy_a || !strategy_b || !out) {
    return invalid_argument("strategies and out must not be NULL");
  }
  return guarded([&] {
    *out = ovesim::crossover(ovesim::strategy_from_string(strategy_a),
                             ovesim::strategy_from_string(strategy_b),
                             to_theory_params(params));
  });
}

ove_status ove_copy_overhead(const char* strategy, double c, double epsilon,
                             double prob, const ove_theory_params* params,
                             long long* out) {
  if (!strategy || !out) {
    return invalid_argument("strategy and out must not be NULL");
  }
  return guarded([&] {
    *out = ovesim::copy_overhead(ovesim::strategy_from_string(strategy), c,
                                 epsilon, prob, to_theory_params(params));
  });
}

ove_status ove_kappa_fit(const long long* n_grid, size_t n_grid_len,
                         long long samples_per_point, long long repeats,
                         uint64_t seed, double* kappa, double* std_error) {
  if (!n_grid || n_grid_len == 0 || !kappa || !std_error) {
    return invalid_argument("n_grid, kappa and std_error must not be NULL");
  }
  return guarded([&] {
    std::vector<long> grid(n_grid, n_grid + n_grid_len);
    ovesim::RandomStream rng = ovesim::derive_stream(seed, {0x7a});
    const ovesim::KappaFit fit = ovesim::estimate_kappa(
        grid, static_cast<long>(samples_per_point),
        static_cast<long>(repeats), rng);
    *kappa = fit.kappa;
    *std_error = fit.std_error;
  });
}

ove_status ove_oracle_check(const ove_config* config, char** out_text,
                            int* failures) {
  if (!config || !failures) {
    return invalid_argument("config and failures must not be NULL");
  }
  return guarded([&] {
    const ovesim::OracleCheckResult result =
        ovesim::run_oracle_checks(config->config);
    *failures = result.failures;
    if (out_text) {
      std::ostringstream text;
      for (const ovesim::OracleCheckLine& line : result.lines) {
        text << (line.ok ? "[ok]       " : "[MISMATCH] ") << line.name
             << ": oracle " << ovesim::format_real(line.oracle)
             << ", monte-carlo " << ovesim::format_real(line.monte_carlo)
             << ", tolerance " << ovesim::format_real(line.tolerance) << "\n";
      }
      *out_text = copy_string(text.str());
    }
  });
}

}  // extern "C"
