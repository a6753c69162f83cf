#pragma once

#include <string>
#include <vector>

#include "ovesim/harness.hpp"

namespace ovesim {

/// Flat key/value campaign config. Recognized keys: strategies, c_grid,
/// m_pairs, n_copies, n_repeats, r_runs, seed, kappa, gamma, eta, alpha,
/// c_t, bootstrap. Lists are comma separated; reals accept fraction
/// literals like 1/30; '#' starts a comment. Unknown keys, type mismatches
/// and range violations raise ParseError naming the key. Missing keys take
/// the defaults.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_file(const std::string& path);

/// Canonical text form; reals carry 9 significant digits, so
/// parse(serialize(parse(x))) is a fixed point.
std::string serialize_config(const ExperimentConfig& config);

/// One emitted table row per (strategy, c_target).
struct OutputRow {
  std::string strategy;
  double c_target = 0.0;
  double c_bar = 0.0;
  double c_bar_std = 0.0;
  long n_copies = 0;
  double nv = 0.0;
  double nv_std = 0.0;
  double theory_nv = 0.0;
  std::uint64_t seed = 0;
};

/// Rows of the report with theory_nv evaluated from the same campaign
/// parameters. The adaptive strategy has no closed-form row; it is
/// referenced against min(TP, SCM) theory.
std::vector<OutputRow> report_rows(const VarianceReport& report);

enum class ReportFormat { Csv, Json };

std::string rows_to_csv(const std::vector<OutputRow>& rows);
std::string rows_to_json(const std::vector<OutputRow>& rows);
std::vector<OutputRow> rows_from_csv(const std::string& text);
std::vector<OutputRow> rows_from_json(const std::string& text);

std::string render_report(const VarianceReport& report, ReportFormat format);

/// Writes the rendered report to `path`; failures raise IoError naming the
/// path. Output is byte-identical across runs with the same config and seed.
void emit_report(const VarianceReport& report, ReportFormat format,
                 const std::string& path);

/// 9-significant-digit decimal form used by both emitters.
std::string format_real(double value);

}  // namespace ovesim
