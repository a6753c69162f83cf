#include "ovesim/config_io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ovesim/errors.hpp"

namespace ovesim {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  // Fraction literals keep campaign files readable (alpha = 1/30).
  const auto slash = value.find('/');
  if (slash != std::string::npos) {
    const double num = parse_real(key, trim(value.substr(0, slash)));
    const double den = parse_real(key, trim(value.substr(slash + 1)));
    if (den == 0.0) throw ParseError(key + ": division by zero");
    return num / den;
  }
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(value.c_str(), &end);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE) {
    throw ParseError(key + ": expected a real number, got '" + value + "'");
  }
  return v;
}

long parse_int(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const long v = std::strtol(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE) {
    throw ParseError(key + ": expected an integer, got '" + value + "'");
  }
  return v;
}

std::uint64_t parse_seed(const std::string& key, const std::string& value) {
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
  if (end == value.c_str() || *end != '\0' || errno == ERANGE) {
    throw ParseError(key + ": expected an unsigned integer, got '" + value + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ParseError(key + ": expected true/false, got '" + value + "'");
}

void check_range(const std::string& key, bool ok) {
  if (!ok) throw ParseError(key + ": value out of range");
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig config;
  std::stringstream stream(text);
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "strategies") {
      config.strategies.clear();
      for (const std::string& tag : split(value, ',')) {
        try {
          config.strategies.push_back(strategy_from_string(tag));
        } catch (const DomainError&) {
          throw ParseError("strategies: unknown tag '" + tag + "'");
        }
      }
      check_range(key, !config.strategies.empty());
    } else if (key == "c_grid") {
      config.c_grid.clear();
      for (const std::string& item : split(value, ',')) {
        const double c = parse_real(key, item);
        check_range(key, c >= 0.0 && c <= 1.0);
        config.c_grid.push_back(c);
      }
      check_range(key, !config.c_grid.empty());
    } else if (key == "m_pairs") {
      config.m_pairs = parse_int(key, value);
      check_range(key, config.m_pairs >= 2);
    } else if (key == "n_copies") {
      config.n_copies = parse_int(key, value);
      check_range(key, config.n_copies >= 1);
    } else if (key == "n_repeats") {
      config.n_repeats = parse_int(key, value);
      check_range(key, config.n_repeats >= 2);
    } else if (key == "r_runs") {
      config.r_runs = parse_int(key, value);
      check_range(key, config.r_runs >= 1);
    } else if (key == "seed") {
      config.seed = parse_seed(key, value);
    } else if (key == "kappa") {
      config.kappa = parse_real(key, value);
      check_range(key, config.kappa > 0.0);
    } else if (key == "gamma") {
      config.gamma = parse_real(key, value);
      check_range(key, config.gamma > 0.0 && config.gamma <= 1.0);
    } else if (key == "eta") {
      config.eta = parse_real(key, value);
      check_range(key, config.eta > 0.0 && config.eta < 1.0);
    } else if (key == "alpha") {
      config.alpha = parse_real(key, value);
      check_range(key, config.alpha > 0.0 && config.alpha < 1.0);
    } else if (key == "c_t") {
      config.c_t = parse_real(key, value);
      check_range(key, config.c_t >= 0.0 && config.c_t <= 1.0);
    } else if (key == "bootstrap") {
      config.bootstrap = parse_bool(key, value);
    } else {
      throw ParseError("unknown key '" + key + "'");
    }
  }
  return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

std::string serialize_config(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "strategies = ";
  for (std::size_t i = 0; i < config.strategies.size(); ++i) {
    out << (i ? "," : "") << to_string(config.strategies[i]);
  }
  out << "\nc_grid = ";
  for (std::size_t i = 0; i < config.c_grid.size(); ++i) {
    out << (i ? "," : "") << format_real(config.c_grid[i]);
  }
  out << "\nm_pairs = " << config.m_pairs;
  out << "\nn_copies = " << config.n_copies;
  out << "\nn_repeats = " << config.n_repeats;
  out << "\nr_runs = " << config.r_runs;
  out << "\nseed = " << config.seed;
  out << "\nkappa = " << format_real(config.kappa);
  out << "\ngamma = " << format_real(config.gamma);
  out << "\neta = " << format_real(config.eta);
  out << "\nalpha = " << format_real(config.alpha);
  out << "\nc_t = " << format_real(config.c_t);
  out << "\nbootstrap = " << (config.bootstrap ? "true" : "false") << "\n";
  return out.str();
}

std::vector<OutputRow> report_rows(const VarianceReport& report) {
  const TheoryParams params{report.config.kappa, report.config.gamma,
                            report.config.eta, std::max(report.config.dim, 2L)};
  std::vector<OutputRow> rows;
  for (const StrategyReport& strat : report.strategies) {
    for (const OverlapPointReport& point : strat.points) {
      OutputRow row;
      row.strategy = std::string(to_string(strat.strategy));
      row.c_target = point.c_target;
      row.c_bar = point.c_bar;
      row.c_bar_std = point.c_bar_std;
      row.n_copies = strat.n_copies;
      row.nv = point.nv;
      row.nv_std = point.nv_std;
      const double n = static_cast<double>(strat.n_copies);
      if (strat.strategy == Strategy::Adaptive) {
        row.theory_nv =
            n * std::min(
                    theory_variance(Strategy::Tp, point.c_target, strat.n_copies, params),
                    theory_variance(Strategy::Scm, point.c_target, strat.n_copies, params));
      } else {
        row.theory_nv =
            n * theory_variance(strat.strategy, point.c_target, strat.n_copies, params);
      }
      row.seed = strat.seed;
      rows.push_back(row);
    }
  }
  return rows;
}

namespace {

constexpr const char* kCsvHeader =
    "strategy,c_target,c_bar,c_bar_std,n_copies,nv,nv_std,theory_nv,seed";

/// Rounds through the 9-significant-digit decimal form, so CSV and JSON
/// carry bit-identical values.
double round_9sig(double value) {
  return std::strtod(format_real(value).c_str(), nullptr);
}

}  // namespace

std::string rows_to_csv(const std::vector<OutputRow>& rows) {
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const OutputRow& r : rows) {
    out << r.strategy << ',' << format_real(r.c_target) << ','
        << format_real(r.c_bar) << ',' << format_real(r.c_bar_std) << ','
        << r.n_copies << ',' << format_real(r.nv) << ','
        << format_real(r.nv_std) << ',' << format_real(r.theory_nv) << ','
        << r.seed << "\n";
  }
  return out.str();
}

std::string rows_to_json(const std::vector<OutputRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const OutputRow& r : rows) {
    arr.push_back({{"strategy", r.strategy},
                   {"c_target", round_9sig(r.c_target)},
                   {"c_bar", round_9sig(r.c_bar)},
                   {"c_bar_std", round_9sig(r.c_bar_std)},
                   {"n_copies", r.n_copies},
                   {"nv", round_9sig(r.nv)},
                   {"nv_std", round_9sig(r.nv_std)},
                   {"theory_nv", round_9sig(r.theory_nv)},
                   {"seed", r.seed}});
  }
  return arr.dump(2) + "\n";
}

std::vector<OutputRow> rows_from_csv(const std::string& text) {
  std::stringstream stream(text);
  std::string line;
  if (!std::getline(stream, line) || trim(line) != kCsvHeader) {
    throw ParseError("CSV header mismatch");
  }
  std::vector<OutputRow> rows;
  int line_no = 1;
  while (std::getline(stream, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 9) {
      throw ParseError("CSV line " + std::to_string(line_no) +
                       ": expected 9 fields");
    }
    OutputRow r;
    r.strategy = fields[0];
    r.c_target = parse_real("c_target", fields[1]);
    r.c_bar = parse_real("c_bar", fields[2]);
    r.c_bar_std = parse_real("c_bar_std", fields[3]);
    r.n_copies = parse_int("n_copies", fields[4]);
    r.nv = parse_real("nv", fields[5]);
    r.nv_std = parse_real("nv_std", fields[6]);
    r.theory_nv = parse_real("theory_nv", fields[7]);
    r.seed = parse_seed("seed", fields[8]);
    rows.push_back(r);
  }
  return rows;
}

std::vector<OutputRow> rows_from_json(const std::string& text) {
  nlohmann::json arr;
  try {
    arr = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("JSON parse failure: ") + e.what());
  }
  if (!arr.is_array()) throw ParseError("JSON report must be an array");
  std::vector<OutputRow> rows;
  try {
    for (const auto& item : arr) {
      OutputRow r;
      r.strategy = item.at("strategy").get<std::string>();
      r.c_target = item.at("c_target").get<double>();
      r.c_bar = item.at("c_bar").get<double>();
      r.c_bar_std = item.at("c_bar_std").get<double>();
      r.n_copies = item.at("n_copies").get<long>();
      r.nv = item.at("nv").get<double>();
      r.nv_std = item.at("nv_std").get<double>();
      r.theory_nv = item.at("theory_nv").get<double>();
      r.seed = item.at("seed").get<std::uint64_t>();
      rows.push_back(r);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("JSON report field error: ") + e.what());
  }
  return rows;
}

std::string render_report(const VarianceReport& report, ReportFormat format) {
  const auto rows = report_rows(report);
  return format == ReportFormat::Csv ? rows_to_csv(rows) : rows_to_json(rows);
}

void emit_report(const VarianceReport& report, ReportFormat format,
                 const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open output file: " + path);
  out << render_report(report, format);
  if (!out) throw IoError("write failure: " + path);
}

}  // namespace ovesim
