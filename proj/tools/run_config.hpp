#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "charter/analysis/chart_table.hpp"
#include "charter/analysis/config.hpp"
#include "charter/synth/chart_spec.hpp"
#include "json.hpp"

namespace charter::cli {

enum class ReportFormat { json, csv, md };

/// Everything a command needs. Built from the defaults file named by
/// CHARTER_CONFIG, then `--config`, then flags; later layers win.
struct RunConfig {
  std::string command;
  /// Echoed into the run log.
  std::string command_line;
  std::filesystem::path in;
  std::filesystem::path out;
  /// Ground-truth dataset for `evaluate`; defaults to `in`.
  std::filesystem::path gt;
  std::optional<std::uint64_t> seed;
  std::uint64_t count = 10;
  std::vector<ChartType> types{kAllChartTypes.begin(), kAllChartTypes.end()};
  /// Preset name or JSON path.
  std::string noise = "clean";
  /// `extract`/`overlay`: simulate detector and OCR from ground truth with
  /// this preset instead of reading them.
  std::optional<std::string> oracle;
  std::vector<double> epsilons{0.01, 0.02, 0.05, 0.1};
  std::vector<double> taus{1.0, 0.8, 0.4, 0.0};
  unsigned jobs = 0;
  ReportFormat format = ReportFormat::json;
  /// Restricts `overlay` to these chart ids.
  std::vector<std::string> ids;
  SynthConfig synth;
  AnalysisConfig analysis;
};

/// Applies a config document (keys as in config/defaults.json). Throws
/// Error(invalid_config) on unknown keys or bad values.
void apply_config(RunConfig& config, const nlohmann::json& doc);

/// Reads the file named by CHARTER_CONFIG when set.
void apply_environment(RunConfig& config);

/// `key=value` override of one analysis threshold; the value is JSON.
void apply_override(RunConfig& config, const std::string& assignment);

std::optional<ReportFormat> report_format_from_string(std::string_view name);
std::string_view extension(ReportFormat format);

std::vector<ChartType> parse_types(const std::string& list);

/// 64-bit FNV-1a over the bytes of `text`, as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

}  // namespace charter::cli
