#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "charter/analysis/chart_table.hpp"
#include "charter/eval/accuracy.hpp"
#include "json.hpp"

namespace charter {

inline constexpr int kReportSchemaVersion = 1;

/// One chart to score. A missing prediction counts every element as missed.
struct EvalItem {
  std::string id;
  ChartTable gt;
  std::optional<ChartTable> pred;
};

/// The policies a report is computed for.
struct EvalGrid {
  std::vector<double> epsilons{0.01, 0.02, 0.05, 0.1};
  std::vector<double> taus{1.0, 0.8, 0.4, 0.0};
  std::vector<Pairing> pairings{Pairing::label, Pairing::positional};
};

/// Throws Error(invalid_config) for empty lists or out-of-range entries.
void validate(const EvalGrid& grid);

struct EvalCell {
  Pairing pairing = Pairing::label;
  double tau = 1.0;
  double epsilon = 0.05;
  std::size_t gt_count = 0;
  std::size_t matched = 0;
  std::size_t value_tp = 0;

  double accuracy() const { return gt_count == 0 ? 1.0 : double(value_tp) / double(gt_count); }
  /// Share of elements paired at this label threshold.
  double label_rate() const { return gt_count == 0 ? 1.0 : double(matched) / double(gt_count); }
};

struct TypeReport {
  ChartType type = ChartType::vbar;
  std::size_t charts = 0;
  /// Charts without a table, or with one of the wrong type.
  std::size_t failures = 0;
  std::vector<EvalCell> cells;

  /// Throws Error(invalid_argument) when the cell was not computed.
  const EvalCell& cell(Pairing pairing, double tau, double epsilon) const;
};

struct RuntimeStats {
  std::size_t charts = 0;
  double total_seconds = 0.0;
  double mean_seconds = 0.0;
  double max_seconds = 0.0;
};

struct EvalReport {
  EvalGrid grid;
  /// Chart types in their fixed order; only types present in the input.
  std::vector<TypeReport> types;
  /// Wall-clock figures vary between runs, so they are opt-in.
  std::optional<RuntimeStats> runtime;

  /// Throws Error(invalid_argument) when the type was not evaluated.
  const TypeReport& type(ChartType t) const;
};

/// Scores every item under every grid policy. Counts are summed per chart
/// type, so the result does not depend on item order.
EvalReport evaluate(std::span<const EvalItem> items, const EvalGrid& grid = {});

RuntimeStats runtime_stats(std::span<const double> seconds);

nlohmann::ordered_json to_json(const EvalReport& report);
EvalReport eval_report_from_json(const nlohmann::json& j);
/// One line per cell: type,pairing,tau,epsilon,gt,matched,value_tp,accuracy.
std::string to_csv(const EvalReport& report);
/// Per chart type, rows by pairing and label threshold, columns by epsilon.
std::string to_markdown(const EvalReport& report);

/// Sector-angle accuracy of the same pies via box proposals and heatmaps.
struct AblationReport {
  EvalReport boxes;
  EvalReport heatmaps;
};

nlohmann::ordered_json to_json(const AblationReport& report);
/// method,tau,epsilon,gt,matched,value_tp,accuracy for label pairing.
std::string to_csv(const AblationReport& report);
/// Rows by label threshold, one boxes and one heatmaps column per epsilon.
std::string to_markdown(const AblationReport& report);

}  // namespace charter
