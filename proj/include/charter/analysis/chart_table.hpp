#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace charter {

enum class ChartType { vbar, hbar, pie, line, scatter };

inline constexpr std::array<ChartType, 5> kAllChartTypes = {
    ChartType::vbar, ChartType::hbar, ChartType::pie, ChartType::line, ChartType::scatter};

std::string_view to_string(ChartType type);
std::optional<ChartType> chart_type_from_string(std::string_view name);
inline bool is_bar(ChartType t) { return t == ChartType::vbar || t == ChartType::hbar; }
inline bool is_xy(ChartType t) { return t == ChartType::line || t == ChartType::scatter; }

/// Where a recovered field came from.
enum class Provenance {
  axis_interpolated,
  value_on_bar,
  legend,
  connector,
  adjacent_text,
  axis_label,
  geometry,
  positional,
  ground_truth,
};

std::string_view to_string(Provenance p);
std::optional<Provenance> provenance_from_string(std::string_view name);

struct DataPoint {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const DataPoint&, const DataPoint&) = default;
};

/// One bar or pie sector. Pie values are fractions of the full circle.
struct TableRow {
  std::string label;
  double value = 0.0;
  Provenance label_source = Provenance::ground_truth;
  Provenance value_source = Provenance::ground_truth;
  double confidence = 1.0;

  friend bool operator==(const TableRow&, const TableRow&) = default;
};

struct TableSeries {
  std::string label;
  std::vector<DataPoint> points;
  Provenance label_source = Provenance::ground_truth;
  Provenance value_source = Provenance::ground_truth;
  /// False when no axis mapping was available and points are in pixels.
  bool calibrated = true;
  double confidence = 1.0;

  friend bool operator==(const TableSeries&, const TableSeries&) = default;
};

struct AxisRange {
  double min = 0.0;
  double max = 0.0;

  double span() const { return max - min; }
  friend bool operator==(const AxisRange&, const AxisRange&) = default;
};

struct ChartTable {
  ChartType type = ChartType::vbar;
  std::optional<std::string> title;
  std::optional<std::string> caption;
  std::optional<std::string> x_title;
  std::optional<std::string> y_title;
  std::vector<TableRow> rows;
  std::vector<TableSeries> series;
  /// Data ranges of the value (y) and x axes when known.
  std::optional<AxisRange> x_range;
  std::optional<AxisRange> y_range;

  friend bool operator==(const ChartTable&, const ChartTable&) = default;
};

inline constexpr int kTableSchemaVersion = 1;

nlohmann::ordered_json to_json(const ChartTable& table);
ChartTable chart_table_from_json(const nlohmann::json& j);
/// Rows as `label,value`, series as `series,x,y`.
std::string to_csv(const ChartTable& table);

}  // namespace charter
