#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "charter/analysis/chart_table.hpp"
#include "charter/core/geometry.hpp"
#include "json.hpp"

namespace charter {

inline constexpr int kGroundTruthSchemaVersion = 1;

enum class Orientation { x, y };

std::string_view to_string(Orientation o);

enum class TextRole {
  title,
  caption,
  x_title,
  y_title,
  x_tick,
  y_tick,
  category,
  legend_entry,
  pie_label,
  value_label,
};

std::string_view to_string(TextRole role);
std::optional<TextRole> text_role_from_string(std::string_view name);

/// Corners in drawing order: top-left, top-right, bottom-right, bottom-left
/// of the unrotated text, rotated about the text origin.
using Quad = std::array<Point, 4>;

BBox quad_bounds(const Quad& q);

struct TextBox {
  std::string text;
  TextRole role = TextRole::title;
  Quad polygon{};
  /// Counterclockwise rotation in degrees.
  double angle = 0.0;
  /// Superscript drawn right of a "10" mantissa.
  std::optional<std::string> exponent;
  std::optional<Quad> exponent_polygon;
  /// Row or series this text names or annotates; -1 when none.
  int element = -1;
};

struct BarGeometry {
  BBox box;
  Color color;
  int row = 0;
};

struct SectorGeometry {
  double start_deg = 0.0;
  double span_deg = 0.0;
  Color color;
  int row = 0;
  BBox box;
};

struct PieGroundTruth {
  Point center;
  double radius = 0.0;
  std::vector<SectorGeometry> sectors;
};

struct LineGeometry {
  std::vector<Point> vertices;
  Color color;
  bool dashed = false;
  int series = 0;
};

struct DotGeometry {
  Point center;
  double radius = 0.0;
  Color color;
  int series = 0;
};

struct TickGeometry {
  Orientation orientation = Orientation::y;
  Point position;
  /// Absent for categorical ticks.
  std::optional<double> value;
};

struct LegendEntryGeometry {
  BBox swatch;
  Color color;
  std::string text;
  int element = 0;
};

struct ConnectorGeometry {
  Point inner;
  Point outer;
  int row = 0;
};

/// value = slope * pixel + intercept along the axis direction.
struct AxisMapping {
  Orientation orientation = Orientation::y;
  double slope = 0.0;
  double intercept = 0.0;

  double value_at(double pixel) const { return slope * pixel + intercept; }
  double pixel_at(double value) const { return (value - intercept) / slope; }
};

struct GroundTruth {
  ChartTable table;
  std::uint64_t seed = 0;
  int width = 512;
  int height = 512;
  Color background;
  /// Stage-1 chart region (bar_chart, pie_chart, line_chart or scatter_chart).
  BBox chart_region;
  std::optional<BBox> plot_area;
  std::optional<BBox> legend_box;
  std::vector<BarGeometry> bars;
  std::optional<PieGroundTruth> pie;
  std::vector<LineGeometry> lines;
  std::vector<DotGeometry> dots;
  std::vector<TickGeometry> ticks;
  std::vector<TextBox> texts;
  std::vector<LegendEntryGeometry> legend;
  std::vector<ConnectorGeometry> connectors;
  std::optional<AxisMapping> x_axis;
  std::optional<AxisMapping> y_axis;
  bool element_texture = false;
};

nlohmann::ordered_json to_json(const GroundTruth& gt);
GroundTruth ground_truth_from_json(const nlohmann::json& j);

}  // namespace charter
