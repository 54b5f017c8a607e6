#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "charter/analysis/chart_table.hpp"
#include "charter/core/geometry.hpp"
#include "json.hpp"

namespace charter {

enum class BorderStyle { none, solid, dashed };
enum class LegendPosition { none, right, top };
enum class PieLabelMode { legend, connector, adjacent };
enum class Texture { none, stripes, checker, noise };
enum class TickFormat { plain, thousands, currency, exponent };

struct SeriesSpec {
  std::string label;
  /// Bar value, or pie fraction of the full circle.
  double value = 0.0;
  /// Line vertices or scatter dots, in data units.
  std::vector<DataPoint> points;
  Color color;
  bool dashed = false;
};

struct AxisSpec {
  double min = 0.0;
  double max = 1.0;
  std::vector<double> ticks;
  TickFormat format = TickFormat::plain;
};

struct StyleSpec {
  Color background{255, 255, 255};
  Color text_color{30, 30, 30};
  Color border_color{0, 0, 0};
  BorderStyle border_style = BorderStyle::solid;
  /// Fraction of each bar slot left empty.
  double bar_gap = 0.3;
  bool axes_visible = true;
  LegendPosition legend = LegendPosition::none;
  PieLabelMode pie_labels = PieLabelMode::adjacent;
  Texture background_texture = Texture::none;
  Texture element_texture = Texture::none;
  /// Category label rotation in degrees: 0 or 45.
  double x_label_rotation = 0.0;
  bool value_on_bar = false;
  bool uniform_color = false;
  bool sector_separators = false;
  /// Pie labels drawn inside wide sectors (adjacent mode only).
  bool inside_labels = false;
};

/// Everything needed to render one chart. Bar and pie series carry one
/// value each; line and scatter series carry points.
struct ChartSpec {
  std::uint64_t seed = 0;
  ChartType type = ChartType::vbar;
  std::vector<SeriesSpec> series;
  StyleSpec style;
  std::string title;
  std::string caption;
  std::string x_title;
  std::string y_title;
  /// y axis for vbar/line/scatter, x axis for hbar.
  AxisSpec value_axis;
  /// Numeric x axis for line/scatter.
  AxisSpec x_axis;
  double pie_start_angle = 0.0;
};

struct IntRange {
  int min = 1;
  int max = 1;
};

/// Ranges and probabilities for every axis of variation the sampler draws.
struct SynthConfig {
  IntRange bars{2, 10};
  IntRange pie_slices{2, 8};
  IntRange line_series{1, 4};
  IntRange line_points{4, 10};
  IntRange scatter_series{1, 3};
  IntRange scatter_points{8, 25};

  double p_hidden_axes = 0.15;
  double p_legend = 0.3;
  double p_background_texture = 0.15;
  double p_element_texture = 0.15;
  bool texture_with_legend = false;
  double p_rotated_labels = 0.3;
  double p_value_on_bar = 0.2;
  double p_uniform_color = 0.1;
  double p_sector_separators = 0.5;
  double p_dashed_line = 0.3;
  double p_exponent_ticks = 0.1;
  double p_thousands_ticks = 0.1;
  double p_currency_ticks = 0.1;
  double p_border = 0.7;
  double p_dashed_border = 0.3;
  double p_bar_bottom_nonzero = 0.3;
  double p_inside_labels = 0.3;
  double p_title = 0.8;
  double p_caption = 0.4;
  double p_axis_titles = 0.6;
  /// Relative weights for legend, connector, adjacent pie labels.
  std::array<double, 3> pie_label_weights{1.0, 1.0, 1.0};
  /// Minimum pairwise channel-sum distance between element colors.
  int min_color_distance = 90;

  friend bool operator==(const SynthConfig&, const SynthConfig&) = default;
};

/// Throws Error(invalid_config) on inverted or out-of-range settings.
void validate(const SynthConfig& config);

nlohmann::ordered_json to_json(const SynthConfig& config);
/// Missing keys keep their defaults.
SynthConfig synth_config_from_json(const nlohmann::json& j, SynthConfig base = {});

nlohmann::ordered_json to_json(const ChartSpec& spec);

std::string_view to_string(PieLabelMode mode);
std::string_view to_string(TickFormat format);
std::string_view to_string(Texture texture);
std::string_view to_string(LegendPosition position);
std::string_view to_string(BorderStyle style);

/// Tick text as drawn. Exponent ticks yield the mantissa only ("10").
std::string format_tick(double value, TickFormat format, double step);
/// Smallest-decimals rendering of a value on the given grid.
std::string format_value(double value, double granularity);

}  // namespace charter
