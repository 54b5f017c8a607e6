#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace charter {

enum class HeatmapCategory {
  bar_top_left,
  bar_top_right,
  bar_bottom_left,
  bar_bottom_right,
  x_tick,
  y_tick,
  pie_center,
  pie_circumference,
  pie_radial,
  pie_corner,
  line_knee,
  line,
  scatter_dot,
};

inline constexpr std::array<HeatmapCategory, 13> kAllHeatmapCategories = {
    HeatmapCategory::bar_top_left,     HeatmapCategory::bar_top_right,
    HeatmapCategory::bar_bottom_left,  HeatmapCategory::bar_bottom_right,
    HeatmapCategory::x_tick,           HeatmapCategory::y_tick,
    HeatmapCategory::pie_center,       HeatmapCategory::pie_circumference,
    HeatmapCategory::pie_radial,       HeatmapCategory::pie_corner,
    HeatmapCategory::line_knee,        HeatmapCategory::line,
    HeatmapCategory::scatter_dot,
};

std::string_view to_string(HeatmapCategory category);
std::optional<HeatmapCategory> heatmap_category_from_string(std::string_view name);

/// Row-major confidence grid with values in [0, 1].
class Heatmap {
 public:
  Heatmap(int width, int height, HeatmapCategory category);
  Heatmap(int width, int height, HeatmapCategory category, std::vector<float> values);

  int width() const { return width_; }
  int height() const { return height_; }
  HeatmapCategory category() const { return category_; }

  float at(int x, int y) const { return values_[std::size_t(y) * width_ + x]; }
  void set(int x, int y, float v) { values_[std::size_t(y) * width_ + x] = v; }
  /// Keeps the larger of the current and the given value.
  void raise(int x, int y, float v) {
    float& cell = values_[std::size_t(y) * width_ + x];
    if (v > cell) cell = v;
  }
  bool in_bounds(int x, int y) const { return x >= 0 && y >= 0 && x < width_ && y < height_; }

  /// Bilinear sample; zero outside the grid.
  double sample(double x, double y) const;

  std::span<const float> values() const { return values_; }
  std::span<float> mutable_values() { return values_; }

  double mass() const;
  float max_value() const;

  friend bool operator==(const Heatmap&, const Heatmap&) = default;

 private:
  int width_;
  int height_;
  HeatmapCategory category_;
  std::vector<float> values_;
};

using HeatmapSet = std::map<HeatmapCategory, Heatmap>;

}  // namespace charter
