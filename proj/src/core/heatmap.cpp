#include "charter/core/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "charter/core/error.hpp"

namespace charter {

namespace {

constexpr std::array<std::string_view, 13> kHeatmapNames = {
    "bar_top_left", "bar_top_right", "bar_bottom_left", "bar_bottom_right",
    "x_tick",       "y_tick",        "pie_center",      "pie_circumference",
    "pie_radial",   "pie_corner",    "line_knee",       "line",
    "scatter_dot",
};

}  // namespace

std::string_view to_string(HeatmapCategory category) {
  return kHeatmapNames[static_cast<std::size_t>(category)];
}

std::optional<HeatmapCategory> heatmap_category_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kHeatmapNames.size(); ++i) {
    if (kHeatmapNames[i] == name) return static_cast<HeatmapCategory>(i);
  }
  return std::nullopt;
}

Heatmap::Heatmap(int width, int height, HeatmapCategory category)
    : Heatmap(width, height, category, std::vector<float>(std::size_t(std::max(width, 0)) * std::max(height, 0), 0.0f)) {}

Heatmap::Heatmap(int width, int height, HeatmapCategory category, std::vector<float> values)
    : width_(width), height_(height), category_(category), values_(std::move(values)) {
  if (width < 1 || height < 1) throw Error(ErrorCode::invalid_argument, "heatmap dims must be >= 1");
  if (values_.size() != std::size_t(width) * height) {
    throw Error(ErrorCode::invalid_argument, "heatmap buffer length must be width*height");
  }
  for (float v : values_) {
    if (!(v >= 0.0f && v <= 1.0f)) throw Error(ErrorCode::invalid_argument, "heatmap values must lie in [0,1]");
  }
}

double Heatmap::sample(double x, double y) const {
  const int x0 = int(std::floor(x));
  const int y0 = int(std::floor(y));
  const double fx = x - x0;
  const double fy = y - y0;
  auto get = [&](int xi, int yi) -> double { return in_bounds(xi, yi) ? at(xi, yi) : 0.0; };
  return (1 - fx) * (1 - fy) * get(x0, y0) + fx * (1 - fy) * get(x0 + 1, y0) +
         (1 - fx) * fy * get(x0, y0 + 1) + fx * fy * get(x0 + 1, y0 + 1);
}

double Heatmap::mass() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

float Heatmap::max_value() const {
  return values_.empty() ? 0.0f : *std::max_element(values_.begin(), values_.end());
}

}  // namespace charter
