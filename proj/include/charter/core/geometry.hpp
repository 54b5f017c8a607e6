#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace charter {

inline constexpr double kPi = 3.14159265358979323846;

/// A location in raster (or heatmap) pixel-index coordinates: pixel (i, j)
/// has its center at (i, j). `intensity` carries the heatmap value for
/// decoded peaks and is zero otherwise.
struct Point {
  double x = 0.0;
  double y = 0.0;
  double intensity = 0.0;
};

double distance(const Point& a, const Point& b);

struct Color {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend auto operator<=>(const Color&, const Color&) = default;
};

/// Euclidean distance in RGB space.
double color_distance(Color a, Color b);
/// Sum of absolute per-channel differences.
int channel_sum_distance(Color a, Color b);

enum class BoxCategory {
  vbar,
  hbar,
  pie_sector,
  plot_area,
  bar_chart,
  pie_chart,
  line_chart,
  scatter_chart,
  legend,
  title,
  caption,
  x_label,
  y_label,
};

inline constexpr std::array<BoxCategory, 13> kAllBoxCategories = {
    BoxCategory::vbar,      BoxCategory::hbar,          BoxCategory::pie_sector,
    BoxCategory::plot_area, BoxCategory::bar_chart,     BoxCategory::pie_chart,
    BoxCategory::line_chart, BoxCategory::scatter_chart, BoxCategory::legend,
    BoxCategory::title,     BoxCategory::caption,       BoxCategory::x_label,
    BoxCategory::y_label,
};

std::string_view to_string(BoxCategory category);
std::optional<BoxCategory> box_category_from_string(std::string_view name);
bool is_chart_region(BoxCategory category);

struct BBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;
  BoxCategory category = BoxCategory::vbar;
  double score = 1.0;

  double width() const { return x_max - x_min; }
  double height() const { return y_max - y_min; }
  double area() const { return width() * height(); }
  Point center() const { return {(x_min + x_max) / 2.0, (y_min + y_max) / 2.0}; }
  bool contains(const Point& p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
  bool valid() const {
    return x_min < x_max && y_min < y_max && score >= 0.0 && score <= 1.0;
  }
};

/// Intersection over union; 0 for disjoint boxes.
double iou(const BBox& a, const BBox& b);

/// Ordered vertices; at least two points, consecutive points distinct.
class Polyline {
 public:
  explicit Polyline(std::vector<Point> points);

  const std::vector<Point>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }

 private:
  std::vector<Point> points_;
};

/// Distance from p to the segment [a, b].
double segment_distance(const Point& p, const Point& a, const Point& b);

/// Polar angle of p around center in degrees, counterclockwise on screen
/// (y grows downward), in [0, 360).
double polar_angle_deg(const Point& center, const Point& p);

/// Wraps an angle in degrees into [0, 360).
double wrap_deg(double angle);

/// Counterclockwise angular distance from `from` to `to`, in [0, 360).
double ccw_span_deg(double from, double to);

/// True when `angle` lies on the counterclockwise arc from `start` spanning `span`.
bool angle_in_span(double angle, double start, double span);

}  // namespace charter
