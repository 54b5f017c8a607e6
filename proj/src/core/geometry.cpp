#include "charter/core/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "charter/core/error.hpp"

namespace charter {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::invalid_config: return "invalid_config";
    case ErrorCode::layout_overflow: return "layout_overflow";
    case ErrorCode::io: return "io";
    case ErrorCode::parse: return "parse";
    case ErrorCode::no_chart: return "no_chart";
    case ErrorCode::empty_table: return "empty_table";
    case ErrorCode::type_mismatch: return "type_mismatch";
    case ErrorCode::empty_dataset: return "empty_dataset";
  }
  return "unknown";
}

double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

double color_distance(Color a, Color b) {
  const double dr = double(a.r) - b.r;
  const double dg = double(a.g) - b.g;
  const double db = double(a.b) - b.b;
  return std::sqrt(dr * dr + dg * dg + db * db);
}

int channel_sum_distance(Color a, Color b) {
  return std::abs(int(a.r) - b.r) + std::abs(int(a.g) - b.g) + std::abs(int(a.b) - b.b);
}

namespace {

constexpr std::array<std::string_view, 13> kBoxNames = {
    "vbar",  "hbar",   "pie_sector", "plot_area", "bar_chart", "pie_chart", "line_chart",
    "scatter_chart", "legend", "title", "caption", "x_label", "y_label",
};

}  // namespace

std::string_view to_string(BoxCategory category) {
  return kBoxNames[static_cast<std::size_t>(category)];
}

std::optional<BoxCategory> box_category_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kBoxNames.size(); ++i) {
    if (kBoxNames[i] == name) return static_cast<BoxCategory>(i);
  }
  return std::nullopt;
}

bool is_chart_region(BoxCategory category) {
  return category == BoxCategory::bar_chart || category == BoxCategory::pie_chart ||
         category == BoxCategory::line_chart || category == BoxCategory::scatter_chart;
}

double iou(const BBox& a, const BBox& b) {
  const double ix = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  const double iy = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  const double inter = ix * iy;
  const double uni = a.area() + b.area() - inter;
  return uni > 0.0 ? std::clamp(inter / uni, 0.0, 1.0) : 0.0;
}

Polyline::Polyline(std::vector<Point> points) : points_(std::move(points)) {
  if (points_.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "polyline needs at least two points");
  }
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i].x == points_[i - 1].x && points_[i].y == points_[i - 1].y) {
      throw Error(ErrorCode::invalid_argument, "polyline has repeated consecutive points");
    }
  }
}

double segment_distance(const Point& p, const Point& a, const Point& b) {
  const double vx = b.x - a.x;
  const double vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p.x - a.x) * vx + (p.y - a.y) * vy) / len2, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * vx), p.y - (a.y + t * vy));
}

double wrap_deg(double angle) {
  double a = std::fmod(angle, 360.0);
  if (a < 0.0) a += 360.0;
  if (a >= 360.0) a -= 360.0;
  return a;
}

double polar_angle_deg(const Point& center, const Point& p) {
  return wrap_deg(std::atan2(-(p.y - center.y), p.x - center.x) * 180.0 / kPi);
}

double ccw_span_deg(double from, double to) { return wrap_deg(to - from); }

bool angle_in_span(double angle, double start, double span) {
  return ccw_span_deg(start, angle) <= span;
}

}  // namespace charter
