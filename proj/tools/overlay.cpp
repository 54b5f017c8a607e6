#include "overlay.hpp"

#include <algorithm>
#include <cmath>

namespace charter::cli {

namespace {

constexpr Color kBoxColor{255, 0, 255};
constexpr Color kCircleColor{255, 0, 0};
constexpr Color kRadialColor{0, 0, 255};
constexpr Color kSeriesColor{0, 0, 0};
constexpr Color kAxisColor{0, 170, 0};

void plot(Raster& r, double x, double y, Color c) {
  const int ix = int(std::lround(x)), iy = int(std::lround(y));
  if (r.in_bounds(ix, iy)) r.set(ix, iy, c);
}

void line(Raster& r, const Point& a, const Point& b, Color c) {
  const int steps = std::max(1, int(std::ceil(2.0 * distance(a, b))));
  for (int i = 0; i <= steps; ++i) {
    const double t = double(i) / steps;
    plot(r, a.x + t * (b.x - a.x), a.y + t * (b.y - a.y), c);
  }
}

void rect(Raster& r, const BBox& b, Color c) {
  line(r, {b.x_min, b.y_min}, {b.x_max, b.y_min}, c);
  line(r, {b.x_max, b.y_min}, {b.x_max, b.y_max}, c);
  line(r, {b.x_max, b.y_max}, {b.x_min, b.y_max}, c);
  line(r, {b.x_min, b.y_max}, {b.x_min, b.y_min}, c);
}

void cross(Raster& r, const Point& p, Color c) {
  line(r, {p.x - 3, p.y}, {p.x + 3, p.y}, c);
  line(r, {p.x, p.y - 3}, {p.x, p.y + 3}, c);
}

Point on_circle(const Point& c, double radius, double deg) {
  const double t = deg * kPi / 180.0;
  return {c.x + radius * std::cos(t), c.y - radius * std::sin(t)};
}

}  // namespace

Raster render_overlay(const Raster& raster, const AnalysisDetails& details, const OcrOutput& ocr) {
  Raster out = raster;
  for (const BarElement& b : details.bars) rect(out, b.box, kBoxColor);

  if (details.pie) {
    const PieGeometry& g = *details.pie;
    const int steps = std::max(64, int(std::ceil(4.0 * kPi * g.radius)));
    for (int i = 0; i < steps; ++i) {
      const Point p = on_circle(g.center, g.radius, 360.0 * i / steps);
      plot(out, p.x, p.y, kCircleColor);
    }
    if (g.sectors.size() > 1) {
      for (const SectorInfo& s : g.sectors) line(out, g.center, on_circle(g.center, g.radius, s.start_deg), kRadialColor);
    }
    cross(out, g.center, kCircleColor);
  }

  for (const SeriesElement& s : details.series) {
    if (details.type == ChartType::line) {
      for (std::size_t i = 1; i < s.pixels.size(); ++i) line(out, s.pixels[i - 1], s.pixels[i], kSeriesColor);
    }
    for (const Point& p : s.pixels) cross(out, p, kSeriesColor);
  }

  for (const auto* axis : {&details.x_axis, &details.y_axis}) {
    if (!*axis) continue;
    for (const AxisSupport& s : (*axis)->support) {
      if (s.token < ocr.tokens.size()) rect(out, ocr.tokens[s.token].bounds(), kAxisColor);
    }
  }
  return out;
}

}  // namespace charter::cli
