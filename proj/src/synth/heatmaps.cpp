#include "charter/synth/heatmaps.hpp"

#include <algorithm>
#include <cmath>

#include "charter/core/error.hpp"

namespace charter {

namespace {

template <typename Dist>
void stroke_window(Heatmap& h, double x0, double y0, double x1, double y1, double sigma, Dist dist) {
  const double reach = 3.0 * sigma;
  const int xa = std::max(0, static_cast<int>(std::floor(x0 - reach)));
  const int xb = std::min(h.width() - 1, static_cast<int>(std::ceil(x1 + reach)));
  const int ya = std::max(0, static_cast<int>(std::floor(y0 - reach)));
  const int yb = std::min(h.height() - 1, static_cast<int>(std::ceil(y1 + reach)));
  const double k = 1.0 / (2.0 * sigma * sigma);
  for (int y = ya; y <= yb; ++y) {
    for (int x = xa; x <= xb; ++x) {
      const double d = dist(Point{double(x), double(y)});
      if (d > reach) continue;
      h.raise(x, y, static_cast<float>(std::exp(-d * d * k)));
    }
  }
}

}  // namespace

void splat(Heatmap& h, const Point& c, double sigma) {
  stroke_window(h, c.x, c.y, c.x, c.y, sigma, [&](const Point& p) { return distance(p, c); });
}

void stroke_segment(Heatmap& h, const Point& a, const Point& b, double sigma) {
  stroke_window(h, std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y), sigma,
                [&](const Point& p) { return segment_distance(p, a, b); });
}

void stroke_circle(Heatmap& h, const Point& c, double r, double sigma) {
  stroke_window(h, c.x - r, c.y - r, c.x + r, c.y + r, sigma,
                [&](const Point& p) { return std::fabs(distance(p, c) - r); });
}

HeatmapSet emit_heatmaps(const GroundTruth& gt, int resolution) {
  if (resolution < 1 || gt.width % resolution != 0 || gt.height % resolution != 0 ||
      gt.width / resolution != gt.height / resolution) {
    throw Error(ErrorCode::invalid_argument, "heatmap resolution must divide the raster size");
  }
  const double s = double(gt.width) / resolution;
  HeatmapSet set;
  for (HeatmapCategory c : kAllHeatmapCategories) set.emplace(c, Heatmap(resolution, resolution, c));
  auto at = [&](HeatmapCategory c) -> Heatmap& { return set.at(c); };
  auto scaled = [&](const Point& p) { return Point{p.x / s, p.y / s}; };

  for (const BarGeometry& b : gt.bars) {
    splat(at(HeatmapCategory::bar_top_left), scaled({b.box.x_min, b.box.y_min}));
    splat(at(HeatmapCategory::bar_top_right), scaled({b.box.x_max, b.box.y_min}));
    splat(at(HeatmapCategory::bar_bottom_left), scaled({b.box.x_min, b.box.y_max}));
    splat(at(HeatmapCategory::bar_bottom_right), scaled({b.box.x_max, b.box.y_max}));
  }
  for (const TickGeometry& t : gt.ticks) {
    splat(at(t.orientation == Orientation::x ? HeatmapCategory::x_tick : HeatmapCategory::y_tick), scaled(t.position));
  }
  if (gt.pie) {
    const Point c = scaled(gt.pie->center);
    const double r = gt.pie->radius / s;
    splat(at(HeatmapCategory::pie_center), c);
    stroke_circle(at(HeatmapCategory::pie_circumference), c, r);
    if (gt.pie->sectors.size() > 1) {
      for (const SectorGeometry& sec : gt.pie->sectors) {
        const double t = sec.start_deg * kPi / 180.0;
        const Point edge{c.x + r * std::cos(t), c.y - r * std::sin(t)};
        stroke_segment(at(HeatmapCategory::pie_radial), c, edge);
        splat(at(HeatmapCategory::pie_corner), edge);
      }
    }
  }
  for (const LineGeometry& l : gt.lines) {
    for (std::size_t i = 0; i < l.vertices.size(); ++i) {
      splat(at(HeatmapCategory::line_knee), scaled(l.vertices[i]));
      if (i + 1 < l.vertices.size()) {
        stroke_segment(at(HeatmapCategory::line), scaled(l.vertices[i]), scaled(l.vertices[i + 1]));
      }
    }
  }
  for (const DotGeometry& d : gt.dots) splat(at(HeatmapCategory::scatter_dot), scaled(d.center));
  return set;
}

}  // namespace charter
