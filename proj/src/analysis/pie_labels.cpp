#include "charter/analysis/pies.hpp"

#include <algorithm>
#include <cmath>

#include "charter/analysis/legend.hpp"
#include "charter/core/image_ops.hpp"
#include "charter/oracle/numeric.hpp"
#include "internal.hpp"

namespace charter {

namespace {

// Nonfill pixels must differ from background and every sector by this much.
constexpr double kStrokeContrast = 40.0;
// Farthest a connector end may sit from its label, pixels.
constexpr double kConnectorReach = 20.0;
// Adjacent labels lie within this distance of the rim.
constexpr double kAdjacentReach = 80.0;

std::optional<std::size_t> sector_at(const PieGeometry& g, double deg) {
  for (std::size_t i = 0; i < g.sectors.size(); ++i) {
    if (angle_in_span(deg, g.sectors[i].start_deg, g.sectors[i].span_deg)) return i;
  }
  return std::nullopt;
}

double box_distance(const BBox& b, const Point& p) {
  const double dx = std::max({b.x_min - p.x, 0.0, p.x - b.x_max});
  const double dy = std::max({b.y_min - p.y, 0.0, p.y - b.y_max});
  return std::hypot(dx, dy);
}

// The token and its neighbors on the same text line, joined left to right.
std::string text_line(const OcrOutput& ocr, const std::vector<std::size_t>& usable, std::size_t seed) {
  const BBox s = ocr.tokens[seed].bounds();
  std::vector<std::size_t> line{seed};
  BBox span = s;
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i : usable) {
      if (std::find(line.begin(), line.end(), i) != line.end()) continue;
      const BBox b = ocr.tokens[i].bounds();
      if (std::abs(b.center().y - s.center().y) > 3.0) continue;
      const double gap = std::max(b.x_min - span.x_max, span.x_min - b.x_max);
      if (gap > 10.0) continue;
      line.push_back(i);
      span.x_min = std::min(span.x_min, b.x_min);
      span.x_max = std::max(span.x_max, b.x_max);
      grew = true;
    }
  }
  std::sort(line.begin(), line.end(),
            [&](std::size_t a, std::size_t b) { return ocr.tokens[a].bounds().x_min < ocr.tokens[b].bounds().x_min; });
  std::string out;
  for (std::size_t i : line) {
    if (!out.empty()) out += ' ';
    out += ocr.tokens[i].text;
  }
  return out;
}

std::vector<std::optional<SectorLabel>> by_connectors(const PieGeometry& g, const Raster& raster, const OcrOutput& ocr,
                                                      const std::vector<std::size_t>& usable,
                                                      const AnalysisConfig& config) {
  std::vector<std::optional<SectorLabel>> out(g.sectors.size());
  const double r = g.radius;
  const BBox area{g.center.x - 1.6 * r, g.center.y - 1.6 * r, g.center.x + 1.6 * r, g.center.y + 1.6 * r};
  const int x0 = std::max(0, int(std::floor(area.x_min))), x1 = std::min(raster.width() - 1, int(std::ceil(area.x_max)));
  const int y0 = std::max(0, int(std::floor(area.y_min))), y1 = std::min(raster.height() - 1, int(std::ceil(area.y_max)));

  // Background: the most common color in a band just outside the disc.
  std::vector<Color> ring;
  for (int k = 0; k < 720; ++k) {
    for (double d = r + 5.0; d <= r + 40.0; d += 5.0) {
      const double t = k * 0.5 * kPi / 180.0;
      const int x = int(std::lround(g.center.x + d * std::cos(t))), y = int(std::lround(g.center.y - d * std::sin(t)));
      if (raster.in_bounds(x, y)) ring.push_back(raster.at(x, y));
    }
  }
  if (ring.empty()) return out;
  const Color bg = detail::cluster_colors(ring, 10.0).front().mean;

  const std::vector<Color> fills = detail::pie_fill_colors(g, raster);
  Mask m(x1 - x0 + 1, y1 - y0 + 1);
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      const Point p{double(x), double(y)};
      if (distance(p, g.center) > 1.6 * r) continue;
      const Color c = raster.at(x, y);
      if (color_distance(c, bg) <= kStrokeContrast) continue;
      const bool fill = std::any_of(fills.begin(), fills.end(),
                                    [&](Color f) { return color_distance(c, f) <= kStrokeContrast; });
      if (fill) continue;
      const bool text = std::any_of(usable.begin(), usable.end(), [&](std::size_t i) {
        const BBox b = ocr.tokens[i].bounds();
        return p.x >= b.x_min - 1 && p.x <= b.x_max + 1 && p.y >= b.y_min - 1 && p.y <= b.y_max + 1;
      });
      if (!text) m.set(x - x0, y - y0);
    }
  }

  const double max_area = config.connector_area_fraction * kPi * r * r;
  for (const Component& comp : connected_components(m)) {
    if (double(comp.area()) >= max_area) continue;
    Point inner, outer;
    double dmin = 1e9, dmax = -1.0;
    for (const PixelCoord& px : comp.pixels) {
      const Point p{double(px.x + x0), double(px.y + y0)};
      const double d = distance(p, g.center);
      if (d < dmin) {
        dmin = d;
        inner = p;
      }
      if (d > dmax) {
        dmax = d;
        outer = p;
      }
    }
    if (dmin >= r - 2.0 || dmax <= r + 2.0) continue;
    std::optional<std::size_t> nearest;
    double best = kConnectorReach;
    for (std::size_t i : usable) {
      const double d = box_distance(ocr.tokens[i].bounds(), outer);
      if (d <= best) {
        best = d;
        nearest = i;
      }
    }
    const auto sector = sector_at(g, polar_angle_deg(g.center, inner));
    if (!nearest || !sector || out[*sector]) continue;
    out[*sector] = SectorLabel{text_line(ocr, usable, *nearest), Provenance::connector};
  }
  return out;
}

std::vector<std::optional<SectorLabel>> by_position(const PieGeometry& g, const OcrOutput& ocr,
                                                    const std::vector<std::size_t>& usable) {
  struct Pick {
    std::size_t token;
    bool inside;
    double off_mid;
  };
  std::vector<std::optional<Pick>> picks(g.sectors.size());
  for (std::size_t i : usable) {
    const Point c = ocr.tokens[i].bounds().center();
    const double d = distance(c, g.center);
    if (d > g.radius + kAdjacentReach) continue;
    const double deg = polar_angle_deg(g.center, c);
    const auto k = sector_at(g, deg);
    if (!k) continue;
    const SectorInfo& s = g.sectors[*k];
    const double off = std::abs(ccw_span_deg(s.start_deg, deg) - s.span_deg / 2.0);
    const Pick p{i, d < g.radius, off};
    auto& cur = picks[*k];
    if (!cur || (p.inside && !cur->inside) || (p.inside == cur->inside && p.off_mid < cur->off_mid)) cur = p;
  }
  std::vector<std::optional<SectorLabel>> out(g.sectors.size());
  for (std::size_t k = 0; k < picks.size(); ++k) {
    if (picks[k]) out[k] = SectorLabel{ocr.tokens[picks[k]->token].text, Provenance::adjacent_text};
  }
  return out;
}

}  // namespace

std::vector<SectorLabel> label_sectors(const PieGeometry& geom, const Raster& raster, const OcrOutput& ocr,
                                       const std::optional<BBox>& legend, const std::vector<BBox>& furniture,
                                       const AnalysisConfig& config) {
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < ocr.tokens.size(); ++i) {
    const OcrToken& t = ocr.tokens[i];
    const bool hidden = std::any_of(furniture.begin(), furniture.end(),
                                    [&](const BBox& f) { return detail::center_inside(t, f, 2.0); });
    if (!hidden && t.angle == 0.0 && !(legend && detail::center_inside(t, *legend, 2.0))) usable.push_back(i);
  }

  std::vector<std::optional<SectorLabel>> found(geom.sectors.size());
  const auto swatches = legend ? find_legend_swatches(*legend, ocr, raster) : std::vector<LegendSwatch>{};
  if (!swatches.empty()) {
    std::vector<Color> colors;
    for (const SectorInfo& s : geom.sectors) colors.push_back(s.color);
    const auto names = match_legend(swatches, colors, config);
    for (std::size_t k = 0; k < names.size(); ++k) {
      if (names[k]) found[k] = SectorLabel{*names[k], Provenance::legend};
    }
  } else {
    found = by_connectors(geom, raster, ocr, usable, config);
    if (std::none_of(found.begin(), found.end(), [](const auto& f) { return f.has_value(); })) {
      found = by_position(geom, ocr, usable);
    }
  }

  std::vector<SectorLabel> out;
  for (std::size_t k = 0; k < found.size(); ++k) {
    out.push_back(found[k].value_or(SectorLabel{"sector_" + std::to_string(k + 1), Provenance::positional}));
  }
  return out;
}

}  // namespace charter
