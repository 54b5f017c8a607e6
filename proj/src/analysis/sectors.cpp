#include "charter/analysis/pies.hpp"

#include <algorithm>
#include <cmath>

#include "charter/core/image_ops.hpp"
#include "internal.hpp"

namespace charter {

namespace {

using detail::ColorCluster;

constexpr double kDeg = kPi / 180.0;
// Colors this close to a sector's palette belong to that sector.
constexpr double kPaletteMatch = 40.0;
// Palette clusters rarer than this fraction are text or strokes.
constexpr double kPaletteShare = 0.1;

Point on_ray(const Point& c, double r, double deg) {
  return {c.x + r * std::cos(deg * kDeg), c.y - r * std::sin(deg * kDeg)};
}

std::vector<SectorInfo> sectors_from_bounds(std::vector<double> bounds) {
  for (double& b : bounds) b = wrap_deg(b);
  std::sort(bounds.begin(), bounds.end());
  std::vector<SectorInfo> out;
  if (bounds.size() < 2) {
    out.push_back({bounds.empty() ? 0.0 : bounds.front(), 360.0, {}});
    return out;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    const double span = ccw_span_deg(bounds[i], bounds[(i + 1) % bounds.size()]);
    out.push_back({bounds[i], span, {}});
    total += span;
  }
  // Guard against rounding so the spans close the circle exactly.
  for (SectorInfo& s : out) s.span_deg *= 360.0 / total;
  return out;
}

std::vector<ColorCluster> sector_palette(const PieGeometry& g, const SectorInfo& s, const Raster& raster) {
  std::vector<Color> colors;
  for (int i = 0; i <= 12; ++i) {
    const double deg = s.start_deg + s.span_deg * (0.2 + 0.6 * i / 12.0);
    for (int j = 0; j <= 12; ++j) {
      const Point p = on_ray(g.center, g.radius * (0.35 + 0.5 * j / 12.0), deg);
      const int x = int(std::lround(p.x)), y = int(std::lround(p.y));
      if (raster.in_bounds(x, y)) colors.push_back(raster.at(x, y));
    }
  }
  auto clusters = detail::cluster_colors(colors, kPaletteMatch);
  const double n = double(colors.size());
  std::erase_if(clusters, [&](const ColorCluster& c) { return double(c.count) < kPaletteShare * n; });
  return clusters;
}

double palette_distance(const std::vector<ColorCluster>& palette, Color c) {
  double d = 1e9;
  for (const ColorCluster& k : palette) d = std::min(d, color_distance(k.mean, c));
  return d;
}

enum class Side { before, after, both, other };

// Transition angle along one arc: the gap between the last `before` sample
// and the first `after` sample of the best step fit, or the middle of the
// non-fill run nearest the guess when both sides share a palette.
std::optional<double> arc_transition(const std::vector<double>& angles, const std::vector<Side>& side, double guess) {
  const std::size_t n = side.size();
  const bool has_before = std::find(side.begin(), side.end(), Side::before) != side.end();
  const bool has_after = std::find(side.begin(), side.end(), Side::after) != side.end();
  if (has_before && has_after) {
    // Split maximizing before-samples left of it plus after-samples right of it.
    std::vector<int> before_prefix(n + 1, 0), after_suffix(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) before_prefix[i + 1] = before_prefix[i] + (side[i] == Side::before);
    for (std::size_t i = n; i-- > 0;) after_suffix[i] = after_suffix[i + 1] + (side[i] == Side::after);
    std::size_t split = 0;
    int best = -1;
    for (std::size_t s = 0; s <= n; ++s) {
      const int score = before_prefix[s] + after_suffix[s];
      if (score > best) {
        best = score;
        split = s;
      }
    }
    std::optional<std::size_t> last_before, first_after;
    for (std::size_t i = split; i-- > 0;) {
      if (side[i] == Side::before) {
        last_before = i;
        break;
      }
    }
    for (std::size_t i = split; i < n; ++i) {
      if (side[i] == Side::after) {
        first_after = i;
        break;
      }
    }
    if (!last_before || !first_after) return std::nullopt;
    return (angles[*last_before] + angles[*first_after]) / 2.0;
  }
  // Shared palette: center of the separator run closest to the guess.
  std::optional<double> best;
  for (std::size_t i = 0; i < n;) {
    if (side[i] != Side::other) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && side[j] == Side::other) ++j;
    if (i > 0 && j < n) {
      const double mid = (angles[i] + angles[j - 1]) / 2.0;
      if (!best || std::abs(mid - guess) < std::abs(*best - guess)) best = mid;
    }
    i = j;
  }
  return best;
}

std::optional<double> refine_boundary(const PieGeometry& g, double guess, const std::vector<ColorCluster>& before,
                                      const std::vector<ColorCluster>& after, const Raster& raster, double window) {
  if (before.empty() || after.empty()) return std::nullopt;
  std::vector<Point> pts;
  for (double r = std::max(4.0, 0.3 * g.radius); r <= 0.95 * g.radius; r += 1.0) {
    const double step = 0.5 / r / kDeg;
    std::vector<double> angles;
    std::vector<Side> side;
    for (double a = guess - window; a <= guess + window; a += step) {
      const Point p = on_ray(g.center, r, a);
      const int x = int(std::lround(p.x)), y = int(std::lround(p.y));
      if (!raster.in_bounds(x, y)) continue;
      const Color c = raster.at(x, y);
      const double db = palette_distance(before, c), da = palette_distance(after, c);
      Side s = Side::other;
      if (std::min(db, da) <= kPaletteMatch) s = db < da ? Side::before : da < db ? Side::after : Side::both;
      angles.push_back(a);
      side.push_back(s);
    }
    if (const auto t = arc_transition(angles, side, guess)) pts.push_back(on_ray(g.center, r, *t));
  }
  if (pts.size() < 8) return std::nullopt;

  // Principal direction of the transition points.
  double mx = 0.0, my = 0.0;
  for (const Point& p : pts) {
    mx += p.x;
    my += p.y;
  }
  mx /= double(pts.size());
  my /= double(pts.size());
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const Point& p : pts) {
    sxx += (p.x - mx) * (p.x - mx);
    syy += (p.y - my) * (p.y - my);
    sxy += (p.x - mx) * (p.y - my);
  }
  const double theta = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  double dx = std::cos(theta), dy = std::sin(theta);
  const Point out = on_ray({0.0, 0.0}, 1.0, guess);
  if (dx * out.x + dy * out.y < 0.0) {
    dx = -dx;
    dy = -dy;
  }
  double rss = 0.0;
  for (const Point& p : pts) {
    const double e = (p.x - mx) * dy - (p.y - my) * dx;
    rss += e * e;
  }
  if (std::sqrt(rss / double(pts.size())) > 1.5) return std::nullopt;
  const double deg = wrap_deg(std::atan2(-dy, dx) / kDeg);
  const double shift = ccw_span_deg(guess, deg);
  if (std::min(shift, 360.0 - shift) > window) return std::nullopt;
  return deg;
}

}  // namespace

std::vector<SectorInfo> extract_sectors(const PieGeometry& geom, const Heatmap& radial, const Heatmap& corner,
                                        const AnalysisConfig& config, double scale) {
  const Point c{geom.center.x / scale, geom.center.y / scale};
  const double r = geom.radius / scale;

  // Outer radii weigh more: the line profile is narrower there.
  std::vector<double> hist(360, 0.0);
  for (int k = 0; k < 360; ++k) {
    for (double t = 0.4 * r; t <= 0.95 * r; t += 0.5) {
      const Point p = on_ray(c, t, k);
      hist[std::size_t(k)] += radial.sample(p.x, p.y) * t;
    }
  }
  const double top = *std::max_element(hist.begin(), hist.end());
  std::vector<std::pair<double, double>> peaks;  // angle, height
  if (top > 0.0) {
    for (int k = 0; k < 360; ++k) {
      const double h = hist[std::size_t(k)];
      const double l = hist[std::size_t((k + 359) % 360)], rr = hist[std::size_t((k + 1) % 360)];
      if (h < config.sector_peak_fraction * top || h < l || h <= rr) continue;
      const double denom = l - 2.0 * h + rr;
      const double off = denom < 0.0 ? std::clamp(0.5 * (l - rr) / denom, -0.5, 0.5) : 0.0;
      peaks.emplace_back(wrap_deg(k + off), h);
    }
  }
  // Merge peaks closer than the window, keeping the stronger.
  std::stable_sort(peaks.begin(), peaks.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  std::vector<double> bounds;
  auto near_existing = [&](double a) {
    return std::any_of(bounds.begin(), bounds.end(), [&](double b) {
      const double d = ccw_span_deg(a, b);
      return std::min(d, 360.0 - d) <= config.sector_merge_deg;
    });
  };
  for (const auto& [a, h] : peaks) {
    if (!near_existing(a)) bounds.push_back(a);
  }
  for (const Point& p : local_maxima(corner, config.peak_threshold, config.peak_min_distance)) {
    const Point q = refine_peak(corner, p);
    if (std::abs(distance(q, c) - r) > 3.0) continue;
    const double a = polar_angle_deg(c, q);
    if (!near_existing(a)) bounds.push_back(a);
  }
  return sectors_from_bounds(bounds);
}

std::vector<Color> detail::pie_fill_colors(const PieGeometry& geom, const Raster& raster) {
  std::vector<Color> out;
  for (const SectorInfo& s : geom.sectors) {
    for (const ColorCluster& c : sector_palette(geom, s, raster)) out.push_back(c.mean);
  }
  return out;
}

void sample_sector_colors(PieGeometry& geom, const Raster& raster) {
  for (SectorInfo& s : geom.sectors) {
    const auto palette = sector_palette(geom, s, raster);
    if (!palette.empty()) s.color = palette.front().mean;
  }
}

void refine_sectors(PieGeometry& geom, const Raster& raster, const AnalysisConfig& config) {
  const std::size_t n = geom.sectors.size();
  if (n >= 2) {
    std::vector<std::vector<ColorCluster>> palettes;
    for (const SectorInfo& s : geom.sectors) palettes.push_back(sector_palette(geom, s, raster));
    std::vector<double> bounds;
    for (std::size_t i = 0; i < n; ++i) {
      const double guess = geom.sectors[i].start_deg;
      const auto& before = palettes[(i + n - 1) % n];
      const auto refined = refine_boundary(geom, guess, before, palettes[i], raster, config.sector_refine_window_deg);
      bounds.push_back(refined.value_or(guess));
    }
    geom.sectors = sectors_from_bounds(bounds);
  }
  sample_sector_colors(geom, raster);
}

}  // namespace charter
