#include "charter/analysis/lines.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "charter/analysis/legend.hpp"
#include "charter/core/image_ops.hpp"
#include "internal.hpp"

namespace charter {

namespace {

using detail::ColorCluster;

// Color groups with fewer pixels are noise.
constexpr std::size_t kMinClusterPixels = 15;
constexpr std::size_t kMinFragmentPixels = 4;
// Series spanning fewer columns are noise.
constexpr double kMinSeriesWidth = 10.0;
// A knee farther than this from its series' pixels is a blend of two peaks.
constexpr double kKneeOnLine = 3.0;
// Same-color chains sharing at most this fraction of columns form one series.
constexpr double kSharedColumns = 0.3;
// Knees of different series closer than this in x share a position.
constexpr double kSharedX = 4.0;

struct Fragment {
  std::vector<Point> pixels;
  double x_min = 0.0;
  double x_max = 0.0;
  Point centroid;
  /// Principal direction, pointing to +x.
  Point dir{1.0, 0.0};
};

Fragment make_fragment(const Component& c, int x0, int y0) {
  Fragment f;
  f.x_min = c.x_min + x0;
  f.x_max = c.x_max + x0;
  for (const PixelCoord& p : c.pixels) f.pixels.push_back({double(p.x + x0), double(p.y + y0)});
  double mx = 0.0, my = 0.0;
  for (const Point& p : f.pixels) {
    mx += p.x;
    my += p.y;
  }
  mx /= double(f.pixels.size());
  my /= double(f.pixels.size());
  f.centroid = {mx, my};
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (const Point& p : f.pixels) {
    sxx += (p.x - mx) * (p.x - mx);
    syy += (p.y - my) * (p.y - my);
    sxy += (p.x - mx) * (p.y - my);
  }
  const double t = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  f.dir = {std::cos(t), std::sin(t)};
  if (f.dir.x < 0.0) f.dir = {-f.dir.x, -f.dir.y};
  return f;
}

// Smallest pixel distance between the right end of `a` and the left end of `b`.
double fragment_gap(const Fragment& a, const Fragment& b, double reach) {
  double best = 1e9;
  for (const Point& p : a.pixels) {
    if (p.x < a.x_max - reach) continue;
    for (const Point& q : b.pixels) {
      if (q.x > b.x_min + reach) continue;
      best = std::min(best, distance(p, q));
    }
  }
  return best;
}

double angle_between(const Point& u, const Point& v) {
  const double nu = std::hypot(u.x, u.y), nv = std::hypot(v.x, v.y);
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return std::acos(std::clamp((u.x * v.x + u.y * v.y) / (nu * nv), -1.0, 1.0)) * 180.0 / kPi;
}

struct Trace {
  Color color;
  std::vector<Point> pixels;
  std::map<int, std::vector<double>> columns;
  double x_min = 0.0;
  double x_max = 0.0;

  void add(const Fragment& f) {
    if (pixels.empty()) {
      x_min = f.x_min;
      x_max = f.x_max;
    }
    x_min = std::min(x_min, f.x_min);
    x_max = std::max(x_max, f.x_max);
    for (const Point& p : f.pixels) {
      pixels.push_back(p);
      columns[int(p.x)].push_back(p.y);
    }
  }

  // Center of the vertical run in the column nearest x that lies closest to `ref`.
  std::optional<double> y_near(double x, double ref) const {
    for (int d = 0; d <= 2; ++d) {
      for (int col : {int(std::lround(x)) - d, int(std::lround(x)) + d}) {
        const auto it = columns.find(col);
        if (it == columns.end()) continue;
        std::vector<double> ys = it->second;
        std::sort(ys.begin(), ys.end());
        std::optional<double> best;
        for (std::size_t i = 0; i < ys.size();) {
          std::size_t j = i + 1;
          while (j < ys.size() && ys[j] - ys[j - 1] <= 1.0) ++j;
          const double mid = (ys[i] + ys[j - 1]) / 2.0;
          if (!best || std::abs(mid - ref) < std::abs(*best - ref)) best = mid;
          i = j;
        }
        return best;
      }
    }
    return std::nullopt;
  }

  /// Distance to the nearest pixel, or 1e9 when none lies within `reach` columns.
  double distance_to(const Point& p, double reach) const {
    double best = 1e9;
    for (int col = int(std::floor(p.x - reach)); col <= int(std::ceil(p.x + reach)); ++col) {
      const auto it = columns.find(col);
      if (it == columns.end()) continue;
      for (double y : it->second) best = std::min(best, std::hypot(col - p.x, y - p.y));
    }
    return best;
  }
};

BBox plot_region(const DetectorOutput& det, const Raster& raster, const AnalysisConfig& config) {
  if (const auto b = detail::best_box(det, BoxCategory::plot_area, config.region_score_threshold)) {
    // Stay clear of the axis lines along the left and bottom edges.
    return {b->x_min + 2.0, b->y_min, b->x_max, b->y_max - 2.0, BoxCategory::plot_area, b->score};
  }
  return {0.0, 0.0, double(raster.width() - 1), double(raster.height() - 1), BoxCategory::plot_area, 1.0};
}

std::vector<Trace> trace_lines(const Heatmap& line, double scale, const Raster& raster, const BBox& region,
                               const AnalysisConfig& config) {
  const Color bg = detail::mode_color(raster, region);
  const int x0 = std::max(0, int(std::ceil(region.x_min))), x1 = std::min(raster.width() - 1, int(std::floor(region.x_max)));
  const int y0 = std::max(0, int(std::ceil(region.y_min))), y1 = std::min(raster.height() - 1, int(std::floor(region.y_max)));
  if (x1 < x0 || y1 < y0) return {};

  std::vector<PixelCoord> cand;
  std::vector<Color> colors;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      if (line.sample(x / scale, y / scale) < config.line_threshold) continue;
      const Color c = raster.at(x, y);
      if (color_distance(c, bg) <= config.color_merge_distance) continue;
      cand.push_back({x, y});
      colors.push_back(c);
    }
  }
  auto clusters = detail::cluster_colors(colors, config.color_merge_distance);
  std::erase_if(clusters, [](const ColorCluster& c) { return c.count < kMinClusterPixels; });

  std::vector<Trace> out;
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    Mask m(x1 - x0 + 1, y1 - y0 + 1);
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (detail::nearest_cluster(clusters, colors[i], config.color_merge_distance) == k) {
        m.set(cand[i].x - x0, cand[i].y - y0);
      }
    }
    if (config.line_close_radius > 0) m = morphology(m, MorphOp::close, config.line_close_radius);

    std::vector<Fragment> frags;
    for (const Component& c : connected_components(m)) {
      if (c.area() >= kMinFragmentPixels) frags.push_back(make_fragment(c, x0, y0));
    }
    std::stable_sort(frags.begin(), frags.end(), [](const Fragment& a, const Fragment& b) {
      return a.x_min < b.x_min || (a.x_min == b.x_min && a.centroid.y < b.centroid.y);
    });

    // Stitch fragments into chains across short, direction-consistent gaps.
    std::vector<std::vector<std::size_t>> chains;
    for (std::size_t i = 0; i < frags.size(); ++i) {
      std::optional<std::size_t> best;
      double best_gap = config.stitch_gap;
      for (std::size_t c = 0; c < chains.size(); ++c) {
        const Fragment& tail = frags[chains[c].back()];
        if (frags[i].x_max < tail.x_max - 1.0) continue;
        const double gap = fragment_gap(tail, frags[i], config.stitch_gap + 2.0);
        if (gap > best_gap) continue;
        const Point link{frags[i].centroid.x - tail.centroid.x, frags[i].centroid.y - tail.centroid.y};
        const double turn = angle_between(tail.dir, link);
        if (std::min(turn, 180.0 - turn) > config.stitch_angle_deg) continue;
        best = c;
        best_gap = gap;
      }
      if (best) {
        chains[*best].push_back(i);
      } else {
        chains.push_back({i});
      }
    }

    // Chains of one color that do not overlap in x belong to one series.
    std::vector<Trace> series;
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t c = 0; c < chains.size(); ++c) {
      double lo = 1e9, hi = -1e9;
      for (std::size_t f : chains[c]) {
        lo = std::min(lo, frags[f].x_min);
        hi = std::max(hi, frags[f].x_max);
      }
      order.emplace_back(hi - lo, c);
    }
    std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [width, c] : order) {
      Trace chain;
      chain.color = clusters[k].mean;
      for (std::size_t f : chains[c]) chain.add(frags[f]);
      // Pieces of one dashed line rarely fill the same column; two lines
      // overlapping in x share most of their columns.
      auto home = std::find_if(series.begin(), series.end(), [&](const Trace& s) {
        std::size_t shared = 0;
        for (const auto& [col, ys] : chain.columns) shared += s.columns.count(col);
        return double(shared) <= kSharedColumns * double(std::min(chain.columns.size(), s.columns.size()));
      });
      if (home == series.end()) {
        series.push_back(std::move(chain));
      } else {
        for (std::size_t f : chains[c]) home->add(frags[f]);
      }
    }
    for (Trace& s : series) {
      if (s.x_max - s.x_min >= kMinSeriesWidth) out.push_back(std::move(s));
    }
  }
  return out;
}

std::vector<std::string> series_labels(const DetectorOutput& det, const Raster& raster, const OcrOutput& ocr,
                                       const std::vector<Color>& colors, const AnalysisConfig& config,
                                       std::vector<Provenance>& sources) {
  std::vector<std::optional<std::string>> names(colors.size());
  if (const auto legend = detail::best_box(det, BoxCategory::legend, config.region_score_threshold)) {
    names = match_legend(*legend, ocr, raster, colors, config);
  }
  std::vector<std::string> out;
  sources.clear();
  for (std::size_t k = 0; k < names.size(); ++k) {
    out.push_back(names[k].value_or("series_" + std::to_string(k + 1)));
    sources.push_back(names[k] ? Provenance::legend : Provenance::positional);
  }
  return out;
}

void finish(std::vector<SeriesElement>& series, const DetectorOutput& det, const Raster& raster,
            const std::optional<AxisModel>& x_axis, const std::optional<AxisModel>& y_axis, const OcrOutput& ocr,
            const AnalysisConfig& config) {
  std::vector<Color> colors;
  for (const SeriesElement& s : series) colors.push_back(s.color);
  std::vector<Provenance> sources;
  const auto labels = series_labels(det, raster, ocr, colors, config, sources);
  const bool calibrated = x_axis && y_axis;
  for (std::size_t k = 0; k < series.size(); ++k) {
    SeriesElement& s = series[k];
    s.label = labels[k];
    s.label_source = sources[k];
    s.calibrated = calibrated;
    std::sort(s.pixels.begin(), s.pixels.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
    s.points.clear();
    for (const Point& p : s.pixels) {
      s.points.push_back(calibrated ? DataPoint{x_axis->value_at(p.x), y_axis->value_at(p.y)} : DataPoint{p.x, p.y});
    }
  }
}

}  // namespace

std::vector<SeriesElement> extract_lines(const DetectorOutput& det, const Raster& raster,
                                         const std::optional<AxisModel>& x_axis,
                                         const std::optional<AxisModel>& y_axis, const OcrOutput& ocr,
                                         const AnalysisConfig& config) {
  const Heatmap* line = detail::find_heatmap(det, HeatmapCategory::line);
  if (!line) return {};
  const double scale = detail::heatmap_scale(det);
  const std::vector<Trace> traces = trace_lines(*line, scale, raster, plot_region(det, raster, config), config);
  if (traces.empty()) return {};

  // Each knee joins the nearest trace within the snapping distance.
  std::vector<std::vector<Point>> knees(traces.size());
  if (const Heatmap* kh = detail::find_heatmap(det, HeatmapCategory::line_knee)) {
    for (const Point& k : detail::decode_peaks(*kh, config, scale)) {
      std::optional<std::size_t> best;
      double best_d = config.knee_snap_distance;
      for (std::size_t t = 0; t < traces.size(); ++t) {
        const double d = traces[t].distance_to(k, config.knee_snap_distance);
        if (d <= best_d) {
          best_d = d;
          best = t;
        }
      }
      if (!best) continue;
      Point p{k.x, k.y};
      if (best_d > kKneeOnLine) {
        if (const auto y = traces[*best].y_near(k.x, k.y)) p.y = *y;
      }
      knees[*best].push_back(p);
    }
  }

  // Knee x positions seen on any series.
  std::vector<double> shared;
  for (const auto& ks : knees) {
    for (const Point& p : ks) shared.push_back(p.x);
  }
  std::sort(shared.begin(), shared.end());
  std::vector<double> columns;
  for (std::size_t i = 0; i < shared.size();) {
    std::size_t j = i;
    double sum = 0.0;
    while (j < shared.size() && shared[j] - shared[i] <= kSharedX) sum += shared[j++];
    columns.push_back(sum / double(j - i));
    i = j;
  }

  std::vector<SeriesElement> out;
  for (std::size_t t = 0; t < traces.size(); ++t) {
    SeriesElement s;
    s.color = traces[t].color;
    s.pixels = knees[t];
    std::sort(s.pixels.begin(), s.pixels.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
    const std::vector<Point> own = s.pixels;
    for (double x : columns) {
      if (x < traces[t].x_min - 2.0 || x > traces[t].x_max + 2.0) continue;
      const bool have = std::any_of(own.begin(), own.end(), [&](const Point& p) { return std::abs(p.x - x) <= kSharedX; });
      if (have) continue;
      // Aim at the run nearest the straight line between the own neighbors.
      double ref = 0.0;
      auto right = std::find_if(own.begin(), own.end(), [&](const Point& p) { return p.x > x; });
      if (right != own.begin() && right != own.end()) {
        const Point& a = *(right - 1);
        ref = a.y + (right->y - a.y) * (x - a.x) / (right->x - a.x);
      } else if (!own.empty()) {
        ref = right == own.end() ? own.back().y : own.front().y;
      } else {
        ref = traces[t].pixels.front().y;
      }
      if (const auto y = traces[t].y_near(x, ref)) s.pixels.push_back({x, *y});
    }
    if (s.pixels.empty()) {
      // No knees at all: sample the trace ends.
      for (double x : {traces[t].x_min, traces[t].x_max}) {
        if (const auto y = traces[t].y_near(x, traces[t].pixels.front().y)) s.pixels.push_back({x, *y});
      }
    }
    out.push_back(std::move(s));
  }
  finish(out, det, raster, x_axis, y_axis, ocr, config);
  return out;
}

std::vector<SeriesElement> extract_scatter(const DetectorOutput& det, const Raster& raster,
                                           const std::optional<AxisModel>& x_axis,
                                           const std::optional<AxisModel>& y_axis, const OcrOutput& ocr,
                                           const AnalysisConfig& config) {
  const Heatmap* dots = detail::find_heatmap(det, HeatmapCategory::scatter_dot);
  if (!dots) return {};
  const double scale = detail::heatmap_scale(det);
  const std::vector<Point> peaks = detail::decode_peaks(*dots, config, scale);
  if (peaks.empty()) return {};

  std::vector<Color> colors;
  for (const Point& p : peaks) colors.push_back(detail::median_color(raster, p.x - 1.5, p.y - 1.5, p.x + 1.5, p.y + 1.5));
  const auto clusters = detail::cluster_colors(colors, config.color_merge_distance);

  std::vector<SeriesElement> out(clusters.size());
  for (std::size_t k = 0; k < clusters.size(); ++k) out[k].color = clusters[k].mean;
  for (std::size_t i = 0; i < peaks.size(); ++i) {
    const auto k = detail::nearest_cluster(clusters, colors[i], config.color_merge_distance);
    if (k) out[*k].pixels.push_back({peaks[i].x, peaks[i].y});
  }
  std::erase_if(out, [](const SeriesElement& s) { return s.pixels.empty(); });
  finish(out, det, raster, x_axis, y_axis, ocr, config);
  return out;
}

}  // namespace charter
