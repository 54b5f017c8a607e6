#include "internal.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "charter/core/image_ops.hpp"

namespace charter::detail {

double heatmap_scale(const DetectorOutput& det) {
  if (det.heatmaps.empty()) return 1.0;
  return double(det.width) / det.heatmaps.begin()->second.width();
}

const Heatmap* find_heatmap(const DetectorOutput& det, HeatmapCategory c) {
  const auto it = det.heatmaps.find(c);
  return it == det.heatmaps.end() ? nullptr : &it->second;
}

std::vector<BBox> boxes_of(const DetectorOutput& det, BoxCategory c, double min_score) {
  std::vector<BBox> out;
  for (const BBox& b : det.boxes) {
    if (b.category == c && b.score >= min_score && b.valid()) out.push_back(b);
  }
  std::stable_sort(out.begin(), out.end(), [](const BBox& a, const BBox& b) { return a.score > b.score; });
  return out;
}

std::optional<BBox> best_box(const DetectorOutput& det, BoxCategory c, double min_score) {
  auto all = boxes_of(det, c, min_score);
  if (all.empty()) return std::nullopt;
  return all.front();
}

std::vector<Point> decode_peaks(const Heatmap& h, const AnalysisConfig& config, double scale) {
  std::vector<Point> out;
  for (const Point& p : local_maxima(h, config.peak_threshold, config.peak_min_distance)) {
    const Point q = refine_peak(h, p);
    out.push_back({q.x * scale, q.y * scale, p.intensity});
  }
  return out;
}

Color median_color(const Raster& raster, double x0, double y0, double x1, double y1) {
  std::array<std::vector<std::uint8_t>, 3> ch;
  const int xa = std::max(0, int(std::ceil(x0))), xb = std::min(raster.width(), int(std::ceil(x1)));
  const int ya = std::max(0, int(std::ceil(y0))), yb = std::min(raster.height(), int(std::ceil(y1)));
  for (int y = ya; y < yb; ++y) {
    for (int x = xa; x < xb; ++x) {
      const Color c = raster.at(x, y);
      ch[0].push_back(c.r);
      ch[1].push_back(c.g);
      ch[2].push_back(c.b);
    }
  }
  if (ch[0].empty()) {
    const int x = std::clamp(int(std::lround((x0 + x1) / 2)), 0, raster.width() - 1);
    const int y = std::clamp(int(std::lround((y0 + y1) / 2)), 0, raster.height() - 1);
    return raster.at(x, y);
  }
  std::array<std::uint8_t, 3> m{};
  for (int k = 0; k < 3; ++k) {
    auto mid = ch[k].begin() + std::ptrdiff_t(ch[k].size() / 2);
    std::nth_element(ch[k].begin(), mid, ch[k].end());
    m[k] = *mid;
  }
  return {m[0], m[1], m[2]};
}

Color mode_color(const Raster& raster, const BBox& box) {
  std::map<Color, std::size_t> counts;
  const int xa = std::max(0, int(std::ceil(box.x_min))), xb = std::min(raster.width(), int(std::ceil(box.x_max)));
  const int ya = std::max(0, int(std::ceil(box.y_min))), yb = std::min(raster.height(), int(std::ceil(box.y_max)));
  for (int y = ya; y < yb; ++y) {
    for (int x = xa; x < xb; ++x) ++counts[raster.at(x, y)];
  }
  if (counts.empty()) return raster.at(0, 0);
  return std::max_element(counts.begin(), counts.end(), [](const auto& a, const auto& b) { return a.second < b.second; })
      ->first;
}

namespace {

struct Accumulator {
  double r = 0.0, g = 0.0, b = 0.0;
  std::size_t n = 0;
  Color mean() const {
    auto q = [&](double v) { return static_cast<std::uint8_t>(std::lround(v / double(n))); };
    return {q(r), q(g), q(b)};
  }
};

}  // namespace

std::vector<ColorCluster> cluster_colors(std::span<const Color> colors, double merge) {
  std::vector<Accumulator> acc;
  std::vector<Color> means;
  for (const Color& c : colors) {
    std::size_t k = 0;
    while (k < acc.size() && color_distance(means[k], c) > merge) ++k;
    if (k == acc.size()) {
      acc.emplace_back();
      means.push_back(c);
    }
    acc[k].r += c.r;
    acc[k].g += c.g;
    acc[k].b += c.b;
    ++acc[k].n;
    means[k] = acc[k].mean();
  }
  std::vector<ColorCluster> out;
  for (const Accumulator& a : acc) out.push_back({a.mean(), a.n});
  std::stable_sort(out.begin(), out.end(), [](const ColorCluster& a, const ColorCluster& b) { return a.count > b.count; });
  return out;
}

std::optional<std::size_t> nearest_cluster(const std::vector<ColorCluster>& clusters, Color c, double merge) {
  std::optional<std::size_t> best;
  double best_d = merge;
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    const double d = color_distance(clusters[k].mean, c);
    if (d <= best_d) {
      best_d = d;
      best = k;
    }
  }
  return best;
}

bool center_inside(const OcrToken& t, const BBox& box, double margin) {
  const Point c = t.bounds().center();
  return c.x >= box.x_min - margin && c.x <= box.x_max + margin && c.y >= box.y_min - margin &&
         c.y <= box.y_max + margin;
}

std::optional<std::string> text_in(const OcrOutput& ocr, const BBox& box) {
  std::vector<const OcrToken*> hits;
  for (const OcrToken& t : ocr.tokens) {
    if (center_inside(t, box, 2.0)) hits.push_back(&t);
  }
  if (hits.empty()) return std::nullopt;
  std::stable_sort(hits.begin(), hits.end(), [](const OcrToken* a, const OcrToken* b) {
    const BBox ba = a->bounds(), bb = b->bounds();
    if (std::abs(ba.center().y - bb.center().y) > 4.0) return ba.center().y < bb.center().y;
    return ba.x_min < bb.x_min;
  });
  std::string s;
  for (const OcrToken* t : hits) {
    if (!s.empty()) s += ' ';
    s += t->text;
  }
  return s;
}

}  // namespace charter::detail
