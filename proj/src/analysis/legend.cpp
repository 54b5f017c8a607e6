#include "charter/analysis/legend.hpp"

#include <algorithm>
#include <cmath>

#include "charter/core/image_ops.hpp"
#include "internal.hpp"

namespace charter {

namespace {

constexpr double kSearchWidth = 24.0;
constexpr double kForeground = 30.0;
constexpr double kUniform = 20.0;

}  // namespace

std::vector<LegendSwatch> find_legend_swatches(const BBox& legend, const OcrOutput& ocr, const Raster& raster) {
  const Color bg = detail::mode_color(raster, legend);
  std::vector<LegendSwatch> out;
  for (const OcrToken& t : ocr.tokens) {
    if (t.angle != 0.0 || !detail::center_inside(t, legend, 2.0)) continue;
    const BBox tb = t.bounds();
    const int x0 = std::max(0, int(std::floor(tb.x_min - kSearchWidth)));
    const int x1 = std::min(raster.width() - 1, int(std::floor(tb.x_min)) - 2);
    const int y0 = std::max(0, int(std::floor(tb.y_min)) - 2);
    const int y1 = std::min(raster.height() - 1, int(std::ceil(tb.y_max)) + 2);
    if (x1 < x0 || y1 < y0) continue;

    Mask m(x1 - x0 + 1, y1 - y0 + 1);
    for (int y = y0; y <= y1; ++y) {
      for (int x = x0; x <= x1; ++x) {
        if (color_distance(raster.at(x, y), bg) > kForeground) m.set(x - x0, y - y0);
      }
    }
    const auto comps = connected_components(m);
    const auto biggest = std::max_element(comps.begin(), comps.end(),
                                          [](const Component& a, const Component& b) { return a.area() < b.area(); });
    if (biggest == comps.end() || biggest->area() < 9) continue;

    std::vector<Color> colors;
    for (const PixelCoord& p : biggest->pixels) colors.push_back(raster.at(p.x + x0, p.y + y0));
    const auto clusters = detail::cluster_colors(colors, kUniform);
    if (double(clusters.front().count) < 0.8 * double(colors.size())) continue;

    LegendSwatch s;
    s.box = {double(biggest->x_min + x0), double(biggest->y_min + y0), double(biggest->x_max + x0 + 1),
             double(biggest->y_max + y0 + 1), BoxCategory::legend, 1.0};
    s.color = clusters.front().mean;
    s.text = t.text;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<std::optional<std::string>> match_legend(const std::vector<LegendSwatch>& swatches,
                                                     const std::vector<Color>& element_colors,
                                                     const AnalysisConfig& config) {
  std::vector<std::optional<std::string>> out(element_colors.size());
  for (std::size_t i = 0; i < element_colors.size(); ++i) {
    double best = config.legend_color_distance;
    for (const LegendSwatch& s : swatches) {
      const double d = color_distance(s.color, element_colors[i]);
      if (d < best) {
        best = d;
        out[i] = s.text;
      }
    }
  }
  return out;
}

std::vector<std::optional<std::string>> match_legend(const BBox& legend, const OcrOutput& ocr, const Raster& raster,
                                                     const std::vector<Color>& element_colors,
                                                     const AnalysisConfig& config) {
  return match_legend(find_legend_swatches(legend, ocr, raster), element_colors, config);
}

}  // namespace charter
