#pragma once

// Helpers shared by the extraction stages.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "charter/analysis/config.hpp"
#include "charter/core/geometry.hpp"
#include "charter/core/heatmap.hpp"
#include "charter/core/raster.hpp"
#include "charter/oracle/detector.hpp"
#include "charter/oracle/ocr.hpp"

namespace charter {
struct PieGeometry;
}

namespace charter::detail {

/// Raster pixels per heatmap cell (1 when the detector has no heatmaps).
double heatmap_scale(const DetectorOutput& det);
const Heatmap* find_heatmap(const DetectorOutput& det, HeatmapCategory c);

/// Boxes of one category scoring at least `min_score`, best first.
std::vector<BBox> boxes_of(const DetectorOutput& det, BoxCategory c, double min_score);
std::optional<BBox> best_box(const DetectorOutput& det, BoxCategory c, double min_score);

/// Refined heatmap peaks in raster coordinates.
std::vector<Point> decode_peaks(const Heatmap& h, const AnalysisConfig& config, double scale);

/// Per-channel median over the pixels whose centers lie in [x0, x1) x [y0, y1).
Color median_color(const Raster& raster, double x0, double y0, double x1, double y1);

/// Most frequent color in the box.
Color mode_color(const Raster& raster, const BBox& box);

struct ColorCluster {
  Color mean;
  std::size_t count = 0;
};

/// Greedy centroid clustering: each color joins the first cluster whose
/// running mean lies within `merge`, else starts a new one. Largest first.
std::vector<ColorCluster> cluster_colors(std::span<const Color> colors, double merge);

/// Index of the nearest cluster within `merge`, if any.
std::optional<std::size_t> nearest_cluster(const std::vector<ColorCluster>& clusters, Color c, double merge);

/// Texts of the unrotated tokens centered inside `box`, left to right, top to bottom.
std::optional<std::string> text_in(const OcrOutput& ocr, const BBox& box);

/// Every palette color of every sector interior (fill and texture shade).
std::vector<Color> pie_fill_colors(const PieGeometry& geom, const Raster& raster);

bool center_inside(const OcrToken& t, const BBox& box, double margin = 0.0);

}  // namespace charter::detail
