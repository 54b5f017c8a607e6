#pragma once

#include <optional>
#include <string>
#include <vector>

#include "charter/analysis/chart_table.hpp"
#include "charter/analysis/config.hpp"
#include "charter/core/heatmap.hpp"
#include "charter/core/raster.hpp"
#include "charter/oracle/ocr.hpp"

namespace charter {

/// Angles are degrees counterclockwise on screen, starting at 3 o'clock.
struct SectorInfo {
  double start_deg = 0.0;
  double span_deg = 0.0;
  /// Dominant interior color.
  Color color;
};

/// A fitted pie in raster coordinates.
struct PieGeometry {
  Point center;
  double radius = 0.0;
  std::vector<SectorInfo> sectors;
  /// Circumference votes at the fitted radius over a full-intensity ring.
  double support = 0.0;
};

/// Circles from the center and circumference heatmaps (`scale` raster pixels
/// per heatmap cell): every center peak votes a radius with the circumference
/// intensity, the center moves to the centroid of the ring and the radius is
/// voted again. Weak rings are dropped; strongest first.
std::vector<PieGeometry> fit_pies(const Heatmap& center, const Heatmap& circumference,
                                  const AnalysisConfig& config = {}, double scale = 1.0);

/// Sector boundaries from the angular profile of the radial-line heatmap,
/// completed by circumference corner peaks. Spans always sum to 360.
std::vector<SectorInfo> extract_sectors(const PieGeometry& geom, const Heatmap& radial, const Heatmap& corner,
                                        const AnalysisConfig& config = {}, double scale = 1.0);

/// Moves each boundary onto the color transition found in the raster within
/// the configured window (a separator line or a change of fill) and samples
/// every sector's color. Boundaries without clear evidence stay put.
void refine_sectors(PieGeometry& geom, const Raster& raster, const AnalysisConfig& config = {});

/// Fills SectorInfo::color from the raster without moving boundaries.
void sample_sector_colors(PieGeometry& geom, const Raster& raster);

/// Box-only baseline: the circle inscribed in the union of the sector
/// proposals; boundaries are the crossings of proposal edges with the circle
/// that best reproduce the proposals as wedge bounding boxes.
std::optional<PieGeometry> pie_from_boxes(const std::vector<BBox>& sector_boxes, const AnalysisConfig& config = {});

struct SectorLabel {
  std::string text;
  Provenance source = Provenance::positional;
};

/// Names sectors from the legend when one is found, else from connector
/// lines leaving the disc, else from text placed within each sector's
/// angular span (inside first). Unnamed sectors become "sector_k".
/// Tokens centered in `furniture` boxes are ignored.
std::vector<SectorLabel> label_sectors(const PieGeometry& geom, const Raster& raster, const OcrOutput& ocr,
                                       const std::optional<BBox>& legend, const std::vector<BBox>& furniture = {},
                                       const AnalysisConfig& config = {});

}  // namespace charter
