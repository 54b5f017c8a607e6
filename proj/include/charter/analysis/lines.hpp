#pragma once

#include <optional>
#include <string>
#include <vector>

#include "charter/analysis/axis.hpp"
#include "charter/analysis/chart_table.hpp"
#include "charter/analysis/config.hpp"
#include "charter/core/raster.hpp"
#include "charter/oracle/detector.hpp"
#include "charter/oracle/ocr.hpp"

namespace charter {

struct SeriesElement {
  std::string label;
  Provenance label_source = Provenance::positional;
  Color color;
  /// Raster positions, sorted by x.
  std::vector<Point> pixels;
  /// Data coordinates; equal to `pixels` when uncalibrated.
  std::vector<DataPoint> points;
  bool calibrated = false;
  double confidence = 1.0;
};

/// Polylines under the line heatmap, separated by raster color, stitched
/// across dash gaps and sampled at the knee peaks. Missing knees of one
/// series are filled from its pixel trace at the knees found on the others.
std::vector<SeriesElement> extract_lines(const DetectorOutput& det, const Raster& raster,
                                         const std::optional<AxisModel>& x_axis,
                                         const std::optional<AxisModel>& y_axis, const OcrOutput& ocr,
                                         const AnalysisConfig& config = {});

/// Dot-heatmap peaks grouped into series by the raster color under them.
std::vector<SeriesElement> extract_scatter(const DetectorOutput& det, const Raster& raster,
                                           const std::optional<AxisModel>& x_axis,
                                           const std::optional<AxisModel>& y_axis, const OcrOutput& ocr,
                                           const AnalysisConfig& config = {});

}  // namespace charter
