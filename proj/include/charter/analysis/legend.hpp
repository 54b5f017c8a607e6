#pragma once

#include <optional>
#include <string>
#include <vector>

#include "charter/analysis/config.hpp"
#include "charter/core/raster.hpp"
#include "charter/oracle/ocr.hpp"

namespace charter {

struct LegendSwatch {
  BBox box;
  Color color;
  std::string text;
};

/// Uniform color patches just left of the text tokens inside `legend`.
/// Entries whose patch is missing or textured are skipped.
std::vector<LegendSwatch> find_legend_swatches(const BBox& legend, const OcrOutput& ocr, const Raster& raster);

/// Label of the nearest swatch for each element color, or none when no
/// swatch lies within config.legend_color_distance.
std::vector<std::optional<std::string>> match_legend(const std::vector<LegendSwatch>& swatches,
                                                     const std::vector<Color>& element_colors,
                                                     const AnalysisConfig& config = {});

std::vector<std::optional<std::string>> match_legend(const BBox& legend, const OcrOutput& ocr, const Raster& raster,
                                                     const std::vector<Color>& element_colors,
                                                     const AnalysisConfig& config = {});

}  // namespace charter
