#pragma once

#include "charter/analysis/analyze.hpp"
#include "charter/core/raster.hpp"
#include "charter/oracle/ocr.hpp"

namespace charter::cli {

/// Copy of `raster` with the recovered geometry drawn on top: bar boxes,
/// the pie circle and its radial boundaries, series polylines and dots, and
/// the tick labels that calibrated each axis.
Raster render_overlay(const Raster& raster, const AnalysisDetails& details, const OcrOutput& ocr);

}  // namespace charter::cli
