#pragma once

#include "json.hpp"

namespace charter {

enum class PieMethod { heatmaps, boxes };

/// Every tunable of the extraction stage. Distances are raster pixels unless
/// noted; colors are compared by Euclidean RGB distance.
struct AnalysisConfig {
  /// Stage-1 boxes (chart region, legend, title...) below this are ignored.
  double region_score_threshold = 0.5;
  /// Bar and sector proposals below this are ignored.
  double element_score_threshold = 0.5;

  /// Axis binning width as a fraction of the median token height.
  double axis_bin_factor = 0.5;
  /// Largest distance (px) between a tick label and the fitted mapping.
  double axis_tolerance = 1.5;
  /// Snap tick label positions to tick-heatmap peaks.
  bool axis_snap_to_ticks = false;

  double bar_width_tolerance = 0.3;
  double bar_baseline_tolerance = 2.0;

  /// Largest swatch-to-element color distance for a legend match.
  double legend_color_distance = 60.0;

  float peak_threshold = 0.3f;
  int peak_min_distance = 4;

  /// Smallest radius searched, raster pixels.
  double pie_min_radius = 8.0;
  /// A circle needs at least this fraction of a full-intensity ring.
  double pie_vote_fraction = 0.3;
  double sector_peak_fraction = 0.4;
  double sector_merge_deg = 4.0;
  /// Refine heatmap boundaries against color transitions in the raster.
  bool sector_raster_refine = true;
  /// Angular window searched around each boundary during refinement.
  double sector_refine_window_deg = 3.0;
  /// Largest connector area as a fraction of the disc area.
  double connector_area_fraction = 0.02;
  PieMethod pie_method = PieMethod::heatmaps;

  float line_threshold = 0.3f;
  double color_merge_distance = 40.0;
  int line_close_radius = 1;
  double stitch_gap = 10.0;
  double stitch_angle_deg = 45.0;
  double knee_snap_distance = 8.0;

  friend bool operator==(const AnalysisConfig&, const AnalysisConfig&) = default;
};

/// Throws Error(invalid_config) for out-of-range values.
void validate(const AnalysisConfig& config);

nlohmann::ordered_json to_json(const AnalysisConfig& config);
/// Missing keys keep their defaults.
AnalysisConfig analysis_config_from_json(const nlohmann::json& j);

}  // namespace charter
