#include "charter/analysis/config.hpp"

#include <string>

#include "charter/core/error.hpp"

namespace charter {

namespace {

// Visits every field with its JSON key, so serialization and parsing share
// one list.
template <typename Config, typename F>
void for_each_field(Config& c, F&& f) {
  f("region_score_threshold", c.region_score_threshold);
  f("element_score_threshold", c.element_score_threshold);
  f("axis_bin_factor", c.axis_bin_factor);
  f("axis_tolerance", c.axis_tolerance);
  f("axis_snap_to_ticks", c.axis_snap_to_ticks);
  f("bar_width_tolerance", c.bar_width_tolerance);
  f("bar_baseline_tolerance", c.bar_baseline_tolerance);
  f("legend_color_distance", c.legend_color_distance);
  f("peak_threshold", c.peak_threshold);
  f("peak_min_distance", c.peak_min_distance);
  f("pie_min_radius", c.pie_min_radius);
  f("pie_vote_fraction", c.pie_vote_fraction);
  f("sector_peak_fraction", c.sector_peak_fraction);
  f("sector_merge_deg", c.sector_merge_deg);
  f("sector_raster_refine", c.sector_raster_refine);
  f("sector_refine_window_deg", c.sector_refine_window_deg);
  f("connector_area_fraction", c.connector_area_fraction);
  f("line_threshold", c.line_threshold);
  f("color_merge_distance", c.color_merge_distance);
  f("line_close_radius", c.line_close_radius);
  f("stitch_gap", c.stitch_gap);
  f("stitch_angle_deg", c.stitch_angle_deg);
  f("knee_snap_distance", c.knee_snap_distance);
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::invalid_config, std::string("analysis: ") + what);
}

}  // namespace

void validate(const AnalysisConfig& c) {
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  require(unit(c.region_score_threshold) && unit(c.element_score_threshold), "score thresholds must lie in [0,1]");
  require(c.axis_bin_factor > 0.0 && c.axis_tolerance > 0.0, "axis parameters must be positive");
  require(c.bar_width_tolerance > 0.0 && c.bar_baseline_tolerance >= 0.0, "bar tolerances out of range");
  require(c.legend_color_distance > 0.0, "legend_color_distance must be positive");
  require(unit(c.peak_threshold) && c.peak_min_distance >= 1, "peak parameters out of range");
  require(c.pie_min_radius > 0.0 && unit(c.pie_vote_fraction), "pie parameters out of range");
  require(c.sector_peak_fraction > 0.0 && c.sector_peak_fraction <= 1.0, "sector_peak_fraction out of range");
  require(c.sector_merge_deg >= 0.0 && c.sector_refine_window_deg > 0.0, "sector angles out of range");
  require(c.connector_area_fraction > 0.0, "connector_area_fraction must be positive");
  require(unit(c.line_threshold) && c.color_merge_distance > 0.0 && c.line_close_radius >= 0,
          "line parameters out of range");
  require(c.stitch_gap >= 0.0 && c.stitch_angle_deg > 0.0 && c.stitch_angle_deg <= 180.0,
          "stitching parameters out of range");
  require(c.knee_snap_distance > 0.0, "knee_snap_distance must be positive");
}

nlohmann::ordered_json to_json(const AnalysisConfig& config) {
  nlohmann::ordered_json j;
  AnalysisConfig c = config;
  for_each_field(c, [&](const char* key, auto& v) { j[key] = v; });
  j["pie_method"] = c.pie_method == PieMethod::heatmaps ? "heatmaps" : "boxes";
  return j;
}

AnalysisConfig analysis_config_from_json(const nlohmann::json& j) {
  AnalysisConfig c;
  if (!j.is_object()) throw Error(ErrorCode::invalid_config, "analysis: config must be an object");
  try {
    for_each_field(c, [&](const char* key, auto& v) {
      if (j.contains(key)) v = j.at(key).get<std::decay_t<decltype(v)>>();
    });
    if (j.contains("pie_method")) {
      const std::string m = j.at("pie_method").get<std::string>();
      if (m == "heatmaps") {
        c.pie_method = PieMethod::heatmaps;
      } else if (m == "boxes") {
        c.pie_method = PieMethod::boxes;
      } else {
        throw Error(ErrorCode::invalid_config, "analysis: unknown pie_method " + m);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_config, std::string("analysis: ") + e.what());
  }
  validate(c);
  return c;
}

}  // namespace charter
