#include "charter/analysis/classify.hpp"

#include <initializer_list>

#include "charter/core/error.hpp"
#include "internal.hpp"

namespace charter {

namespace {

double type_mass(const DetectorOutput& det, BoxCategory region) {
  auto mass = [&](std::initializer_list<HeatmapCategory> cats) {
    double m = 0.0;
    for (HeatmapCategory c : cats) {
      if (const Heatmap* h = detail::find_heatmap(det, c)) m += h->mass();
    }
    return m;
  };
  switch (region) {
    case BoxCategory::bar_chart:
      return mass({HeatmapCategory::bar_top_left, HeatmapCategory::bar_top_right, HeatmapCategory::bar_bottom_left,
                   HeatmapCategory::bar_bottom_right});
    case BoxCategory::pie_chart:
      return mass({HeatmapCategory::pie_center, HeatmapCategory::pie_circumference, HeatmapCategory::pie_radial,
                   HeatmapCategory::pie_corner});
    case BoxCategory::line_chart: return mass({HeatmapCategory::line, HeatmapCategory::line_knee});
    case BoxCategory::scatter_chart: return mass({HeatmapCategory::scatter_dot});
    default: return 0.0;
  }
}

}  // namespace

ChartType classify_chart(const DetectorOutput& det, const AnalysisConfig& config) {
  const BBox* best = nullptr;
  for (const BBox& b : det.boxes) {
    if (!is_chart_region(b.category) || b.score < config.region_score_threshold) continue;
    if (!best || b.score > best->score) {
      best = &b;
      continue;
    }
    if (b.score < best->score) continue;
    const double mb = type_mass(det, b.category), mbest = type_mass(det, best->category);
    if (mb > mbest || (mb == mbest && b.category < best->category)) best = &b;
  }
  if (!best) throw Error(ErrorCode::no_chart, "no chart region above the score threshold");
  switch (best->category) {
    case BoxCategory::pie_chart: return ChartType::pie;
    case BoxCategory::line_chart: return ChartType::line;
    case BoxCategory::scatter_chart: return ChartType::scatter;
    default: break;
  }
  const auto nv = detail::boxes_of(det, BoxCategory::vbar, config.element_score_threshold).size();
  const auto nh = detail::boxes_of(det, BoxCategory::hbar, config.element_score_threshold).size();
  return nh > nv ? ChartType::hbar : ChartType::vbar;
}

}  // namespace charter
