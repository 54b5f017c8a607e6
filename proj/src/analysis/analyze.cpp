#include "charter/analysis/analyze.hpp"

#include <algorithm>
#include <cmath>

#include "charter/analysis/classify.hpp"
#include "internal.hpp"

namespace charter {

namespace {

std::optional<AxisRange> range_of(const std::optional<AxisModel>& axis) {
  if (!axis || axis->support.empty()) return std::nullopt;
  auto [lo, hi] = std::minmax_element(axis->support.begin(), axis->support.end(),
                                      [](const AxisSupport& a, const AxisSupport& b) { return a.value < b.value; });
  return AxisRange{lo->value, hi->value};
}

OcrOutput without(const OcrOutput& ocr, const std::vector<BBox>& regions) {
  OcrOutput out;
  for (const OcrToken& t : ocr.tokens) {
    const bool hidden = std::any_of(regions.begin(), regions.end(),
                                    [&](const BBox& r) { return detail::center_inside(t, r, 2.0); });
    if (!hidden) out.tokens.push_back(t);
  }
  return out;
}

// Support points of `axis` index `used`; point them at the same tokens of
// `source` instead.
void to_source_indices(std::optional<AxisModel>& axis, const OcrOutput& used, const OcrOutput& source) {
  if (!axis) return;
  for (AxisSupport& s : axis->support) {
    const OcrToken& t = used.tokens[s.token];
    for (std::size_t i = 0; i < source.tokens.size(); ++i) {
      const OcrToken& u = source.tokens[i];
      if (u.text == t.text && u.polygon[0].x == t.polygon[0].x && u.polygon[0].y == t.polygon[0].y) {
        s.token = i;
        break;
      }
    }
  }
}

const Heatmap& require_heatmap(const DetectorOutput& det, HeatmapCategory c) {
  const Heatmap* h = detail::find_heatmap(det, c);
  if (!h) throw Error(ErrorCode::parse, "missing heatmap: " + std::string(to_string(c)));
  return *h;
}

void fill_bars(ChartTable& table, AnalysisDetails& d, const DetectorOutput& det, const OcrOutput& axis_ocr,
               const OcrOutput& ocr, const Raster& raster, const AnalysisConfig& config) {
  const bool vertical = table.type == ChartType::vbar;
  const double scale = detail::heatmap_scale(det);
  // Value labels above the bars would otherwise pass for a second axis.
  const auto proposals = detail::boxes_of(det, vertical ? BoxCategory::vbar : BoxCategory::hbar,
                                          config.element_score_threshold);
  OcrOutput ticks_only;
  for (const OcrToken& t : axis_ocr.tokens) {
    if (!is_value_label_of(t, proposals, vertical)) ticks_only.tokens.push_back(t);
  }
  const Orientation o = vertical ? Orientation::y : Orientation::x;
  const Heatmap* tick_hm = detail::find_heatmap(det, vertical ? HeatmapCategory::y_tick : HeatmapCategory::x_tick);
  auto axis = recover_axis(ticks_only, o, tick_hm, config, scale);
  to_source_indices(axis, ticks_only, ocr);
  d.bars = extract_bars(det, table.type, axis, ocr, raster, config);
  for (const BarElement& b : d.bars) {
    table.rows.push_back({b.label, b.value, b.label_source, b.value_source, b.confidence});
  }
  table.y_range = range_of(axis);
  (vertical ? d.y_axis : d.x_axis) = std::move(axis);
}

void fill_pie(ChartTable& table, AnalysisDetails& d, const DetectorOutput& det, const OcrOutput& ocr,
              const Raster& raster, const std::vector<BBox>& furniture, const AnalysisConfig& config) {
  const double scale = detail::heatmap_scale(det);
  PieGeometry g;
  if (config.pie_method == PieMethod::heatmaps) {
    const auto fits = fit_pies(require_heatmap(det, HeatmapCategory::pie_center),
                               require_heatmap(det, HeatmapCategory::pie_circumference), config, scale);
    if (fits.empty()) throw Error(ErrorCode::empty_table, "no pie circle found in the heatmaps");
    g = fits.front();
    g.sectors = extract_sectors(g, require_heatmap(det, HeatmapCategory::pie_radial),
                                require_heatmap(det, HeatmapCategory::pie_corner), config, scale);
  } else {
    auto boxed = pie_from_boxes(detail::boxes_of(det, BoxCategory::pie_sector, 0.0), config);
    if (!boxed) throw Error(ErrorCode::empty_table, "no sector proposal above the score threshold");
    g = std::move(*boxed);
  }
  if (config.sector_raster_refine) {
    refine_sectors(g, raster, config);
  } else {
    sample_sector_colors(g, raster);
  }
  const auto legend = detail::best_box(det, BoxCategory::legend, config.region_score_threshold);
  const auto labels = label_sectors(g, raster, ocr, legend, furniture, config);
  const double confidence = std::min(1.0, g.support);
  for (std::size_t k = 0; k < g.sectors.size(); ++k) {
    table.rows.push_back(
        {labels[k].text, g.sectors[k].span_deg / 360.0, labels[k].source, Provenance::geometry, confidence});
  }
  d.pie = std::move(g);
}

void fill_xy(ChartTable& table, AnalysisDetails& d, const DetectorOutput& det, const OcrOutput& axis_ocr,
             const OcrOutput& ocr, const Raster& raster, const AnalysisConfig& config) {
  const double scale = detail::heatmap_scale(det);
  d.x_axis = recover_axis(axis_ocr, Orientation::x, detail::find_heatmap(det, HeatmapCategory::x_tick), config, scale);
  d.y_axis = recover_axis(axis_ocr, Orientation::y, detail::find_heatmap(det, HeatmapCategory::y_tick), config, scale);
  to_source_indices(d.x_axis, axis_ocr, ocr);
  to_source_indices(d.y_axis, axis_ocr, ocr);
  d.series = table.type == ChartType::line ? extract_lines(det, raster, d.x_axis, d.y_axis, ocr, config)
                                           : extract_scatter(det, raster, d.x_axis, d.y_axis, ocr, config);
  if (d.series.empty()) throw Error(ErrorCode::empty_table, "no series found");
  for (const SeriesElement& s : d.series) {
    TableSeries ts;
    ts.label = s.label;
    ts.points = s.points;
    ts.label_source = s.label_source;
    ts.value_source = s.calibrated ? Provenance::axis_interpolated : Provenance::geometry;
    ts.calibrated = s.calibrated;
    ts.confidence = s.confidence;
    table.series.push_back(std::move(ts));
  }
  table.x_range = range_of(d.x_axis);
  table.y_range = range_of(d.y_axis);
}

}  // namespace

AnalysisResult analyze(const DetectorOutput& det, const OcrOutput& ocr, const Raster& raster,
                       const AnalysisConfig& config, AnalysisDetails* details) {
  AnalysisDetails local;
  AnalysisDetails& d = details ? *details : local;
  d = {};
  try {
    validate(config);
    ChartTable table;
    table.type = classify_chart(det, config);
    d.type = table.type;

    std::vector<BBox> furniture;
    auto heading = [&](BoxCategory c) -> std::optional<std::string> {
      const auto b = detail::best_box(det, c, config.region_score_threshold);
      if (!b) return std::nullopt;
      furniture.push_back(*b);
      return detail::text_in(ocr, *b);
    };
    table.title = heading(BoxCategory::title);
    table.caption = heading(BoxCategory::caption);
    table.x_title = heading(BoxCategory::x_label);
    table.y_title = heading(BoxCategory::y_label);

    std::vector<BBox> not_ticks = furniture;
    if (const auto legend = detail::best_box(det, BoxCategory::legend, config.region_score_threshold)) {
      not_ticks.push_back(*legend);
    }
    const OcrOutput axis_ocr = without(ocr, not_ticks);

    switch (table.type) {
      case ChartType::vbar:
      case ChartType::hbar: fill_bars(table, d, det, axis_ocr, ocr, raster, config); break;
      case ChartType::pie: fill_pie(table, d, det, ocr, raster, furniture, config); break;
      case ChartType::line:
      case ChartType::scatter: fill_xy(table, d, det, axis_ocr, ocr, raster, config); break;
    }
    if (d.x_axis) d.x_axis->title = table.x_title;
    if (d.y_axis) d.y_axis->title = table.y_title;
    return table;
  } catch (const Error& e) {
    return AnalysisFailure{e.code(), e.what()};
  } catch (const std::exception& e) {
    return AnalysisFailure{ErrorCode::invalid_argument, e.what()};
  }
}

nlohmann::ordered_json to_json(const AnalysisFailure& failure) {
  return {{"code", to_string(failure.code)}, {"message", failure.message}};
}

}  // namespace charter
