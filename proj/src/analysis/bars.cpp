#include "charter/analysis/bars.hpp"

#include <algorithm>
#include <cmath>

#include "charter/analysis/legend.hpp"
#include "charter/core/error.hpp"
#include "charter/oracle/numeric.hpp"
#include "internal.hpp"

namespace charter {

namespace {

// How far past the free edge a value label may start.
constexpr double kValueReach = 30.0;
// How far past the baseline a category label may sit.
constexpr double kCategoryReach = 60.0;

double median(std::vector<double> v) {
  auto mid = v.begin() + std::ptrdiff_t(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

bool value_label_near(const BBox& t, const BBox& bar, bool vertical) {
  const Point c = t.center();
  if (vertical) {
    return c.x >= bar.x_min - 2 && c.x <= bar.x_max + 2 && t.y_max >= bar.y_min - kValueReach &&
           c.y <= bar.y_max;
  }
  return c.y >= bar.y_min - 2 && c.y <= bar.y_max + 2 && t.x_min <= bar.x_max + kValueReach && c.x >= bar.x_min;
}

// Distance from the free edge, negative when inside the bar.
double value_label_gap(const BBox& t, const BBox& bar, bool vertical) {
  return vertical ? bar.y_min - t.y_max : t.x_min - bar.x_max;
}

std::vector<BBox> filter_proposals(std::vector<BBox> boxes, bool vertical, const AnalysisConfig& config) {
  if (boxes.empty()) return boxes;
  auto along = [&](const BBox& b) { return vertical ? b.width() : b.height(); };
  auto base = [&](const BBox& b) { return vertical ? b.y_max : b.x_min; };

  std::vector<double> widths;
  for (const BBox& b : boxes) widths.push_back(along(b));
  const double med = median(widths);
  std::erase_if(boxes, [&](const BBox& b) { return std::abs(along(b) - med) > config.bar_width_tolerance * med; });
  if (boxes.empty()) return boxes;

  // Modal baseline: the proposal edge with the most others within tolerance.
  double mode = base(boxes.front());
  std::size_t support = 0;
  for (const BBox& b : boxes) {
    const std::size_t n = std::size_t(std::count_if(boxes.begin(), boxes.end(), [&](const BBox& o) {
      return std::abs(base(o) - base(b)) <= config.bar_baseline_tolerance;
    }));
    if (n > support) {
      support = n;
      mode = base(b);
    }
  }
  std::erase_if(boxes, [&](const BBox& b) { return std::abs(base(b) - mode) > config.bar_baseline_tolerance; });

  // Boxes arrive best first; drop later ones that mostly share a slot.
  std::vector<BBox> kept;
  for (const BBox& b : boxes) {
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](const BBox& k) {
      const double lo = vertical ? std::max(b.x_min, k.x_min) : std::max(b.y_min, k.y_min);
      const double hi = vertical ? std::min(b.x_max, k.x_max) : std::min(b.y_max, k.y_max);
      return hi - lo > 0.5 * std::min(along(b), along(k));
    });
    if (!dup) kept.push_back(b);
  }
  std::sort(kept.begin(), kept.end(),
            [&](const BBox& a, const BBox& b) { return vertical ? a.x_min < b.x_min : a.y_min < b.y_min; });
  return kept;
}

Color bar_color(const Raster& raster, const BBox& b) {
  const double ix = std::max(1.0, b.width() / 4.0), iy = std::max(1.0, b.height() / 4.0);
  return detail::median_color(raster, b.x_min + ix, b.y_min + iy, b.x_max - ix, b.y_max - iy);
}

}  // namespace

bool is_value_label_of(const OcrToken& token, const std::vector<BBox>& bars, bool vertical) {
  if (token.angle != 0.0 || !parse_number(token.text)) return false;
  const BBox t = token.bounds();
  return std::any_of(bars.begin(), bars.end(), [&](const BBox& b) { return value_label_near(t, b, vertical); });
}

std::vector<BarElement> extract_bars(const DetectorOutput& det, ChartType type,
                                     const std::optional<AxisModel>& value_axis, const OcrOutput& ocr,
                                     const Raster& raster, const AnalysisConfig& config) {
  if (!is_bar(type)) throw Error(ErrorCode::invalid_argument, "extract_bars needs a bar chart type");
  const bool vertical = type == ChartType::vbar;
  const BoxCategory cat = vertical ? BoxCategory::vbar : BoxCategory::hbar;
  const auto boxes = filter_proposals(detail::boxes_of(det, cat, config.element_score_threshold), vertical, config);
  if (boxes.empty()) throw Error(ErrorCode::empty_table, "no bar proposal survived the width and baseline filters");

  // Tokens in page furniture never name or annotate a bar.
  std::vector<BBox> furniture;
  for (BoxCategory c : {BoxCategory::legend, BoxCategory::title, BoxCategory::caption, BoxCategory::x_label,
                        BoxCategory::y_label}) {
    for (const BBox& b : detail::boxes_of(det, c, config.region_score_threshold)) furniture.push_back(b);
  }
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < ocr.tokens.size(); ++i) {
    const bool hidden = std::any_of(furniture.begin(), furniture.end(),
                                    [&](const BBox& f) { return detail::center_inside(ocr.tokens[i], f, 2.0); });
    if (!hidden) usable.push_back(i);
  }

  std::vector<BarElement> out;
  for (const BBox& b : boxes) {
    BarElement e;
    e.box = b;
    e.color = bar_color(raster, b);
    e.confidence = b.score;
    if (value_axis) {
      e.value = value_axis->value_at(vertical ? b.y_min : b.x_max);
      e.value_source = Provenance::axis_interpolated;
    } else {
      std::optional<double> best;
      double best_gap = 0.0;
      for (std::size_t i : usable) {
        const OcrToken& t = ocr.tokens[i];
        if (t.angle != 0.0 || !value_label_near(t.bounds(), b, vertical)) continue;
        const auto v = parse_number(t.text);
        const double gap = std::abs(value_label_gap(t.bounds(), b, vertical));
        if (v && (!best || gap < best_gap)) {
          best = v;
          best_gap = gap;
        }
      }
      if (best) {
        e.value = *best;
        e.value_source = Provenance::value_on_bar;
      } else {
        e.value = vertical ? b.height() : b.width();
        e.value_source = Provenance::geometry;
        e.confidence = 0.0;
      }
    }
    out.push_back(std::move(e));
  }

  // Category text: nearest token across the baseline within half a slot.
  std::vector<double> centers;
  for (const BarElement& e : out) centers.push_back(vertical ? e.box.center().x : e.box.center().y);
  double slot = vertical ? out.front().box.width() : out.front().box.height();
  for (std::size_t k = 1; k < centers.size(); ++k) slot = std::min(slot, centers[k] - centers[k - 1]);
  const double baseline = vertical ? out.front().box.y_max : out.front().box.x_min;

  std::vector<std::optional<std::size_t>> label_token(out.size());
  std::vector<double> label_dist(out.size(), 0.0);
  for (std::size_t i : usable) {
    const OcrToken& t = ocr.tokens[i];
    if (parse_number(t.text)) continue;
    const BBox tb = t.bounds();
    double along = 0.0;
    if (vertical) {
      // Slanted labels end at their top-right corner, next to the bar.
      const Point a = t.angle != 0.0 ? t.polygon[1] : tb.center();
      if (a.y <= baseline || a.y > baseline + kCategoryReach) continue;
      along = a.x;
    } else {
      if (tb.x_max >= baseline || tb.x_max < baseline - kCategoryReach * 4) continue;
      along = tb.center().y;
    }
    std::size_t best = 0;
    for (std::size_t k = 1; k < centers.size(); ++k) {
      if (std::abs(centers[k] - along) < std::abs(centers[best] - along)) best = k;
    }
    const double d = std::abs(centers[best] - along);
    if (d > slot / 2.0) continue;
    if (!label_token[best] || d < label_dist[best]) {
      label_token[best] = i;
      label_dist[best] = d;
    }
  }

  const bool any_category = std::any_of(label_token.begin(), label_token.end(), [](const auto& t) { return t.has_value(); });
  std::vector<std::optional<std::string>> legend_labels(out.size());
  if (!any_category) {
    if (const auto legend = detail::best_box(det, BoxCategory::legend, config.region_score_threshold)) {
      std::vector<Color> colors;
      for (const BarElement& e : out) colors.push_back(e.color);
      legend_labels = match_legend(*legend, ocr, raster, colors, config);
    }
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (label_token[k]) {
      out[k].label = ocr.tokens[*label_token[k]].text;
      out[k].label_source = Provenance::adjacent_text;
    } else if (legend_labels[k]) {
      out[k].label = *legend_labels[k];
      out[k].label_source = Provenance::legend;
    } else {
      out[k].label = "bar_" + std::to_string(k + 1);
      out[k].label_source = Provenance::positional;
    }
  }
  return out;
}

}  // namespace charter
