#include "charter/synth/render.hpp"

#include <algorithm>
#include <cmath>

#include "charter/core/error.hpp"
#include "charter/synth/canvas.hpp"

namespace charter {

namespace {

constexpr int kBandLo = 12;
constexpr int kBandHi = 500;
constexpr Color kAxisColor{70, 70, 70};
constexpr double kCos45 = 0.70710678118654752;

[[noreturn]] void overflow(const std::string& what) { throw Error(ErrorCode::layout_overflow, what); }

std::optional<std::string> opt(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return s;
}

Point direction(double deg) {
  const double t = deg * kPi / 180.0;
  return {std::cos(t), -std::sin(t)};
}

struct TickLabel {
  double value = 0.0;
  std::string text;
  std::optional<std::string> exponent;
  int width = 0;
};

std::vector<TickLabel> tick_labels(const AxisSpec& axis) {
  std::vector<TickLabel> out;
  const double step = axis.ticks.size() > 1 ? axis.ticks[1] - axis.ticks[0] : 1.0;
  for (double t : axis.ticks) {
    TickLabel l;
    l.value = t;
    l.text = format_tick(t, axis.format, step);
    if (axis.format == TickFormat::exponent && t != 0.0) {
      l.exponent = std::to_string(std::lround(std::log10(t)));
      l.width = text_width(l.text) + 1 + text_width(*l.exponent, FontSize::small);
    } else {
      l.width = text_width(l.text);
    }
    out.push_back(std::move(l));
  }
  return out;
}

/// Pixel quantum that keeps every tick on an integer pixel.
int tick_quantum(const AxisSpec& axis) {
  if (axis.format == TickFormat::exponent) return 10;
  return std::max<int>(1, static_cast<int>(axis.ticks.size()) - 1);
}

double value_granularity(const AxisSpec& axis) {
  if (axis.ticks.size() < 2) return 1.0;
  return (axis.ticks[1] - axis.ticks[0]) / 20.0;
}

BBox sector_bounds(const Point& c, double r, double start, double span) {
  BBox b{c.x, c.y, c.x, c.y, BoxCategory::pie_sector, 1.0};
  auto include = [&](double deg) {
    const Point d = direction(deg);
    b.x_min = std::min(b.x_min, c.x + r * d.x);
    b.x_max = std::max(b.x_max, c.x + r * d.x);
    b.y_min = std::min(b.y_min, c.y + r * d.y);
    b.y_max = std::max(b.y_max, c.y + r * d.y);
  };
  include(start);
  include(start + span);
  for (int k = 0; k < 4; ++k) {
    const double a = 90.0 * k;
    if (angle_in_span(a, start, span)) include(a);
  }
  return b;
}

class Renderer {
 public:
  explicit Renderer(const ChartSpec& spec) : spec_(spec), canvas_(kCanvasSize, kCanvasSize, spec.style.background) {}

  RenderedChart run();

 private:
  void frame();
  void headings();
  void legend();
  void bars_vertical();
  void bars_horizontal();
  void pie();
  void xy_plot();
  void check_layout() const;

  Quad text(const std::string& s, TextRole role, int x, int y, int element = -1);
  void y_title_at(double center_y);
  void x_title_at(double center_x);
  void y_tick_label(const TickLabel& l, int right_x, int center_y);
  void x_tick_label(const TickLabel& l, int center_x, int top_y);
  int value_axis_width(const std::vector<TickLabel>& labels) const;

  static int centered(const std::string& s, double cx) {
    return static_cast<int>(std::lround(cx - (text_width(s) - 1) / 2.0));
  }

  const ChartSpec& spec_;
  Canvas canvas_;
  GroundTruth gt_;
  int top_ = 16;
  int bottom_ = 496;
  int left_ = 16;
  int right_ = 496;
  int x_title_y_ = -1;
  int y_title_x_ = -1;
};

Quad Renderer::text(const std::string& s, TextRole role, int x, int y, int element) {
  const Quad q = canvas_.draw_text(s, x, y, spec_.style.text_color);
  gt_.texts.push_back({s, role, q, 0.0, std::nullopt, std::nullopt, element});
  return q;
}

void Renderer::y_title_at(double center_y) {
  if (y_title_x_ < 0) return;
  const std::string& s = spec_.y_title;
  const Point origin{double(y_title_x_), std::round(center_y + (text_width(s) - 1) / 2.0)};
  const Quad q = canvas_.draw_text_rotated(s, origin, 90.0, spec_.style.text_color);
  gt_.texts.push_back({s, TextRole::y_title, q, 90.0, std::nullopt, std::nullopt, -1});
}

void Renderer::x_title_at(double center_x) {
  if (x_title_y_ < 0) return;
  text(spec_.x_title, TextRole::x_title, centered(spec_.x_title, center_x), x_title_y_);
}

void Renderer::y_tick_label(const TickLabel& l, int right_x, int center_y) {
  const int x = right_x - (l.width - 1);
  const int y = center_y - 7;
  if (!l.exponent) {
    text(l.text, TextRole::y_tick, x, y);
    return;
  }
  const Quad q = canvas_.draw_text(l.text, x, y, spec_.style.text_color);
  const Quad e = canvas_.draw_text(*l.exponent, x + 16, y - 4, spec_.style.text_color, FontSize::small);
  gt_.texts.push_back({l.text, TextRole::y_tick, q, 0.0, l.exponent, e, -1});
}

void Renderer::x_tick_label(const TickLabel& l, int center_x, int top_y) {
  if (!l.exponent) {
    text(l.text, TextRole::x_tick, centered(l.text, center_x), top_y);
    return;
  }
  const int x = center_x - 7;
  const Quad q = canvas_.draw_text(l.text, x, top_y, spec_.style.text_color);
  const Quad e = canvas_.draw_text(*l.exponent, x + 16, top_y - 4, spec_.style.text_color, FontSize::small);
  gt_.texts.push_back({l.text, TextRole::x_tick, q, 0.0, l.exponent, e, -1});
}

int Renderer::value_axis_width(const std::vector<TickLabel>& labels) const {
  int w = 0;
  for (const TickLabel& l : labels) w = std::max(w, l.width);
  return w;
}

void Renderer::frame() {
  const StyleSpec& st = spec_.style;
  const double s = kCanvasSize;
  canvas_.texture_region(0, 0, s, kBandLo, st.background, st.background_texture, spec_.seed);
  canvas_.texture_region(0, kBandHi, s, s, st.background, st.background_texture, spec_.seed);
  canvas_.texture_region(0, kBandLo, kBandLo, kBandHi, st.background, st.background_texture, spec_.seed);
  canvas_.texture_region(kBandHi, kBandLo, s, kBandHi, st.background, st.background_texture, spec_.seed);
  if (st.border_style != BorderStyle::none) {
    canvas_.stroke_rect(6, 6, s - 7, s - 7, st.border_color, st.border_style == BorderStyle::dashed);
  }
}

void Renderer::headings() {
  if (!spec_.title.empty()) {
    text(spec_.title, TextRole::title, centered(spec_.title, 256), top_);
    top_ += 15 + 8;
  }
  if (!spec_.caption.empty()) {
    text(spec_.caption, TextRole::caption, centered(spec_.caption, 256), bottom_ - 14);
    bottom_ -= 15 + 6;
  }
  if (spec_.type != ChartType::pie) {
    if (!spec_.x_title.empty()) {
      x_title_y_ = bottom_ - 14;
      bottom_ -= 15 + 6;
    }
    if (!spec_.y_title.empty()) {
      y_title_x_ = left_;
      left_ += 15 + 6;
    }
  }
}

void Renderer::legend() {
  const StyleSpec& st = spec_.style;
  if (st.legend == LegendPosition::none) return;
  const int n = static_cast<int>(spec_.series.size());
  constexpr Color kLegendBorder{150, 150, 150};
  if (st.legend == LegendPosition::right) {
    int wmax = 0;
    for (const auto& s : spec_.series) wmax = std::max(wmax, text_width(s.label));
    const int box_w = 6 + 12 + 6 + wmax + 6;
    const int box_h = 20 * n + 6;
    const int x0 = right_ - box_w;
    const int y0 = top_ + 10;
    if (y0 + box_h > bottom_) overflow("legend taller than canvas");
    for (int i = 0; i < n; ++i) {
      const double sx = x0 + 6, sy = y0 + 6 + 20 * i + 1;
      canvas_.fill_rect(sx, sy, sx + 12, sy + 12, spec_.series[i].color);
      const BBox sw{sx, sy, sx + 12, sy + 12, BoxCategory::legend, 1.0};
      gt_.legend.push_back({sw, spec_.series[i].color, spec_.series[i].label, i});
      text(spec_.series[i].label, TextRole::legend_entry, x0 + 24, y0 + 6 + 20 * i, i);
    }
    canvas_.stroke_rect(x0, y0, x0 + box_w, y0 + box_h, kLegendBorder, false);
    gt_.legend_box = BBox{double(x0), double(y0), double(x0 + box_w), double(y0 + box_h), BoxCategory::legend, 1.0};
    right_ = x0 - 12;
  } else {
    int total = 0;
    for (const auto& s : spec_.series) total += 12 + 6 + text_width(s.label) + 14;
    total += 6 - 14 + 6;
    if (total > kBandHi - kBandLo - 8) overflow("legend wider than canvas");
    const int x0 = 256 - total / 2;
    const int y0 = top_;
    int x = x0 + 6;
    for (int i = 0; i < n; ++i) {
      const double sx = x, sy = y0 + 6 + 1;
      canvas_.fill_rect(sx, sy, sx + 12, sy + 12, spec_.series[i].color);
      const BBox sw{sx, sy, sx + 12, sy + 12, BoxCategory::legend, 1.0};
      gt_.legend.push_back({sw, spec_.series[i].color, spec_.series[i].label, i});
      text(spec_.series[i].label, TextRole::legend_entry, x + 18, y0 + 6, i);
      x += 12 + 6 + text_width(spec_.series[i].label) + 14;
    }
    canvas_.stroke_rect(x0, y0, x0 + total, y0 + 26, kLegendBorder, false);
    gt_.legend_box = BBox{double(x0), double(y0), double(x0 + total), double(y0 + 26), BoxCategory::legend, 1.0};
    top_ += 26 + 12;
  }
}

void Renderer::bars_vertical() {
  const StyleSpec& st = spec_.style;
  const AxisSpec& axis = spec_.value_axis;
  const int n = static_cast<int>(spec_.series.size());
  const bool labels = st.legend == LegendPosition::none;
  const bool rotated = labels && st.x_label_rotation != 0.0;
  int wmax = 0;
  for (const auto& s : spec_.series) wmax = std::max(wmax, text_width(s.label));

  int extent = 0;
  if (labels) extent = rotated ? static_cast<int>(std::ceil((wmax - 1 + 14) * kCos45)) + 1 : 15;
  const int y0 = bottom_ - (labels ? 8 + extent : 6);
  const int top_limit = top_ + 8 + (st.value_on_bar ? 20 : 0);
  const int q = tick_quantum(axis);
  const int hp = (y0 - top_limit) / q * q;
  if (hp < 100) overflow("plot too short");
  const int plot_top = y0 - hp;

  const auto ticks = tick_labels(axis);
  const int ax = st.axes_visible ? left_ + value_axis_width(ticks) + 7 : left_ + 4;
  const int plot_left = ax + 1;
  const int plot_right = right_;
  const double slot = double(plot_right - plot_left) / n;
  if (slot < 14.0) overflow("bars too narrow");
  const double range = axis.max - axis.min;

  for (int i = 0; i < n; ++i) {
    const SeriesSpec& s = spec_.series[i];
    const double x_min = plot_left + i * slot + slot * st.bar_gap / 2.0;
    const double x_max = x_min + slot * (1.0 - st.bar_gap);
    const double top = y0 - (s.value - axis.min) / range * hp;
    if (y0 - top < 2.0) overflow("bar too short");
    canvas_.fill_rect(x_min, top, x_max, y0, s.color, st.element_texture);
    gt_.bars.push_back({BBox{x_min, top, x_max, double(y0), BoxCategory::vbar, 1.0}, s.color, i});
    const double cx = (x_min + x_max) / 2.0;
    if (labels) {
      const int w = text_width(s.label);
      if (rotated) {
        const Point origin{cx + 3 - (w - 1) * kCos45, y0 + 8 + (w - 1) * kCos45};
        const Quad qd = canvas_.draw_text_rotated(s.label, origin, 45.0, st.text_color);
        gt_.texts.push_back({s.label, TextRole::category, qd, 45.0, std::nullopt, std::nullopt, i});
      } else {
        if (w > slot - 4) overflow("category label wider than its slot");
        text(s.label, TextRole::category, centered(s.label, cx), y0 + 8, i);
      }
    }
    if (st.value_on_bar) {
      const std::string v = format_value(s.value, value_granularity(axis));
      if (text_width(v) > slot - 2) overflow("value label wider than its bar slot");
      text(v, TextRole::value_label, centered(v, cx), static_cast<int>(std::floor(top)) - 19, i);
    }
    if (st.axes_visible) {
      canvas_.stroke_segment({cx, double(y0 + 1)}, {cx, double(y0 + 5)}, 1.0, kAxisColor);
      gt_.ticks.push_back({Orientation::x, {cx, double(y0)}, std::nullopt});
    }
  }

  canvas_.stroke_segment({double(ax), double(y0)}, {double(plot_right), double(y0)}, 1.0, kAxisColor);
  if (st.axes_visible) {
    canvas_.stroke_segment({double(ax), double(plot_top)}, {double(ax), double(y0)}, 1.0, kAxisColor);
    for (const TickLabel& l : ticks) {
      const int yi = static_cast<int>(std::lround(y0 - (l.value - axis.min) / range * hp));
      canvas_.stroke_segment({double(ax - 5), double(yi)}, {double(ax - 1), double(yi)}, 1.0, kAxisColor);
      gt_.ticks.push_back({Orientation::y, {double(ax), double(yi)}, l.value});
      y_tick_label(l, ax - 7, yi);
    }
  }
  y_title_at((plot_top + y0) / 2.0);
  x_title_at((plot_left + plot_right) / 2.0);

  gt_.plot_area = BBox{double(plot_left), double(plot_top), double(plot_right), double(y0), BoxCategory::plot_area, 1.0};
  gt_.y_axis = AxisMapping{Orientation::y, -range / hp, axis.min + y0 * range / hp};
  gt_.chart_region.category = BoxCategory::bar_chart;
}

void Renderer::bars_horizontal() {
  const StyleSpec& st = spec_.style;
  const AxisSpec& axis = spec_.value_axis;
  const int n = static_cast<int>(spec_.series.size());
  const bool labels = st.legend == LegendPosition::none;
  int wmax = 0;
  for (const auto& s : spec_.series) wmax = std::max(wmax, text_width(s.label));
  const auto ticks = tick_labels(axis);

  const int y0 = bottom_ - (st.axes_visible ? 10 + 15 : 6);
  const int plot_top = top_ + 4;
  const double slot = double(y0 - plot_top) / n;
  if (slot < 14.0) overflow("bars too thin");

  const int ax = left_ + (labels ? wmax + 7 : 4);
  const int x0 = ax + 1;
  int value_w = 0;
  if (st.value_on_bar) {
    for (const auto& s : spec_.series) value_w = std::max(value_w, text_width(format_value(s.value, value_granularity(axis))));
  }
  const int tick_half = st.axes_visible ? value_axis_width(ticks) / 2 + 1 : 0;
  const int right_limit = right_ - std::max(tick_half, st.value_on_bar ? value_w + 5 : 0);
  const int q = tick_quantum(axis);
  const int wp = (right_limit - x0) / q * q;
  if (wp < 100) overflow("plot too narrow");
  const double range = axis.max - axis.min;

  for (int i = 0; i < n; ++i) {
    const SeriesSpec& s = spec_.series[i];
    const double y_min = plot_top + i * slot + slot * st.bar_gap / 2.0;
    const double y_max = y_min + slot * (1.0 - st.bar_gap);
    const double right = x0 + (s.value - axis.min) / range * wp;
    if (right - x0 < 2.0) overflow("bar too short");
    canvas_.fill_rect(x0, y_min, right, y_max, s.color, st.element_texture);
    gt_.bars.push_back({BBox{double(x0), y_min, right, y_max, BoxCategory::hbar, 1.0}, s.color, i});
    const double cy = (y_min + y_max) / 2.0;
    if (labels) {
      if (15 > slot - 2) overflow("category label taller than its slot");
      text(s.label, TextRole::category, ax - 7 - (text_width(s.label) - 1), static_cast<int>(std::lround(cy - 7)), i);
    }
    if (st.value_on_bar) {
      const std::string v = format_value(s.value, value_granularity(axis));
      text(v, TextRole::value_label, static_cast<int>(std::ceil(right)) + 4, static_cast<int>(std::lround(cy - 7)), i);
    }
    if (st.axes_visible) {
      canvas_.stroke_segment({double(ax - 5), cy}, {double(ax - 1), cy}, 1.0, kAxisColor);
      gt_.ticks.push_back({Orientation::y, {double(ax), cy}, std::nullopt});
    }
  }

  canvas_.stroke_segment({double(ax), double(plot_top)}, {double(ax), double(y0)}, 1.0, kAxisColor);
  if (st.axes_visible) {
    canvas_.stroke_segment({double(ax), double(y0)}, {double(x0 + wp), double(y0)}, 1.0, kAxisColor);
    for (const TickLabel& l : ticks) {
      const int xi = static_cast<int>(std::lround(x0 + (l.value - axis.min) / range * wp));
      canvas_.stroke_segment({double(xi), double(y0 + 1)}, {double(xi), double(y0 + 5)}, 1.0, kAxisColor);
      gt_.ticks.push_back({Orientation::x, {double(xi), double(y0)}, l.value});
      x_tick_label(l, xi, y0 + 10);
    }
  }
  y_title_at((plot_top + y0) / 2.0);
  x_title_at((x0 + x0 + wp) / 2.0);

  gt_.plot_area = BBox{double(x0), double(plot_top), double(x0 + wp), double(y0), BoxCategory::plot_area, 1.0};
  gt_.x_axis = AxisMapping{Orientation::x, range / wp, axis.min - x0 * range / wp};
  gt_.chart_region.category = BoxCategory::bar_chart;
}

void Renderer::pie() {
  const StyleSpec& st = spec_.style;
  const int n = static_cast<int>(spec_.series.size());
  int wmax = 0;
  for (const auto& s : spec_.series) wmax = std::max(wmax, text_width(s.label));
  const double half_w = (right_ - left_) / 2.0, half_h = (bottom_ - top_) / 2.0;
  double r = 0.0;
  if (st.legend != LegendPosition::none) {
    r = std::min(half_w, half_h) - 6;
  } else if (st.pie_labels == PieLabelMode::connector) {
    r = std::min((half_w - 8 - wmax) / 1.15, (half_h - 8 - 15) / 1.15);
  } else {
    r = std::min(half_w - 12 - wmax, half_h - 12 - 15);
  }
  r = std::floor(std::min(r, 170.0));
  if (r < 60.0) overflow("pie radius too small");
  const Point c{std::round((left_ + right_) / 2.0), std::round((top_ + bottom_) / 2.0)};

  PieGroundTruth pie;
  pie.center = c;
  pie.radius = r;
  double start = spec_.pie_start_angle;
  for (int i = 0; i < n; ++i) {
    const SeriesSpec& s = spec_.series[i];
    const double span = s.value * 360.0;
    canvas_.fill_wedge(c, r, start, span, s.color, st.element_texture);
    pie.sectors.push_back({wrap_deg(start), span, s.color, i, sector_bounds(c, r, start, span)});
    start += span;
  }
  if (st.sector_separators && n > 1) {
    for (const auto& sec : pie.sectors) {
      const Point d = direction(sec.start_deg);
      canvas_.stroke_segment(c, {c.x + r * d.x, c.y + r * d.y}, 2.0, st.background);
    }
  }

  if (st.legend == LegendPosition::none) {
    for (int i = 0; i < n; ++i) {
      const SectorGeometry& sec = pie.sectors[i];
      const std::string& label = spec_.series[i].label;
      const double mid = sec.start_deg + sec.span_deg / 2.0;
      const Point d = direction(mid);
      const double w = text_width(label);
      const double reach = std::fabs(d.x) * (w - 1) / 2.0 + std::fabs(d.y) * 7.0;
      double dist = 0.0;
      bool placed = false;
      if (st.pie_labels == PieLabelMode::adjacent && st.inside_labels) {
        dist = 0.6 * r;
        const Point tc{c.x + dist * d.x, c.y + dist * d.y};
        const Quad q = text_quad(label, centered(label, tc.x), static_cast<int>(std::lround(tc.y - 7)));
        placed = std::all_of(q.begin(), q.end(), [&](const Point& p) {
          return distance(p, c) < 0.92 * r && angle_in_span(polar_angle_deg(c, p), sec.start_deg + 2, sec.span_deg - 4);
        });
      }
      if (!placed && st.pie_labels == PieLabelMode::connector) {
        const Point inner{c.x + 0.75 * r * d.x, c.y + 0.75 * r * d.y};
        const Point outer{c.x + 1.15 * r * d.x, c.y + 1.15 * r * d.y};
        canvas_.stroke_segment(inner, outer, 1.5, st.text_color);
        gt_.connectors.push_back({inner, outer, i});
        dist = 1.15 * r + 5 + reach;
      } else if (!placed) {
        dist = r + 10 + reach;
      }
      const Point tc{c.x + dist * d.x, c.y + dist * d.y};
      text(label, TextRole::pie_label, centered(label, tc.x), static_cast<int>(std::lround(tc.y - 7)), i);
    }
  }

  gt_.pie = std::move(pie);
  gt_.chart_region.category = BoxCategory::pie_chart;
}

void Renderer::xy_plot() {
  const AxisSpec& ya = spec_.value_axis;
  const AxisSpec& xa = spec_.x_axis;
  const auto yt = tick_labels(ya);
  const auto xt = tick_labels(xa);

  const int y0 = bottom_ - 10 - 15;
  const int qy = tick_quantum(ya);
  const int hp = (y0 - (top_ + 8)) / qy * qy;
  if (hp < 100) overflow("plot too short");
  const int plot_top = y0 - hp;

  const int ax = left_ + value_axis_width(yt) + 7;
  const int x0 = ax + 1;
  const int right_limit = right_ - value_axis_width(xt) / 2 - 1;
  const int qx = tick_quantum(xa);
  const int wp = (right_limit - x0) / qx * qx;
  if (wp < 100) overflow("plot too narrow");
  const double yr = ya.max - ya.min, xr = xa.max - xa.min;
  auto to_pixel = [&](const DataPoint& p) {
    return Point{x0 + (p.x - xa.min) / xr * wp, y0 - (p.y - ya.min) / yr * hp};
  };

  for (int i = 0; i < static_cast<int>(spec_.series.size()); ++i) {
    const SeriesSpec& s = spec_.series[i];
    std::vector<Point> pts;
    for (const DataPoint& p : s.points) pts.push_back(to_pixel(p));
    if (spec_.type == ChartType::line) {
      canvas_.stroke_polyline(pts, 2.0, s.color, s.dashed);
      gt_.lines.push_back({pts, s.color, s.dashed, i});
    } else {
      for (const Point& p : pts) {
        canvas_.fill_circle(p, 3.0, s.color);
        gt_.dots.push_back({p, 3.0, s.color, i});
      }
    }
  }

  canvas_.stroke_segment({double(ax), double(plot_top)}, {double(ax), double(y0)}, 1.0, kAxisColor);
  canvas_.stroke_segment({double(ax), double(y0)}, {double(x0 + wp), double(y0)}, 1.0, kAxisColor);
  for (const TickLabel& l : yt) {
    const int yi = static_cast<int>(std::lround(y0 - (l.value - ya.min) / yr * hp));
    canvas_.stroke_segment({double(ax - 5), double(yi)}, {double(ax - 1), double(yi)}, 1.0, kAxisColor);
    gt_.ticks.push_back({Orientation::y, {double(ax), double(yi)}, l.value});
    y_tick_label(l, ax - 7, yi);
  }
  for (const TickLabel& l : xt) {
    const int xi = static_cast<int>(std::lround(x0 + (l.value - xa.min) / xr * wp));
    canvas_.stroke_segment({double(xi), double(y0 + 1)}, {double(xi), double(y0 + 5)}, 1.0, kAxisColor);
    gt_.ticks.push_back({Orientation::x, {double(xi), double(y0)}, l.value});
    x_tick_label(l, xi, y0 + 10);
  }
  y_title_at((plot_top + y0) / 2.0);
  x_title_at((x0 + x0 + wp) / 2.0);

  gt_.plot_area = BBox{double(x0), double(plot_top), double(x0 + wp), double(y0), BoxCategory::plot_area, 1.0};
  gt_.y_axis = AxisMapping{Orientation::y, -yr / hp, ya.min + y0 * yr / hp};
  gt_.x_axis = AxisMapping{Orientation::x, xr / wp, xa.min - x0 * xr / wp};
  gt_.chart_region.category = spec_.type == ChartType::line ? BoxCategory::line_chart : BoxCategory::scatter_chart;
}

void Renderer::check_layout() const {
  std::vector<BBox> boxes;
  for (const TextBox& t : gt_.texts) {
    BBox b = quad_bounds(t.polygon);
    if (t.exponent_polygon) {
      const BBox e = quad_bounds(*t.exponent_polygon);
      b.x_min = std::min(b.x_min, e.x_min);
      b.y_min = std::min(b.y_min, e.y_min);
      b.x_max = std::max(b.x_max, e.x_max);
      b.y_max = std::max(b.y_max, e.y_max);
    }
    if (b.x_min < kBandLo || b.y_min < kBandLo || b.x_max >= kBandHi || b.y_max >= kBandHi) {
      overflow("text outside the canvas: " + t.text);
    }
    boxes.push_back(b);
  }
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (std::size_t j = i + 1; j < boxes.size(); ++j) {
      const BBox& a = boxes[i];
      const BBox& b = boxes[j];
      if (a.x_min <= b.x_max + 2 && b.x_min <= a.x_max + 2 && a.y_min <= b.y_max + 2 && b.y_min <= a.y_max + 2) {
        overflow("overlapping text: " + gt_.texts[i].text + " / " + gt_.texts[j].text);
      }
    }
  }
  if (gt_.pie) {
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      if (gt_.texts[i].role != TextRole::pie_label) continue;
      const BBox& b = boxes[i];
      const Point& c = gt_.pie->center;
      const double nx = std::clamp(c.x, b.x_min, b.x_max), ny = std::clamp(c.y, b.y_min, b.y_max);
      const bool inside = std::hypot(b.x_max - b.x_min, b.y_max - b.y_min) / 2 + distance(b.center(), c) < gt_.pie->radius;
      if (!inside && std::hypot(nx - c.x, ny - c.y) < gt_.pie->radius + 3) overflow("pie label crosses the disc");
    }
  }
  for (const auto& bar : gt_.bars) {
    for (std::size_t i = 0; i < boxes.size(); ++i) {
      const BBox& b = boxes[i];
      if (b.x_min < bar.box.x_max && bar.box.x_min < b.x_max && b.y_min < bar.box.y_max && bar.box.y_min < b.y_max) {
        overflow("text overlaps a bar: " + gt_.texts[i].text);
      }
    }
  }
}

RenderedChart Renderer::run() {
  gt_.seed = spec_.seed;
  gt_.width = kCanvasSize;
  gt_.height = kCanvasSize;
  gt_.background = spec_.style.background;
  gt_.element_texture = spec_.style.element_texture != Texture::none;
  gt_.chart_region = BBox{8, 8, kCanvasSize - 8.0, kCanvasSize - 8.0, BoxCategory::bar_chart, 1.0};

  frame();
  headings();
  legend();
  switch (spec_.type) {
    case ChartType::vbar: bars_vertical(); break;
    case ChartType::hbar: bars_horizontal(); break;
    case ChartType::pie: pie(); break;
    case ChartType::line:
    case ChartType::scatter: xy_plot(); break;
  }
  check_layout();

  ChartTable& t = gt_.table;
  t.type = spec_.type;
  t.title = opt(spec_.title);
  t.caption = opt(spec_.caption);
  if (spec_.type != ChartType::pie) {
    t.x_title = opt(spec_.x_title);
    t.y_title = opt(spec_.y_title);
  }
  if (is_bar(spec_.type) || spec_.type == ChartType::pie) {
    for (const SeriesSpec& s : spec_.series) t.rows.push_back({s.label, s.value});
  } else {
    for (const SeriesSpec& s : spec_.series) t.series.push_back({s.label, s.points});
    t.x_range = AxisRange{spec_.x_axis.min, spec_.x_axis.max};
  }
  if (spec_.type != ChartType::pie) t.y_range = AxisRange{spec_.value_axis.min, spec_.value_axis.max};
  return {std::move(canvas_.raster()), std::move(gt_)};
}

}  // namespace

void validate(const ChartSpec& spec) {
  auto bad = [](const std::string& m) { throw Error(ErrorCode::invalid_argument, "chart spec: " + m); };
  if (spec.series.empty()) bad("no series");
  for (const SeriesSpec& s : spec.series) {
    if (s.label.empty()) bad("empty label");
    if (!std::isfinite(s.value)) bad("non-finite value");
    for (const DataPoint& p : s.points) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) bad("non-finite point");
    }
  }
  if (!spec.style.uniform_color) {
    for (std::size_t i = 0; i < spec.series.size(); ++i) {
      for (std::size_t j = i + 1; j < spec.series.size(); ++j) {
        if (channel_sum_distance(spec.series[i].color, spec.series[j].color) < 30) bad("colors too similar");
      }
    }
  }
  if (spec.type == ChartType::pie) {
    double sum = 0.0;
    for (const SeriesSpec& s : spec.series) {
      if (!(s.value > 0.0)) bad("pie fractions must be positive");
      sum += s.value;
    }
    if (std::fabs(sum - 1.0) > 1e-9) bad("pie fractions must sum to 1");
    return;
  }
  auto check_axis = [&](const AxisSpec& a) {
    if (!(a.max > a.min) || a.ticks.size() < 2) bad("axis needs min < max and two ticks");
    for (std::size_t i = 1; i < a.ticks.size(); ++i) {
      if (!(a.ticks[i] > a.ticks[i - 1])) bad("ticks must increase");
    }
  };
  check_axis(spec.value_axis);
  if (is_bar(spec.type)) {
    for (const SeriesSpec& s : spec.series) {
      if (s.value <= spec.value_axis.min || s.value > spec.value_axis.max) bad("bar value outside the axis");
    }
  } else {
    check_axis(spec.x_axis);
    for (const SeriesSpec& s : spec.series) {
      if (spec.type == ChartType::line && s.points.size() < 2) bad("line needs two points");
      if (s.points.empty()) bad("series without points");
    }
  }
}

RenderedChart render(const ChartSpec& spec) {
  validate(spec);
  return Renderer(spec).run();
}

}  // namespace charter
