#include "charter/synth/chart_spec.hpp"

#include <cmath>
#include <cstdio>

#include "charter/core/error.hpp"
#include "charter/core/json_geometry.hpp"

namespace charter {

namespace {

void check_range(const IntRange& r, const char* name, int lo, int hi) {
  if (r.min < lo || r.max > hi || r.min > r.max) {
    throw Error(ErrorCode::invalid_config, std::string("synth config: bad range for ") + name);
  }
}

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::invalid_config, std::string("synth config: probability out of [0,1]: ") + name);
  }
}

int decimals_for(double step) {
  for (int d = 0; d <= 8; ++d) {
    const double scaled = step * std::pow(10.0, d);
    if (std::fabs(scaled - std::round(scaled)) < 1e-6 * std::max(1.0, scaled)) return d;
  }
  return 8;
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s.starts_with("-") && std::stod(s) == 0.0) s.erase(0, 1);
  return s;
}

std::string group_thousands(const std::string& s) {
  const std::size_t start = (s[0] == '-') ? 1 : 0;
  std::size_t int_end = s.find('.');
  if (int_end == std::string::npos) int_end = s.size();
  std::string out = s.substr(0, start);
  const std::string digits = s.substr(start, int_end - start);
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out + s.substr(int_end);
}

nlohmann::ordered_json axis_json(const AxisSpec& a) {
  return {{"min", a.min}, {"max", a.max}, {"ticks", a.ticks}, {"format", std::string(to_string(a.format))}};
}

}  // namespace

void validate(const SynthConfig& c) {
  check_range(c.bars, "bars", 1, 24);
  check_range(c.pie_slices, "pie_slices", 1, 16);
  check_range(c.line_series, "line_series", 1, 8);
  check_range(c.line_points, "line_points", 2, 30);
  check_range(c.scatter_series, "scatter_series", 1, 6);
  check_range(c.scatter_points, "scatter_points", 1, 60);
  for (auto [p, name] : {std::pair{c.p_hidden_axes, "p_hidden_axes"}, {c.p_legend, "p_legend"},
                         {c.p_background_texture, "p_background_texture"},
                         {c.p_element_texture, "p_element_texture"}, {c.p_rotated_labels, "p_rotated_labels"},
                         {c.p_value_on_bar, "p_value_on_bar"}, {c.p_uniform_color, "p_uniform_color"},
                         {c.p_sector_separators, "p_sector_separators"}, {c.p_dashed_line, "p_dashed_line"},
                         {c.p_exponent_ticks, "p_exponent_ticks"}, {c.p_thousands_ticks, "p_thousands_ticks"},
                         {c.p_currency_ticks, "p_currency_ticks"}, {c.p_border, "p_border"},
                         {c.p_dashed_border, "p_dashed_border"}, {c.p_bar_bottom_nonzero, "p_bar_bottom_nonzero"},
                         {c.p_inside_labels, "p_inside_labels"}, {c.p_title, "p_title"},
                         {c.p_caption, "p_caption"}, {c.p_axis_titles, "p_axis_titles"}}) {
    check_probability(p, name);
  }
  if (c.p_exponent_ticks + c.p_thousands_ticks + c.p_currency_ticks > 1.0 + 1e-12) {
    throw Error(ErrorCode::invalid_config, "synth config: tick format probabilities exceed 1");
  }
  double total = 0.0;
  for (double w : c.pie_label_weights) {
    if (!(w >= 0.0)) throw Error(ErrorCode::invalid_config, "synth config: negative pie label weight");
    total += w;
  }
  if (total <= 0.0) throw Error(ErrorCode::invalid_config, "synth config: pie label weights sum to zero");
  if (c.min_color_distance < 30 || c.min_color_distance > 255) {
    throw Error(ErrorCode::invalid_config, "synth config: min_color_distance must lie in [30,255]");
  }
}

nlohmann::ordered_json to_json(const SynthConfig& c) {
  auto range = [](const IntRange& r) { return nlohmann::ordered_json::array({r.min, r.max}); };
  return {
      {"bars", range(c.bars)},
      {"pie_slices", range(c.pie_slices)},
      {"line_series", range(c.line_series)},
      {"line_points", range(c.line_points)},
      {"scatter_series", range(c.scatter_series)},
      {"scatter_points", range(c.scatter_points)},
      {"p_hidden_axes", c.p_hidden_axes},
      {"p_legend", c.p_legend},
      {"p_background_texture", c.p_background_texture},
      {"p_element_texture", c.p_element_texture},
      {"texture_with_legend", c.texture_with_legend},
      {"p_rotated_labels", c.p_rotated_labels},
      {"p_value_on_bar", c.p_value_on_bar},
      {"p_uniform_color", c.p_uniform_color},
      {"p_sector_separators", c.p_sector_separators},
      {"p_dashed_line", c.p_dashed_line},
      {"p_exponent_ticks", c.p_exponent_ticks},
      {"p_thousands_ticks", c.p_thousands_ticks},
      {"p_currency_ticks", c.p_currency_ticks},
      {"p_border", c.p_border},
      {"p_dashed_border", c.p_dashed_border},
      {"p_bar_bottom_nonzero", c.p_bar_bottom_nonzero},
      {"p_inside_labels", c.p_inside_labels},
      {"p_title", c.p_title},
      {"p_caption", c.p_caption},
      {"p_axis_titles", c.p_axis_titles},
      {"pie_label_weights", c.pie_label_weights},
      {"min_color_distance", c.min_color_distance},
  };
}

SynthConfig synth_config_from_json(const nlohmann::json& j, SynthConfig c) {
  try {
    auto range = [&](const char* key, IntRange& r) {
      if (j.contains(key)) r = {j.at(key).at(0).get<int>(), j.at(key).at(1).get<int>()};
    };
    auto num = [&](const char* key, double& v) {
      if (j.contains(key)) v = j.at(key).get<double>();
    };
    range("bars", c.bars);
    range("pie_slices", c.pie_slices);
    range("line_series", c.line_series);
    range("line_points", c.line_points);
    range("scatter_series", c.scatter_series);
    range("scatter_points", c.scatter_points);
    num("p_hidden_axes", c.p_hidden_axes);
    num("p_legend", c.p_legend);
    num("p_background_texture", c.p_background_texture);
    num("p_element_texture", c.p_element_texture);
    if (j.contains("texture_with_legend")) c.texture_with_legend = j.at("texture_with_legend").get<bool>();
    num("p_rotated_labels", c.p_rotated_labels);
    num("p_value_on_bar", c.p_value_on_bar);
    num("p_uniform_color", c.p_uniform_color);
    num("p_sector_separators", c.p_sector_separators);
    num("p_dashed_line", c.p_dashed_line);
    num("p_exponent_ticks", c.p_exponent_ticks);
    num("p_thousands_ticks", c.p_thousands_ticks);
    num("p_currency_ticks", c.p_currency_ticks);
    num("p_border", c.p_border);
    num("p_dashed_border", c.p_dashed_border);
    num("p_bar_bottom_nonzero", c.p_bar_bottom_nonzero);
    num("p_inside_labels", c.p_inside_labels);
    num("p_title", c.p_title);
    num("p_caption", c.p_caption);
    num("p_axis_titles", c.p_axis_titles);
    if (j.contains("pie_label_weights")) c.pie_label_weights = j.at("pie_label_weights").get<std::array<double, 3>>();
    if (j.contains("min_color_distance")) c.min_color_distance = j.at("min_color_distance").get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_config, std::string("synth config: ") + e.what());
  }
  validate(c);
  return c;
}

std::string_view to_string(PieLabelMode mode) {
  switch (mode) {
    case PieLabelMode::legend: return "legend";
    case PieLabelMode::connector: return "connector";
    case PieLabelMode::adjacent: return "adjacent";
  }
  return "?";
}

std::string_view to_string(TickFormat format) {
  switch (format) {
    case TickFormat::plain: return "plain";
    case TickFormat::thousands: return "thousands";
    case TickFormat::currency: return "currency";
    case TickFormat::exponent: return "exponent";
  }
  return "?";
}

std::string_view to_string(Texture texture) {
  switch (texture) {
    case Texture::none: return "none";
    case Texture::stripes: return "stripes";
    case Texture::checker: return "checker";
    case Texture::noise: return "noise";
  }
  return "?";
}

std::string_view to_string(LegendPosition position) {
  switch (position) {
    case LegendPosition::none: return "none";
    case LegendPosition::right: return "right";
    case LegendPosition::top: return "top";
  }
  return "?";
}

std::string_view to_string(BorderStyle style) {
  switch (style) {
    case BorderStyle::none: return "none";
    case BorderStyle::solid: return "solid";
    case BorderStyle::dashed: return "dashed";
  }
  return "?";
}

nlohmann::ordered_json to_json(const ChartSpec& s) {
  nlohmann::ordered_json series = nlohmann::ordered_json::array();
  for (const SeriesSpec& ser : s.series) {
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const DataPoint& p : ser.points) pts.push_back({p.x, p.y});
    series.push_back({{"label", ser.label},
                      {"value", ser.value},
                      {"points", std::move(pts)},
                      {"color", color_json(ser.color)},
                      {"dashed", ser.dashed}});
  }
  const StyleSpec& st = s.style;
  nlohmann::ordered_json style = {
      {"background", color_json(st.background)},
      {"text_color", color_json(st.text_color)},
      {"border_color", color_json(st.border_color)},
      {"border_style", std::string(to_string(st.border_style))},
      {"bar_gap", st.bar_gap},
      {"axes_visible", st.axes_visible},
      {"legend", std::string(to_string(st.legend))},
      {"pie_labels", std::string(to_string(st.pie_labels))},
      {"background_texture", std::string(to_string(st.background_texture))},
      {"element_texture", std::string(to_string(st.element_texture))},
      {"x_label_rotation", st.x_label_rotation},
      {"value_on_bar", st.value_on_bar},
      {"uniform_color", st.uniform_color},
      {"sector_separators", st.sector_separators},
      {"inside_labels", st.inside_labels},
  };
  return {
      {"seed", s.seed},
      {"chart_type", std::string(to_string(s.type))},
      {"series", std::move(series)},
      {"style", std::move(style)},
      {"title", s.title},
      {"caption", s.caption},
      {"x_title", s.x_title},
      {"y_title", s.y_title},
      {"value_axis", axis_json(s.value_axis)},
      {"x_axis", axis_json(s.x_axis)},
      {"pie_start_angle", s.pie_start_angle},
  };
}

std::string format_tick(double value, TickFormat format, double step) {
  const int d = decimals_for(step);
  switch (format) {
    case TickFormat::plain: return fixed(value, d);
    case TickFormat::thousands: return group_thousands(fixed(value, d));
    case TickFormat::currency: return "$" + fixed(value, d);
    case TickFormat::exponent: return value == 0.0 ? "0" : "10";
  }
  return fixed(value, d);
}

std::string format_value(double value, double granularity) {
  std::string s = fixed(value, decimals_for(granularity));
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

}  // namespace charter
