#include "charter/synth/sampler.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

#include "charter/core/error.hpp"
#include "charter/synth/rng.hpp"

namespace charter {

namespace {

constexpr std::array<Color, 28> kPalette = {{
    {230, 25, 75},   {60, 180, 75},   {255, 200, 20},  {0, 130, 200},  {245, 130, 48},  {145, 30, 180},
    {70, 220, 230},  {240, 50, 230},  {180, 220, 50},  {250, 170, 200}, {0, 128, 128},  {190, 160, 250},
    {170, 110, 40},  {128, 0, 0},     {120, 230, 170}, {128, 128, 0},  {0, 0, 128},     {128, 128, 128},
    {31, 119, 180},  {255, 127, 14},  {44, 160, 44},   {214, 39, 40},  {148, 103, 189}, {140, 86, 75},
    {227, 119, 194}, {188, 189, 34},  {23, 190, 207},  {90, 60, 160},
}};

constexpr std::array<const char*, 72> kWords = {
    "Ant",    "Bee",     "Cat",     "Dog",     "Elk",     "Fox",     "Gnu",     "Owl",     "Yak",
    "Emu",    "Oak",     "Ash",     "Elm",     "Fig",     "Kiwi",    "Lime",    "Pear",    "Plum",
    "Corn",   "Rice",    "Rye",     "Tea",     "Gold",    "Iron",    "Zinc",    "Tin",     "Jade",
    "Ruby",   "Onyx",    "Opal",    "North",   "South",   "East",    "West",    "Alpha",   "Beta",
    "Gamma",  "Delta",   "Omega",   "Sigma",   "Apple",   "Mango",   "Peach",   "Grape",   "Lemon",
    "Olive",  "Cedar",   "Maple",   "Birch",   "Willow",  "Aspen",   "Spruce",  "Copper",  "Silver",
    "Cobalt", "Nickel",  "Carbon",  "Helium",  "Neon",    "Argon",   "Oslo",    "Paris",   "Rome",
    "Lima",   "Cairo",   "Tokyo",   "Berlin",  "Madrid",  "Vienna",  "Dublin",  "Prague",  "Quito",
};

constexpr std::array<const char*, 16> kTopics = {
    "Sales",   "Revenue", "Profit", "Users",   "Output",  "Exports", "Imports", "Visits",
    "Budget",  "Costs",   "Yield",  "Traffic", "Orders",  "Energy",  "Growth",  "Demand",
};

constexpr std::array<const char*, 10> kGroupings = {
    "by region", "by product", "per site", "by team", "by month", "per store", "by segment", "by city",
    "by source", "per unit",
};

constexpr std::array<const char*, 8> kCaptions = {
    "Source: internal data",  "Figures are estimates", "Data collected quarterly", "Preliminary results",
    "Survey sample, n=1200",  "Values rounded",        "Source: annual report",    "Excludes returns",
};

template <typename T, std::size_t N>
const T& pick(Rng& rng, const std::array<T, N>& a) {
  return a[static_cast<std::size_t>(rng.integer(0, static_cast<int>(N) - 1))];
}

std::vector<std::string> pick_words(Rng& rng, int n, std::size_t max_len) {
  std::vector<std::string> pool;
  for (const char* w : kWords) {
    if (std::string_view(w).size() <= max_len) pool.emplace_back(w);
  }
  if (static_cast<int>(pool.size()) < n) throw Error(ErrorCode::layout_overflow, "not enough short labels");
  for (int i = 0; i < n; ++i) {
    const int j = rng.integer(i, static_cast<int>(pool.size()) - 1);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(static_cast<std::size_t>(n));
  return pool;
}

Color light_background(Rng& rng) {
  if (rng.bernoulli(0.5)) return {255, 255, 255};
  auto ch = [&] { return static_cast<std::uint8_t>(rng.integer(228, 255)); };
  return {ch(), ch(), ch()};
}

std::vector<Color> pick_colors(Rng& rng, int n, Color background, Color text, int min_distance) {
  std::vector<Color> pool;
  for (Color c : kPalette) {
    if (channel_sum_distance(c, background) >= 120 && channel_sum_distance(c, text) >= 120) pool.push_back(c);
  }
  for (std::size_t i = 0; i + 1 < pool.size(); ++i) {
    std::swap(pool[i], pool[static_cast<std::size_t>(rng.integer(static_cast<int>(i), static_cast<int>(pool.size()) - 1))]);
  }
  std::vector<Color> out;
  for (Color c : pool) {
    if (std::all_of(out.begin(), out.end(), [&](Color o) { return channel_sum_distance(o, c) >= min_distance; })) {
      out.push_back(c);
      if (static_cast<int>(out.size()) == n) return out;
    }
  }
  throw Error(ErrorCode::layout_overflow, "palette cannot supply enough distinct colors");
}

double snap(double v, double granularity) { return std::stod(format_value(v, granularity)); }

TickFormat pick_format(Rng& rng, const SynthConfig& c, bool allow_exponent) {
  const double u = rng.uniform();
  if (u < c.p_exponent_ticks) return allow_exponent ? TickFormat::exponent : TickFormat::plain;
  if (u < c.p_exponent_ticks + c.p_thousands_ticks) return TickFormat::thousands;
  if (u < c.p_exponent_ticks + c.p_thousands_ticks + c.p_currency_ticks) return TickFormat::currency;
  return TickFormat::plain;
}

/// Value axis plus the grid step values are drawn on.
struct AxisDraw {
  AxisSpec axis;
  double granularity = 1.0;
};

AxisDraw sample_axis(Rng& rng, TickFormat format, bool nonzero_bottom) {
  AxisDraw d;
  d.axis.format = format;
  if (format == TickFormat::exponent) {
    const int k = rng.integer(2, 6);
    const double top = std::pow(10.0, k);
    d.axis.min = 0.0;
    d.axis.max = top;
    d.axis.ticks = {0.0, top / 10.0, top};
    d.granularity = top / 200.0;
    return d;
  }
  static constexpr std::array<double, 4> kMantissa = {1.0, 2.0, 2.5, 5.0};
  int e_lo = -1, e_hi = 3;
  if (format == TickFormat::thousands) e_lo = 3, e_hi = 4;
  if (format == TickFormat::currency) e_lo = 0;
  const double step = pick(rng, kMantissa) * std::pow(10.0, rng.integer(e_lo, e_hi));
  const int n = rng.integer(4, 7);
  const double min = nonzero_bottom ? rng.integer(1, 5) * step : 0.0;
  d.granularity = step / 20.0;
  d.axis.min = snap(min, d.granularity);
  for (int i = 0; i < n; ++i) d.axis.ticks.push_back(snap(min + i * step, d.granularity));
  d.axis.max = d.axis.ticks.back();
  return d;
}

/// Grid value in (min + lo*range, min + hi*range].
double grid_value(Rng& rng, const AxisDraw& a, double lo, double hi) {
  const double range = a.axis.max - a.axis.min;
  const int k_lo = static_cast<int>(std::ceil(lo * range / a.granularity)) + 1;
  const int k_hi = static_cast<int>(std::floor(hi * range / a.granularity + 1e-9));
  return snap(a.axis.min + rng.integer(k_lo, std::max(k_lo, k_hi)) * a.granularity, a.granularity);
}

void sample_texts(Rng& rng, const SynthConfig& c, ChartSpec& s) {
  if (rng.bernoulli(c.p_title)) {
    s.title = std::string(pick(rng, kTopics)) + " " + pick(rng, kGroupings);
    if (rng.bernoulli(0.3)) s.title += " " + std::to_string(rng.integer(1995, 2024));
  }
  if (rng.bernoulli(c.p_caption)) s.caption = pick(rng, kCaptions);
  if (s.type != ChartType::pie && rng.bernoulli(c.p_axis_titles)) {
    static constexpr std::array<const char*, 6> kX = {"Category", "Group", "Year", "Quarter", "Time", "Index"};
    static constexpr std::array<const char*, 6> kY = {"Amount", "Count", "Value", "Units", "Share", "Level"};
    s.x_title = pick(rng, kX);
    s.y_title = pick(rng, kY);
  }
}

Texture element_texture(Rng& rng, const SynthConfig& c, bool has_legend) {
  if (!rng.bernoulli(c.p_element_texture) || (has_legend && !c.texture_with_legend)) return Texture::none;
  return rng.bernoulli(0.5) ? Texture::stripes : Texture::checker;
}

void sample_bars(Rng& rng, const SynthConfig& c, ChartSpec& s) {
  StyleSpec& st = s.style;
  const int n = rng.integer(c.bars.min, c.bars.max);
  st.axes_visible = !rng.bernoulli(c.p_hidden_axes);
  st.value_on_bar = !st.axes_visible || rng.bernoulli(c.p_value_on_bar);
  st.legend = rng.bernoulli(c.p_legend) ? (rng.bernoulli(0.5) && n <= 4 ? LegendPosition::top : LegendPosition::right)
                                        : LegendPosition::none;
  st.uniform_color = st.legend == LegendPosition::none && rng.bernoulli(c.p_uniform_color);
  st.element_texture = element_texture(rng, c, st.legend != LegendPosition::none);
  st.bar_gap = rng.uniform(0.15, 0.5);
  const bool rotate = rng.bernoulli(c.p_rotated_labels);
  if (s.type == ChartType::vbar && st.legend == LegendPosition::none && rotate) st.x_label_rotation = 45.0;

  TickFormat format = pick_format(rng, c, true);
  if (!st.axes_visible) format = TickFormat::plain;
  const AxisDraw a = sample_axis(rng, format, format != TickFormat::exponent && rng.bernoulli(c.p_bar_bottom_nonzero));
  s.value_axis = a.axis;

  std::size_t max_len = 9;
  if (s.type == ChartType::vbar && st.legend == LegendPosition::none && st.x_label_rotation == 0.0) {
    max_len = static_cast<std::size_t>(std::clamp((380 / n - 3) / 8, 3, 9));
  }
  const auto labels = pick_words(rng, n, max_len);
  const auto colors = pick_colors(rng, n, st.background, st.text_color, c.min_color_distance);
  for (int i = 0; i < n; ++i) {
    SeriesSpec ser;
    ser.label = labels[i];
    ser.value = grid_value(rng, a, 0.02, 1.0);
    ser.color = st.uniform_color ? colors[0] : colors[i];
    s.series.push_back(std::move(ser));
  }
}

void sample_pie(Rng& rng, const SynthConfig& c, ChartSpec& s) {
  StyleSpec& st = s.style;
  const int n = rng.integer(c.pie_slices.min, c.pie_slices.max);
  st.pie_labels = static_cast<PieLabelMode>(rng.weighted(c.pie_label_weights));
  st.legend = st.pie_labels == PieLabelMode::legend ? LegendPosition::right : LegendPosition::none;
  st.uniform_color = st.legend == LegendPosition::none && n > 1 && rng.bernoulli(c.p_uniform_color);
  st.sector_separators = st.uniform_color || rng.bernoulli(c.p_sector_separators);
  st.inside_labels = st.pie_labels == PieLabelMode::adjacent && rng.bernoulli(c.p_inside_labels);
  st.element_texture = element_texture(rng, c, st.legend != LegendPosition::none);
  s.pie_start_angle = rng.uniform(0.0, 360.0);

  std::vector<double> weights;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    weights.push_back(rng.uniform(1.0, 3.0));
    total += weights.back();
  }
  const auto labels = pick_words(rng, n, 8);
  const auto colors = pick_colors(rng, n, st.background, st.text_color, c.min_color_distance);
  for (int i = 0; i < n; ++i) {
    SeriesSpec ser;
    ser.label = labels[i];
    ser.value = weights[i] / total;
    ser.color = st.uniform_color ? colors[0] : colors[i];
    s.series.push_back(std::move(ser));
  }
}

void sample_xy(Rng& rng, const SynthConfig& c, ChartSpec& s) {
  StyleSpec& st = s.style;
  const bool line = s.type == ChartType::line;
  const int n = line ? rng.integer(c.line_series.min, c.line_series.max)
                     : rng.integer(c.scatter_series.min, c.scatter_series.max);
  const bool legend = n > 1 || rng.bernoulli(c.p_legend);
  st.legend = legend ? (rng.bernoulli(0.5) ? LegendPosition::right : LegendPosition::top) : LegendPosition::none;

  const TickFormat format = pick_format(rng, c, true);
  const AxisDraw ya = sample_axis(rng, format, format != TickFormat::exponent && rng.bernoulli(c.p_bar_bottom_nonzero));
  const AxisDraw xa = sample_axis(rng, TickFormat::plain, rng.bernoulli(0.3));
  s.value_axis = ya.axis;
  s.x_axis = xa.axis;
  const double xr = xa.axis.max - xa.axis.min, yr = ya.axis.max - ya.axis.min;

  const auto labels = legend ? pick_words(rng, n, 9) : std::vector<std::string>{"series_1"};
  const auto colors = pick_colors(rng, n, st.background, st.text_color, c.min_color_distance);
  for (int i = 0; i < n; ++i) {
    SeriesSpec ser;
    ser.label = labels[i];
    ser.color = colors[i];
    ser.dashed = line && rng.bernoulli(c.p_dashed_line);
    s.series.push_back(std::move(ser));
  }

  if (line) {
    const int np = rng.integer(c.line_points.min, c.line_points.max);
    std::vector<double> xs;
    for (int j = 0; j < np; ++j) {
      xs.push_back(snap(xa.axis.min + xr * (0.05 + 0.9 * j / (np - 1)), xa.granularity));
    }
    for (int j = 0; j < np; ++j) {
      for (int i = 0; i < n; ++i) {
        double y = 0.0;
        for (int attempt = 0; attempt < 64; ++attempt) {
          y = grid_value(rng, ya, 0.05, 0.97);
          bool clear = true;
          for (int k = 0; k < i; ++k) clear = clear && std::fabs(s.series[k].points[j].y - y) >= 0.08 * yr;
          if (clear) break;
        }
        s.series[i].points.push_back({xs[j], y});
      }
    }
    return;
  }

  std::vector<DataPoint> placed;
  for (int i = 0; i < n; ++i) {
    const int np = rng.integer(c.scatter_points.min, c.scatter_points.max);
    for (int j = 0; j < np; ++j) {
      for (int attempt = 0; attempt < 200; ++attempt) {
        const DataPoint p{grid_value(rng, xa, 0.04, 0.96), grid_value(rng, ya, 0.04, 0.96)};
        const bool clear = std::all_of(placed.begin(), placed.end(), [&](const DataPoint& q) {
          return std::hypot((p.x - q.x) / xr, (p.y - q.y) / yr) >= 0.06;
        });
        if (clear) {
          placed.push_back(p);
          s.series[i].points.push_back(p);
          break;
        }
      }
    }
    if (s.series[i].points.empty()) throw Error(ErrorCode::layout_overflow, "no room for scatter points");
    std::sort(s.series[i].points.begin(), s.series[i].points.end(),
              [](const DataPoint& a, const DataPoint& b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  }
}

ChartSpec sample_attempt(std::uint64_t seed, std::uint64_t attempt, ChartType type, const SynthConfig& c) {
  Rng rng(mix_seed(mix_seed(seed, static_cast<std::uint64_t>(type) + 1), attempt));
  ChartSpec s;
  s.seed = seed;
  s.type = type;
  s.style.background = light_background(rng);
  if (rng.bernoulli(c.p_border)) {
    s.style.border_style = rng.bernoulli(c.p_dashed_border) ? BorderStyle::dashed : BorderStyle::solid;
    const auto v = static_cast<std::uint8_t>(rng.integer(0, 120));
    s.style.border_color = {v, v, v};
  } else {
    s.style.border_style = BorderStyle::none;
  }
  if (rng.bernoulli(c.p_background_texture)) {
    static constexpr std::array<Texture, 3> kTextures = {Texture::stripes, Texture::checker, Texture::noise};
    s.style.background_texture = pick(rng, kTextures);
  }
  sample_texts(rng, c, s);
  switch (type) {
    case ChartType::vbar:
    case ChartType::hbar: sample_bars(rng, c, s); break;
    case ChartType::pie: sample_pie(rng, c, s); break;
    case ChartType::line:
    case ChartType::scatter: sample_xy(rng, c, s); break;
  }
  return s;
}

}  // namespace

std::span<const Color> palette() { return kPalette; }

ChartSpec sample_spec(std::uint64_t seed, ChartType type, const SynthConfig& config) {
  validate(config);
  return sample_attempt(seed, 0, type, config);
}

SampledChart sample_chart(std::uint64_t seed, ChartType type, const SynthConfig& config) {
  validate(config);
  constexpr int kMaxAttempts = 200;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    try {
      ChartSpec spec = sample_attempt(seed, static_cast<std::uint64_t>(attempt), type, config);
      RenderedChart chart = render(spec);
      return {std::move(spec), std::move(chart), attempt};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::layout_overflow) throw;
    }
  }
  throw Error(ErrorCode::layout_overflow, "no layout fits after " + std::to_string(kMaxAttempts) + " attempts");
}

std::string chart_id(ChartType type, std::uint64_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "_%05llu", static_cast<unsigned long long>(index));
  return std::string(to_string(type)) + buf;
}

}  // namespace charter
