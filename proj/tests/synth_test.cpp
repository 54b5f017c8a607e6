#include <cmath>
#include <map>

#include "charter/core/error.hpp"
#include "charter/core/image_ops.hpp"
#include "charter/synth/heatmaps.hpp"
#include "charter/synth/render.hpp"
#include "charter/synth/rng.hpp"
#include "charter/synth/sampler.hpp"
#include "doctest.h"

using namespace charter;

namespace {

ChartSpec bar_spec(std::vector<double> values) {
  ChartSpec s;
  s.type = ChartType::vbar;
  const Color colors[] = {{230, 25, 75}, {60, 180, 75}, {0, 130, 200}, {245, 130, 48}};
  for (std::size_t i = 0; i < values.size(); ++i) {
    SeriesSpec x;
    x.label = std::string(1, char('A' + i));
    x.value = values[i];
    x.color = colors[i % 4];
    s.series.push_back(x);
  }
  s.value_axis = {0.0, 4.0, {0, 1, 2, 3, 4}, TickFormat::plain};
  return s;
}

ChartSpec pie_spec(std::vector<double> fractions) {
  ChartSpec s = bar_spec(fractions);
  s.type = ChartType::pie;
  s.style.pie_labels = PieLabelMode::adjacent;
  s.pie_start_angle = 0.0;
  return s;
}

// Fiducials in heatmap cells per point category.
std::map<HeatmapCategory, std::vector<Point>> fiducials(const GroundTruth& gt, double s) {
  std::map<HeatmapCategory, std::vector<Point>> f;
  auto add = [&](HeatmapCategory c, Point p) { f[c].push_back({p.x / s, p.y / s}); };
  for (const BarGeometry& b : gt.bars) {
    add(HeatmapCategory::bar_top_left, {b.box.x_min, b.box.y_min});
    add(HeatmapCategory::bar_bottom_right, {b.box.x_max, b.box.y_max});
  }
  if (gt.pie) add(HeatmapCategory::pie_center, gt.pie->center);
  for (const LineGeometry& l : gt.lines) {
    for (const Point& v : l.vertices) add(HeatmapCategory::line_knee, v);
  }
  for (const DotGeometry& d : gt.dots) add(HeatmapCategory::scatter_dot, d.center);
  for (const TickGeometry& t : gt.ticks) add(t.orientation == Orientation::x ? HeatmapCategory::x_tick : HeatmapCategory::y_tick, t.position);
  return f;
}

}  // namespace

TEST_SUITE("synth") {

TEST_CASE("sample_spec is deterministic per seed") {
  for (ChartType t : kAllChartTypes) {
    CHECK(to_json(sample_spec(0, t)).dump() == to_json(sample_spec(0, t)).dump());
    CHECK(to_json(sample_spec(1, t)).dump() != to_json(sample_spec(2, t)).dump());
  }
}

TEST_CASE("sampled pie fractions sum to one") {
  SynthConfig c;
  c.pie_slices = {3, 3};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const ChartSpec s = sample_spec(seed, ChartType::pie, c);
    REQUIRE(s.series.size() == 3);
    double sum = 0.0;
    for (const SeriesSpec& x : s.series) sum += x.value;
    CHECK(std::fabs(sum - 1.0) <= 1e-9);
  }
}

TEST_CASE("hidden-axes frequency follows its probability") {
  const SynthConfig c;
  int hidden = 0;
  const int n = 10000;
  for (int seed = 0; seed < n; ++seed) hidden += !sample_spec(std::uint64_t(seed), ChartType::vbar, c).style.axes_visible;
  CHECK(std::fabs(double(hidden) / n - c.p_hidden_axes) <= 0.02);
}

TEST_CASE("sampled colors are pairwise distinct") {
  for (ChartType t : kAllChartTypes) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const ChartSpec s = sample_spec(seed, t);
      if (s.style.uniform_color) continue;
      for (std::size_t i = 0; i < s.series.size(); ++i) {
        for (std::size_t j = i + 1; j < s.series.size(); ++j) {
          CHECK(channel_sum_distance(s.series[i].color, s.series[j].color) >= SynthConfig{}.min_color_distance);
        }
      }
    }
  }
}

TEST_CASE("invalid synth config is rejected") {
  SynthConfig c;
  c.bars = {5, 2};
  CHECK_THROWS_AS(sample_spec(0, ChartType::vbar, c), Error);
  c = {};
  c.p_legend = 1.5;
  CHECK_THROWS_AS(validate(c), Error);
}

TEST_CASE("bar heights are proportional to values") {
  const RenderedChart r = render(bar_spec({1, 2, 3}));
  REQUIRE(r.gt.bars.size() == 3);
  const double unit = r.gt.bars[0].box.height();
  CHECK(r.gt.bars[1].box.height() == doctest::Approx(2 * unit).epsilon(1.0 / (2 * unit)));
  CHECK(std::fabs(r.gt.bars[2].box.height() - 3 * unit) <= 1.0);
  CHECK(r.gt.bars[0].box.height() < r.gt.bars[1].box.height());
}

TEST_CASE("bar interiors are painted in the series color") {
  const ChartSpec spec = bar_spec({1, 2, 3});
  const RenderedChart r = render(spec);
  for (const BarGeometry& b : r.gt.bars) {
    const Color want = spec.series[std::size_t(b.row)].color;
    for (double fx : {0.2, 0.5, 0.8}) {
      for (double fy : {0.3, 0.7}) {
        const int x = int(b.box.x_min + fx * b.box.width()), y = int(b.box.y_min + fy * b.box.height());
        CHECK(r.raster.at(x, y) == want);
      }
    }
    // One pixel outside the left edge is background.
    CHECK(r.raster.at(int(std::floor(b.box.x_min)) - 1, int(b.box.center().y)) != want);
  }
}

TEST_CASE("pie sector angles are fraction times 360") {
  const RenderedChart r = render(pie_spec({0.5, 0.3, 0.2}));
  REQUIRE(r.gt.pie);
  REQUIRE(r.gt.pie->sectors.size() == 3);
  CHECK(r.gt.pie->sectors[0].span_deg == doctest::Approx(180.0));
  CHECK(r.gt.pie->sectors[1].span_deg == doctest::Approx(108.0));
  CHECK(r.gt.pie->sectors[2].span_deg == doctest::Approx(72.0));
  CHECK(r.gt.pie->sectors[1].start_deg == doctest::Approx(180.0));
}

TEST_CASE("malformed specs are rejected") {
  ChartSpec s = pie_spec({0.5, 0.4});
  CHECK_THROWS_AS(render(s), Error);
  s = bar_spec({1, 5});
  CHECK_THROWS_AS(render(s), Error);
  s.series.clear();
  CHECK_THROWS_AS(validate(s), Error);
}

TEST_CASE("too many bars overflow the layout") {
  std::vector<double> v(60, 1.0);
  ChartSpec s = bar_spec(v);
  for (std::size_t i = 0; i < s.series.size(); ++i) {
    s.series[i].label = "L" + std::to_string(i);
    s.series[i].color = Color{std::uint8_t(i * 4), std::uint8_t(255 - i * 4), std::uint8_t((i * 37) % 256)};
  }
  try {
    render(s);
    FAIL("expected an overflow");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::layout_overflow);
  }
}

TEST_CASE("ground truth table equals the sampled data") {
  for (ChartType t : kAllChartTypes) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const SampledChart s = sample_chart(seed, t);
      const ChartTable& table = s.chart.gt.table;
      CHECK(table.type == t);
      if (is_xy(t)) {
        REQUIRE(table.series.size() == s.spec.series.size());
        for (std::size_t i = 0; i < table.series.size(); ++i) {
          CHECK(table.series[i].label == s.spec.series[i].label);
          CHECK(table.series[i].points == s.spec.series[i].points);
        }
      } else {
        REQUIRE(table.rows.size() == s.spec.series.size());
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
          CHECK(table.rows[i].label == s.spec.series[i].label);
          CHECK(table.rows[i].value == s.spec.series[i].value);
        }
      }
    }
  }
}

TEST_CASE("rendering is deterministic and ground truth survives JSON") {
  for (ChartType t : kAllChartTypes) {
    const SampledChart a = sample_chart(3, t), b = sample_chart(3, t);
    CHECK(a.chart.raster == b.chart.raster);
    const auto j = to_json(a.chart.gt);
    CHECK(j.dump() == to_json(b.chart.gt).dump());
    CHECK(to_json(ground_truth_from_json(nlohmann::json::parse(j.dump()))).dump() == j.dump());
  }
}

TEST_CASE("pie sectors cover 360 degrees and ticks are monotone") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const SampledChart p = sample_chart(seed, ChartType::pie);
    double sum = 0.0;
    for (const auto& s : p.chart.gt.pie->sectors) sum += s.span_deg;
    CHECK(sum == doctest::Approx(360.0));
    const SampledChart v = sample_chart(seed, ChartType::line);
    std::optional<double> last;
    for (const TickGeometry& t : v.chart.gt.ticks) {
      if (t.orientation != Orientation::y || !t.value) continue;
      if (last) CHECK(*t.value > *last);
      last = t.value;
    }
  }
}

TEST_CASE("heatmaps of a chart without a pie have an empty pie center map") {
  const SampledChart s = sample_chart(0, ChartType::vbar);
  const HeatmapSet hm = emit_heatmaps(s.chart.gt);
  CHECK(hm.size() == kAllHeatmapCategories.size());
  CHECK(hm.at(HeatmapCategory::pie_center).mass() == 0.0);
  CHECK_THROWS_AS(emit_heatmaps(s.chart.gt, 100), Error);
}

TEST_CASE("pie center and circumference heatmaps") {
  GroundTruth gt;
  gt.pie = PieGroundTruth{{256, 256}, 100, {}};
  const HeatmapSet hm = emit_heatmaps(gt);
  const Heatmap& c = hm.at(HeatmapCategory::pie_center);
  int bx = 0, by = 0;
  for (int y = 0; y < 128; ++y) {
    for (int x = 0; x < 128; ++x) {
      if (c.at(x, y) > c.at(bx, by)) bx = x, by = y;
    }
  }
  CHECK(bx == 64);
  CHECK(by == 64);

  const Heatmap& ring = hm.at(HeatmapCategory::pie_circumference);
  double near = 0.0, total = 0.0;
  std::vector<double> radial(100, 0.0);
  for (int y = 0; y < 128; ++y) {
    for (int x = 0; x < 128; ++x) {
      const double d = std::hypot(x - 64.0, y - 64.0);
      total += ring.at(x, y);
      if (std::fabs(d - 25.0) <= 2.0) near += ring.at(x, y);
      radial[std::size_t(std::lround(d))] += ring.at(x, y) / std::max(1.0, d);
    }
  }
  CHECK(near / total >= 0.6);
  CHECK(std::max_element(radial.begin(), radial.end()) - radial.begin() == 25);
}

TEST_CASE("decoded heatmap peaks recover the fiducials") {
  for (ChartType t : kAllChartTypes) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      const SampledChart s = sample_chart(seed, t);
      const HeatmapSet hm = emit_heatmaps(s.chart.gt);
      for (const auto& [cat, points] : fiducials(s.chart.gt, 4.0)) {
        const auto peaks = local_maxima(hm.at(cat), 0.3f, 1);
        for (const Point& f : points) {
          // Fiducials nearly on top of another one share a peak.
          const bool crowded = std::count_if(points.begin(), points.end(), [&](const Point& o) {
                                 return distance(o, f) < 3.0;
                               }) > 1;
          if (crowded) continue;
          double best = 1e9;
          for (const Point& p : peaks) best = std::min(best, distance(refine_peak(hm.at(cat), p), f));
          CHECK(best <= 1.0);
        }
      }
    }
  }
}

TEST_CASE("rng draws are reproducible") {
  Rng a(17), b(17);
  for (int i = 0; i < 100; ++i) CHECK(a.bits() == b.bits());
  CHECK(mix_seed(1, 2) != mix_seed(2, 1));
  Rng c(3);
  for (int i = 0; i < 1000; ++i) {
    const int v = c.integer(-2, 5);
    CHECK(v >= -2);
    CHECK(v <= 5);
  }
}

}
