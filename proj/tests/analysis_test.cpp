#include <algorithm>
#include <cmath>
#include <random>

#include "charter/analysis/analyze.hpp"
#include "charter/analysis/classify.hpp"
#include "charter/analysis/legend.hpp"
#include "charter/oracle/noise.hpp"
#include "charter/synth/heatmaps.hpp"
#include "charter/synth/sampler.hpp"
#include "doctest.h"

using namespace charter;

namespace {

OcrToken token(std::string text, double x, double y, double w, double h) {
  return {{Point{x, y}, Point{x + w, y}, Point{x + w, y + h}, Point{x, y + h}}, 0.0, std::move(text), false};
}

// Right-aligned y tick labels: value v centered at y.
OcrToken y_label(std::string text, double y, double right = 50.0) {
  const double w = 6.0 * double(text.size());
  return token(std::move(text), right - w, y - 5.0, w, 10.0);
}

DetectorOutput empty_detector() {
  DetectorOutput det;
  for (HeatmapCategory c : kAllHeatmapCategories) det.heatmaps.emplace(c, Heatmap(128, 128, c));
  return det;
}

void fill(Raster& r, const BBox& b, Color c) {
  for (int y = int(b.y_min); y < int(b.y_max); ++y) {
    for (int x = int(b.x_min); x < int(b.x_max); ++x) r.set(x, y, c);
  }
}

AnalysisResult run(const SampledChart& s, const std::string& noise = "clean", std::uint64_t seed = 1,
                   AnalysisDetails* details = nullptr, const AnalysisConfig& config = {}) {
  const NoiseConfig n = noise_preset(noise);
  return analyze(simulate_detector(s.chart.gt, n, seed), simulate_ocr(s.chart.gt, n, seed), s.chart.raster, config,
                 details);
}

// Bounding box of the wedge [a, a + span] of a circle, by dense sampling.
BBox wedge_bbox(Point c, double r, double a, double span) {
  BBox b{c.x, c.y, c.x, c.y, BoxCategory::pie_sector};
  for (int k = 0; k <= 2000; ++k) {
    const double t = (a + span * k / 2000.0) * kPi / 180.0;
    const double x = c.x + r * std::cos(t), y = c.y - r * std::sin(t);
    b.x_min = std::min(b.x_min, x);
    b.x_max = std::max(b.x_max, x);
    b.y_min = std::min(b.y_min, y);
    b.y_max = std::max(b.y_max, y);
  }
  return b;
}

double angle_error(double a, double b) {
  const double d = std::fabs(wrap_deg(a) - wrap_deg(b));
  return std::min(d, 360.0 - d);
}

}  // namespace

TEST_SUITE("analysis") {

TEST_CASE("classify picks the best chart region") {
  DetectorOutput det = empty_detector();
  det.boxes.push_back({0, 0, 500, 500, BoxCategory::bar_chart, 0.9});
  det.boxes.push_back({0, 0, 500, 500, BoxCategory::pie_chart, 0.6});
  for (int i = 0; i < 3; ++i) det.boxes.push_back({100.0 + 50 * i, 100, 130.0 + 50 * i, 400, BoxCategory::vbar, 0.9});
  det.boxes.push_back({100, 100, 400, 130, BoxCategory::hbar, 0.9});
  CHECK(classify_chart(det) == ChartType::vbar);

  for (int i = 0; i < 3; ++i) det.boxes.push_back({100, 150.0 + 50 * i, 400, 180.0 + 50 * i, BoxCategory::hbar, 0.9});
  CHECK(classify_chart(det) == ChartType::hbar);

  // Equal scores: the type with more heatmap mass wins.
  DetectorOutput tie = empty_detector();
  tie.boxes.push_back({0, 0, 500, 500, BoxCategory::bar_chart, 0.8});
  tie.boxes.push_back({0, 0, 500, 500, BoxCategory::scatter_chart, 0.8});
  splat(tie.heatmaps.at(HeatmapCategory::scatter_dot), {40, 40});
  CHECK(classify_chart(tie) == ChartType::scatter);

  DetectorOutput none = empty_detector();
  none.boxes.push_back({0, 0, 500, 500, BoxCategory::pie_chart, 0.4});
  try {
    classify_chart(none);
    FAIL("expected no_chart");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::no_chart);
  }
  const auto result = analyze(none, {}, Raster(512, 512));
  REQUIRE(std::holds_alternative<AnalysisFailure>(result));
  CHECK(std::get<AnalysisFailure>(result).code == ErrorCode::no_chart);
}

TEST_CASE("axis from right-aligned tick labels") {
  OcrOutput ocr;
  ocr.tokens = {y_label("0", 400), y_label("10", 300), y_label("20", 200)};
  const auto axis = recover_axis(ocr, Orientation::y);
  REQUIRE(axis);
  CHECK(axis->slope == doctest::Approx(-0.1));
  CHECK(axis->intercept == doctest::Approx(40.0));
  CHECK(axis->support.size() == 3);
  CHECK(axis->value_span() == doctest::Approx(20.0));

  // A year in the title neither joins nor breaks the fit.
  OcrOutput noisy = ocr;
  noisy.tokens.push_back(token("2019", 200, 20, 24, 10));
  noisy.tokens.push_back(token("Sales", 230, 20, 30, 10));
  const auto again = recover_axis(noisy, Orientation::y);
  REQUIRE(again);
  CHECK(again->slope == doctest::Approx(-0.1));
  CHECK(again->support.size() == 3);
  for (const AxisSupport& s : again->support) CHECK(s.token < 3);

  std::mt19937 g(7);
  for (int k = 0; k < 10; ++k) {
    OcrOutput shuffled = noisy;
    std::shuffle(shuffled.tokens.begin(), shuffled.tokens.end(), g);
    const auto s = recover_axis(shuffled, Orientation::y);
    REQUIRE(s);
    CHECK(s->slope == doctest::Approx(-0.1));
    CHECK(s->intercept == doctest::Approx(40.0));
  }

  OcrOutput two;
  two.tokens = {y_label("0", 400), y_label("10", 300)};
  CHECK_FALSE(recover_axis(two, Orientation::y));
}

TEST_CASE("axis rejects an inconsistent reading") {
  OcrOutput ocr;
  ocr.tokens = {y_label("0", 400), y_label("10", 300), y_label("20", 200), y_label("90", 100)};
  const auto axis = recover_axis(ocr, Orientation::y);
  REQUIRE(axis);
  CHECK(axis->slope == doctest::Approx(-0.1));
  CHECK(axis->support.size() == 3);
}

TEST_CASE("x axis from top-aligned labels") {
  OcrOutput ocr;
  for (int v : {0, 5, 10, 15}) ocr.tokens.push_back(token(std::to_string(v), 100.0 + 20 * v - 4, 420, 8, 10));
  const auto axis = recover_axis(ocr, Orientation::x);
  REQUIRE(axis);
  CHECK(axis->slope == doctest::Approx(0.05));
  CHECK(axis->value_at(100) == doctest::Approx(0.0));
}

TEST_CASE("bars: width filter, values and category labels") {
  Raster raster(512, 512);
  DetectorOutput det = empty_detector();
  const Color c{40, 90, 200};
  const double tops[] = {300, 200, 350};
  for (int i = 0; i < 3; ++i) {
    const BBox b{100.0 + 100 * i, tops[i], 140.0 + 100 * i, 400, BoxCategory::vbar, 0.95};
    det.boxes.push_back(b);
    fill(raster, b, c);
  }
  // A spurious wide proposal.
  det.boxes.push_back({120, 250, 260, 400, BoxCategory::vbar, 0.9});
  OcrOutput ocr;
  ocr.tokens = {token("A", 116, 405, 8, 10), token("B", 216, 405, 8, 10), token("C", 316, 405, 8, 10)};
  const AxisModel axis{Orientation::y, -0.1, 40.0, {}, {}};
  const auto bars = extract_bars(det, ChartType::vbar, axis, ocr, raster);
  REQUIRE(bars.size() == 3);
  CHECK(bars[0].value == doctest::Approx(10.0));
  CHECK(bars[1].value == doctest::Approx(20.0));
  CHECK(bars[2].value == doctest::Approx(5.0));
  CHECK(bars[0].label == "A");
  CHECK(bars[2].label == "C");
  CHECK(bars[1].label_source == Provenance::adjacent_text);
  CHECK(bars[0].color == c);

  // Without axis the number above each bar is read.
  OcrOutput values = ocr;
  values.tokens.push_back(token("10", 114, 287, 12, 10));
  values.tokens.push_back(token("20", 214, 187, 12, 10));
  const auto hidden = extract_bars(det, ChartType::vbar, std::nullopt, values, raster);
  REQUIRE(hidden.size() == 3);
  CHECK(hidden[0].value == 10.0);
  CHECK(hidden[0].value_source == Provenance::value_on_bar);
  CHECK(hidden[1].value == 20.0);
  CHECK(hidden[2].value_source == Provenance::geometry);
  CHECK(hidden[2].confidence == 0.0);

  // No labels anywhere: positional names.
  const auto bare = extract_bars(det, ChartType::vbar, axis, {}, raster);
  CHECK(bare[1].label == "bar_2");
  CHECK(bare[1].label_source == Provenance::positional);

  DetectorOutput empty = empty_detector();
  CHECK_THROWS_AS(extract_bars(empty, ChartType::vbar, axis, ocr, raster), Error);
  CHECK_THROWS_AS(extract_bars(det, ChartType::pie, axis, ocr, raster), Error);
}

TEST_CASE("legend matching tolerates color jitter") {
  Raster raster(512, 512);
  const BBox legend{300, 50, 420, 130, BoxCategory::legend};
  const Color colors[] = {{230, 25, 75}, {60, 180, 75}, {0, 130, 200}};
  const char* names[] = {"North", "South", "East"};
  OcrOutput ocr;
  for (int i = 0; i < 3; ++i) {
    const double y = 60.0 + 22 * i;
    fill(raster, {310, y, 322, y + 10}, colors[i]);
    ocr.tokens.push_back(token(names[i], 328, y, 30, 10));
  }
  const auto swatches = find_legend_swatches(legend, ocr, raster);
  REQUIRE(swatches.size() == 3);
  CHECK(swatches[1].color == colors[1]);

  std::mt19937 g(3);
  std::uniform_int_distribution<int> d(-10, 10);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Color> seen;
    for (const Color& c : colors) {
      auto j = [&](std::uint8_t v) { return std::uint8_t(std::clamp(int(v) + d(g), 0, 255)); };
      seen.push_back({j(c.r), j(c.g), j(c.b)});
    }
    std::reverse(seen.begin(), seen.end());
    const auto labels = match_legend(swatches, seen);
    CHECK(labels[0] == "East");
    CHECK(labels[1] == "South");
    CHECK(labels[2] == "North");
  }
  const auto far = match_legend(swatches, {Color{128, 128, 128}});
  CHECK_FALSE(far[0]);
}

TEST_CASE("fit_pies finds one ring and two separate rings") {
  GroundTruth gt;
  gt.pie = PieGroundTruth{{256, 256}, 100, {}};
  const HeatmapSet hm = emit_heatmaps(gt);
  const auto pies = fit_pies(hm.at(HeatmapCategory::pie_center), hm.at(HeatmapCategory::pie_circumference), {}, 4.0);
  REQUIRE(pies.size() == 1);
  CHECK(distance(pies[0].center, {256, 256}) <= 1.0);
  CHECK(std::fabs(pies[0].radius - 100) <= 1.0);

  Heatmap center(128, 128, HeatmapCategory::pie_center), ring(128, 128, HeatmapCategory::pie_circumference);
  splat(center, {32, 40});
  stroke_circle(ring, {32, 40}, 20);
  splat(center, {90, 85});
  stroke_circle(ring, {90, 85}, 28);
  const auto two = fit_pies(center, ring);
  REQUIRE(two.size() == 2);
  const PieGeometry& big = two[0].radius > two[1].radius ? two[0] : two[1];
  const PieGeometry& small = two[0].radius > two[1].radius ? two[1] : two[0];
  CHECK(distance(big.center, {90, 85}) <= 0.5);
  CHECK(std::fabs(big.radius - 28) <= 0.5);
  CHECK(distance(small.center, {32, 40}) <= 0.5);
  CHECK(std::fabs(small.radius - 20) <= 0.5);

  // A center peak without a ring is no pie.
  Heatmap lonely(128, 128, HeatmapCategory::pie_center);
  splat(lonely, {64, 64});
  CHECK(fit_pies(lonely, Heatmap(128, 128, HeatmapCategory::pie_circumference)).empty());
}

TEST_CASE("sectors from radial lines") {
  GroundTruth gt;
  gt.pie = PieGroundTruth{{256, 256}, 120, {{0, 180, {}, 0, {}}, {180, 108, {}, 1, {}}, {288, 72, {}, 2, {}}}};
  const HeatmapSet hm = emit_heatmaps(gt);
  const PieGeometry geom{{256, 256}, 120, {}, 1.0};
  const auto sectors = extract_sectors(geom, hm.at(HeatmapCategory::pie_radial), hm.at(HeatmapCategory::pie_corner), {}, 4.0);
  REQUIRE(sectors.size() == 3);
  double sum = 0.0;
  for (const SectorInfo& s : sectors) sum += s.span_deg;
  CHECK(sum == doctest::Approx(360.0));
  std::vector<double> starts;
  for (const SectorInfo& s : sectors) starts.push_back(s.start_deg);
  for (double want : {0.0, 180.0, 288.0}) {
    double best = 360.0;
    for (double s : starts) best = std::min(best, angle_error(s, want));
    CHECK(best <= 1.5);
  }
}

TEST_CASE("box-only pies recover quarter and uneven sectors") {
  const Point c{200, 220};
  const double r = 100;
  for (const std::vector<double>& spans : {std::vector<double>{90, 90, 90, 90}, std::vector<double>{150, 60, 100, 50},
                                           std::vector<double>{200, 160}}) {
    std::vector<BBox> boxes;
    double a = 30;
    std::vector<double> starts;
    for (double s : spans) {
      starts.push_back(a);
      boxes.push_back(wedge_bbox(c, r, a, s));
      a += s;
    }
    const auto pie = pie_from_boxes(boxes);
    REQUIRE(pie);
    CHECK(distance(pie->center, c) <= 1.5);
    CHECK(std::fabs(pie->radius - r) <= 1.5);
    REQUIRE(pie->sectors.size() == spans.size());
    double sum = 0.0;
    for (const SectorInfo& s : pie->sectors) sum += s.span_deg;
    CHECK(sum == doctest::Approx(360.0));
    for (double want : starts) {
      double best = 360.0;
      for (const SectorInfo& s : pie->sectors) best = std::min(best, angle_error(s.start_deg, want));
      CHECK(best <= 3.0);
    }
  }
  CHECK_FALSE(pie_from_boxes({}));
}

TEST_CASE("pie labels follow the drawn strategy") {
  const std::pair<std::array<double, 3>, Provenance> cases[] = {
      {{1, 0, 0}, Provenance::legend}, {{0, 1, 0}, Provenance::connector}, {{0, 0, 1}, Provenance::adjacent_text}};
  for (const auto& [weights, source] : cases) {
    SynthConfig c;
    c.pie_label_weights = weights;
    c.p_background_texture = 0.0;
    c.p_element_texture = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const SampledChart s = sample_chart(seed, ChartType::pie, c);
      const auto result = run(s);
      REQUIRE(std::holds_alternative<ChartTable>(result));
      const ChartTable& t = std::get<ChartTable>(result);
      REQUIRE(t.rows.size() == s.chart.gt.table.rows.size());
      // Extraction may start at a different sector, so rows are matched by label.
      for (const TableRow& want : s.chart.gt.table.rows) {
        const auto got = std::find_if(t.rows.begin(), t.rows.end(), [&](const TableRow& r) { return r.label == want.label; });
        REQUIRE(got != t.rows.end());
        if (source != Provenance::adjacent_text) CHECK(got->label_source == source);
        CHECK(std::fabs(got->value - want.value) <= 0.01);
      }
    }
  }
}

TEST_CASE("dashed and multi-color lines keep their series") {
  SynthConfig c;
  c.p_dashed_line = 1.0;
  c.line_series = {2, 3};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SampledChart s = sample_chart(seed, ChartType::line, c);
    const auto result = run(s);
    REQUIRE(std::holds_alternative<ChartTable>(result));
    const ChartTable& t = std::get<ChartTable>(result);
    CHECK(t.series.size() == s.chart.gt.table.series.size());
  }
}

TEST_CASE("scatter dots are recovered per series") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SampledChart s = sample_chart(seed, ChartType::scatter);
    const auto result = run(s);
    REQUIRE(std::holds_alternative<ChartTable>(result));
    const ChartTable& t = std::get<ChartTable>(result);
    std::size_t got = 0, want = 0;
    for (const auto& x : t.series) got += x.points.size();
    for (const auto& x : s.chart.gt.table.series) want += x.points.size();
    CHECK(got <= want);
    CHECK(double(got) >= 0.9 * double(want));
  }
}

TEST_CASE("analyze is deterministic and its table survives JSON") {
  for (ChartType type : kAllChartTypes) {
    const SampledChart s = sample_chart(21, type);
    const auto a = run(s, "mild", 3), b = run(s, "mild", 3);
    REQUIRE(a.index() == b.index());
    if (const auto* t = std::get_if<ChartTable>(&a)) {
      CHECK(*t == std::get<ChartTable>(b));
      CHECK(chart_table_from_json(to_json(*t)) == *t);
      CHECK(t->type == type);
    }
  }
}

TEST_CASE("taller bars read larger values") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SampledChart s = sample_chart(seed, ChartType::vbar);
    AnalysisDetails details;
    const auto result = run(s, "clean", 1, &details);
    REQUIRE(std::holds_alternative<ChartTable>(result));
    const auto& bars = details.bars;
    for (std::size_t i = 0; i < bars.size(); ++i) {
      for (std::size_t j = 0; j < bars.size(); ++j) {
        if (bars[i].box.y_min < bars[j].box.y_min - 0.5) CHECK(bars[i].value >= bars[j].value);
      }
    }
  }
}

TEST_CASE("analysis config validation and JSON") {
  AnalysisConfig c;
  c.pie_method = PieMethod::boxes;
  c.axis_tolerance = 2.5;
  CHECK(analysis_config_from_json(to_json(c)) == c);
  c.element_score_threshold = 1.5;
  CHECK_THROWS_AS(validate(c), Error);
  const auto s = sample_chart(0, ChartType::vbar);
  const auto r = run(s, "clean", 1, nullptr, c);
  REQUIRE(std::holds_alternative<AnalysisFailure>(r));
  CHECK(std::get<AnalysisFailure>(r).code == ErrorCode::invalid_config);
}

}
