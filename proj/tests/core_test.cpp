#include <cmath>
#include <filesystem>
#include <random>
#include <set>

#include "charter/core/error.hpp"
#include "charter/core/geometry.hpp"
#include "charter/core/heatmap.hpp"
#include "charter/core/image_ops.hpp"
#include "charter/core/png_io.hpp"
#include "charter/core/raster.hpp"
#include "doctest.h"

using namespace charter;

namespace {

BBox box(double x0, double y0, double x1, double y1) { return {x0, y0, x1, y1}; }

Heatmap gaussian(int w, int h, std::vector<Point> centers, double sigma = 2.0) {
  Heatmap m(w, h, HeatmapCategory::pie_center);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double v = 0.0;
      for (const Point& c : centers) {
        const double d2 = (x - c.x) * (x - c.x) + (y - c.y) * (y - c.y);
        v = std::max(v, (c.intensity > 0 ? c.intensity : 1.0) * std::exp(-d2 / (2 * sigma * sigma)));
      }
      m.set(x, y, float(v));
    }
  }
  return m;
}

Mask random_mask(std::mt19937& rng, int w, int h, double p) {
  Mask m(w, h);
  std::bernoulli_distribution on(p);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) m.set(x, y, on(rng));
  }
  return m;
}

// Flood fill reference for 8-connectivity.
std::multiset<std::size_t> reference_areas(const Mask& m) {
  std::vector<bool> seen(m.cells.size());
  std::multiset<std::size_t> areas;
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      if (!m.at(x, y) || seen[std::size_t(y * m.width + x)]) continue;
      std::vector<PixelCoord> stack{{x, y}};
      seen[std::size_t(y * m.width + x)] = true;
      std::size_t area = 0;
      while (!stack.empty()) {
        const PixelCoord p = stack.back();
        stack.pop_back();
        ++area;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = p.x + dx, ny = p.y + dy;
            if (!m.in_bounds(nx, ny) || !m.at(nx, ny) || seen[std::size_t(ny * m.width + nx)]) continue;
            seen[std::size_t(ny * m.width + nx)] = true;
            stack.push_back({nx, ny});
          }
        }
      }
      areas.insert(area);
    }
  }
  return areas;
}

// Direct clipped-window dilate/erode.
Mask reference_morph(const Mask& m, bool dilate, int r) {
  Mask out(m.width, m.height);
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      bool any = false, all = true;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          if (!m.in_bounds(x + dx, y + dy)) continue;
          const bool v = m.at(x + dx, y + dy);
          any = any || v;
          all = all && v;
        }
      }
      out.set(x, y, dilate ? any : all);
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("iou of identical, disjoint and half-overlapping boxes") {
  CHECK(iou(box(0, 0, 10, 10), box(0, 0, 10, 10)) == doctest::Approx(1.0));
  CHECK(iou(box(0, 0, 10, 10), box(20, 20, 30, 30)) == 0.0);
  CHECK(iou(box(0, 0, 10, 10), box(5, 0, 15, 10)) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("iou agrees with unit-cell counting and is symmetric") {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coord(0, 20);
  for (int trial = 0; trial < 2000; ++trial) {
    int a[4], b[4];
    for (int* q : {a, b}) {
      int x0 = coord(rng), x1 = coord(rng), y0 = coord(rng), y1 = coord(rng);
      if (x0 == x1) ++x1;
      if (y0 == y1) ++y1;
      q[0] = std::min(x0, x1), q[2] = std::max(x0, x1), q[1] = std::min(y0, y1), q[3] = std::max(y0, y1);
    }
    int inter = 0, uni = 0;
    for (int y = 0; y < 22; ++y) {
      for (int x = 0; x < 22; ++x) {
        const bool in_a = x >= a[0] && x < a[2] && y >= a[1] && y < a[3];
        const bool in_b = x >= b[0] && x < b[2] && y >= b[1] && y < b[3];
        inter += in_a && in_b;
        uni += in_a || in_b;
      }
    }
    const BBox ba = box(a[0], a[1], a[2], a[3]), bb = box(b[0], b[1], b[2], b[3]);
    const double v = iou(ba, bb);
    CHECK(v == doctest::Approx(double(inter) / uni));
    CHECK(v == iou(bb, ba));
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("local_maxima on empty, single and double splats") {
  CHECK(local_maxima(Heatmap(128, 128, HeatmapCategory::pie_center), 0.3f, 4).empty());

  const auto one = local_maxima(gaussian(128, 128, {{64, 64}}), 0.3f, 4);
  REQUIRE(one.size() == 1);
  CHECK(one[0].x == 64);
  CHECK(one[0].y == 64);

  const auto two = local_maxima(gaussian(128, 128, {{30, 64, 0.7}, {70, 64, 0.9}}), 0.3f, 10);
  REQUIRE(two.size() == 2);
  CHECK(two[0].x == 70);
  CHECK(two[1].x == 30);
  CHECK(two[0].intensity > two[1].intensity);
}

TEST_CASE("local_maxima output satisfies the neighborhood predicate") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  for (int trial = 0; trial < 20; ++trial) {
    Heatmap h(40, 30, HeatmapCategory::line_knee);
    for (int y = 0; y < 30; ++y) {
      for (int x = 0; x < 40; ++x) h.set(x, y, u(rng));
    }
    const int md = 1 + trial % 4;
    const auto peaks = local_maxima(h, 0.5f, md);
    for (std::size_t i = 0; i < peaks.size(); ++i) {
      const int px = int(peaks[i].x), py = int(peaks[i].y);
      CHECK(h.at(px, py) >= 0.5f);
      for (int dy = -md; dy <= md; ++dy) {
        for (int dx = -md; dx <= md; ++dx) {
          if (h.in_bounds(px + dx, py + dy)) CHECK(h.at(px + dx, py + dy) <= h.at(px, py));
        }
      }
      if (i > 0) CHECK(peaks[i].intensity <= peaks[i - 1].intensity);
      for (std::size_t j = 0; j < i; ++j) CHECK(distance(peaks[i], peaks[j]) >= md);
    }
  }
}

TEST_CASE("local_maxima rejects a threshold outside (0, 1]") {
  Heatmap h(8, 8, HeatmapCategory::line_knee);
  CHECK_THROWS_AS(local_maxima(h, 0.0f, 2), Error);
  CHECK_THROWS_AS(local_maxima(h, 1.5f, 2), Error);
}

TEST_CASE("refine_peak recovers a sub-cell Gaussian center") {
  const Heatmap h = gaussian(64, 64, {{30.3, 40.7}});
  const auto peaks = local_maxima(h, 0.3f, 4);
  REQUIRE(peaks.size() == 1);
  const Point p = refine_peak(h, peaks[0]);
  CHECK(p.x == doctest::Approx(30.3).epsilon(0.002));
  CHECK(p.y == doctest::Approx(40.7).epsilon(0.002));
}

TEST_CASE("connected components of simple masks") {
  CHECK(connected_components(Mask(10, 10)).empty());

  Mask blocks(12, 6);
  for (int y = 1; y < 4; ++y) {
    for (int x = 1; x < 4; ++x) blocks.set(x, y), blocks.set(x + 6, y);
  }
  const auto two = connected_components(blocks);
  REQUIRE(two.size() == 2);
  CHECK(two[0].area() == 9);
  CHECK(two[1].area() == 9);
  CHECK(two[1].x_min == 7);
  CHECK(two[1].x_max == 9);

  Mask diagonal(5, 5);
  diagonal.set(0, 0);
  diagonal.set(1, 1);
  diagonal.set(2, 2);
  diagonal.set(2, 3);
  CHECK(connected_components(diagonal).size() == 1);
}

TEST_CASE("connected components partition the foreground") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Mask m = random_mask(rng, 31, 23, 0.1 + 0.02 * trial);
    const auto comps = connected_components(m);
    Mask covered(m.width, m.height);
    std::multiset<std::size_t> areas;
    for (const Component& c : comps) {
      areas.insert(c.area());
      for (const PixelCoord& p : c.pixels) {
        CHECK_FALSE(covered.at(p.x, p.y));
        covered.set(p.x, p.y);
        CHECK(p.x >= c.x_min);
        CHECK(p.x <= c.x_max);
        CHECK(p.y >= c.y_min);
        CHECK(p.y <= c.y_max);
      }
    }
    CHECK(covered == m);
    CHECK(areas == reference_areas(m));
  }
}

TEST_CASE("morphology basics") {
  Mask dot(9, 9);
  dot.set(4, 4);
  CHECK(morphology(dot, MorphOp::open, 1).count() == 0);
  CHECK(morphology(Mask(9, 9), MorphOp::dilate, 2).count() == 0);
  CHECK_THROWS_AS(morphology(dot, MorphOp::dilate, 0), Error);

  Mask dashed(30, 5);
  for (int x = 0; x < 30; ++x) {
    if (x % 4 != 3) dashed.set(x, 2);
  }
  CHECK(connected_components(dashed).size() > 1);
  CHECK(connected_components(morphology(dashed, MorphOp::close, 1)).size() == 1);
}

TEST_CASE("morphology matches direct window evaluation and open/close are idempotent") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const Mask m = random_mask(rng, 25, 19, 0.3);
    const int r = 1 + trial % 3;
    CHECK(morphology(m, MorphOp::dilate, r) == reference_morph(m, true, r));
    CHECK(morphology(m, MorphOp::erode, r) == reference_morph(m, false, r));
    const Mask o = morphology(m, MorphOp::open, r), c = morphology(m, MorphOp::close, r);
    CHECK(morphology(o, MorphOp::open, r) == o);
    CHECK(morphology(c, MorphOp::close, r) == c);
  }
}

TEST_CASE("threshold and blur") {
  const Heatmap h = gaussian(32, 32, {{16, 16}});
  const Mask m = threshold(h, 0.5f);
  CHECK(m.at(16, 16));
  CHECK_FALSE(m.at(0, 0));
  CHECK(gaussian_blur(h, 0.0) == h);
  const Heatmap b = gaussian_blur(h, 1.0);
  CHECK(b.mass() == doctest::Approx(h.mass()).epsilon(0.01));
  CHECK(b.max_value() < h.max_value());
}

TEST_CASE("type invariants are enforced") {
  CHECK_THROWS_AS(Raster(0, 5), Error);
  CHECK_THROWS_AS(Raster(2, 2, std::vector<std::uint8_t>(5)), Error);
  CHECK_THROWS_AS(Heatmap(2, 2, HeatmapCategory::line, {0.f, 0.5f, 2.f, 0.f}), Error);
  CHECK_THROWS_AS(Polyline({{1, 1}}), Error);
  CHECK_THROWS_AS(Polyline({{1, 1}, {1, 1}, {2, 2}}), Error);
  CHECK_NOTHROW(Polyline({{1, 1}, {2, 2}}));
  CHECK(box(0, 0, 1, 1).valid());
  CHECK_FALSE(box(1, 0, 1, 1).valid());
}

TEST_CASE("angles are counterclockwise on screen") {
  const Point c{10, 10};
  CHECK(polar_angle_deg(c, {20, 10}) == doctest::Approx(0.0));
  CHECK(polar_angle_deg(c, {10, 0}) == doctest::Approx(90.0));
  CHECK(polar_angle_deg(c, {0, 10}) == doctest::Approx(180.0));
  CHECK(wrap_deg(-30) == doctest::Approx(330.0));
  CHECK(ccw_span_deg(350, 10) == doctest::Approx(20.0));
  CHECK(angle_in_span(5, 350, 20));
  CHECK_FALSE(angle_in_span(20, 350, 20));
}

TEST_CASE("png round trips") {
  const auto dir = std::filesystem::temp_directory_path() / "charter_core_png";
  std::filesystem::create_directories(dir);
  Raster r(7, 5, Color{10, 20, 30});
  r.set(3, 2, {255, 0, 128});
  write_png(dir / "r.png", r);
  CHECK(read_png(dir / "r.png") == r);

  Heatmap h(9, 9, HeatmapCategory::scatter_dot);
  h.set(4, 4, 1.0f);
  h.set(2, 3, 0.123456f);
  write_heatmap(dir / "h.png", h);
  const Heatmap back = read_heatmap(dir / "h.png");
  CHECK(back.category() == HeatmapCategory::scatter_dot);
  CHECK(back.at(4, 4) == 1.0f);
  CHECK(std::abs(back.at(2, 3) - 0.123456f) <= 0.5f / 65535.0f + 1e-7f);
  CHECK_THROWS_AS(read_png(dir / "missing.png"), Error);
}

}
