#include "charter/analysis/pies.hpp"

#include <algorithm>
#include <cmath>

#include "charter/core/image_ops.hpp"

namespace charter {

namespace {

// Half-width of the band around a radius that belongs to the ring, in cells.
constexpr double kRingBand = 8.0;
// Cells dimmer than this do not vote.
constexpr float kVoteFloor = 0.1f;

struct Vote {
  int bin = 0;
  double weight = 0.0;
};

// Radius histogram with linear binning between neighboring 1-cell bins.
Vote vote_radius(const Heatmap& ring, const Point& c, double r_min, double r_max) {
  std::vector<double> bins(std::size_t(std::ceil(r_max)) + 2, 0.0);
  for (int y = 0; y < ring.height(); ++y) {
    for (int x = 0; x < ring.width(); ++x) {
      const float v = ring.at(x, y);
      if (v < kVoteFloor) continue;
      const double d = std::hypot(x - c.x, y - c.y);
      if (d < r_min - 1.0 || d > r_max) continue;
      const auto b = std::size_t(d);
      const double f = d - double(b);
      bins[b] += v * (1.0 - f);
      bins[b + 1] += v * f;
    }
  }
  Vote best;
  for (std::size_t b = std::size_t(std::ceil(r_min)); b < bins.size(); ++b) {
    if (bins[b] > best.weight) best = {int(b), bins[b]};
  }
  return best;
}

// Ring radius as sum(v) / sum(v / d): unbiased for a ring whose cell count
// grows with d, unlike the plain intensity-weighted mean distance.
double refine_radius(const Heatmap& ring, const Point& c, double r0) {
  double sv = 0.0, svd = 0.0;
  for (int y = 0; y < ring.height(); ++y) {
    for (int x = 0; x < ring.width(); ++x) {
      const float v = ring.at(x, y);
      if (v < kVoteFloor) continue;
      const double d = std::hypot(x - c.x, y - c.y);
      if (d <= 0.0 || std::abs(d - r0) > kRingBand) continue;
      sv += v;
      svd += v / d;
    }
  }
  return svd > 0.0 ? sv / svd : r0;
}

Point ring_centroid(const Heatmap& ring, const Point& c, double r) {
  double sv = 0.0, sx = 0.0, sy = 0.0;
  for (int y = 0; y < ring.height(); ++y) {
    for (int x = 0; x < ring.width(); ++x) {
      const float v = ring.at(x, y);
      if (v < kVoteFloor) continue;
      if (std::abs(std::hypot(x - c.x, y - c.y) - r) > kRingBand) continue;
      sv += v;
      sx += v * x;
      sy += v * y;
    }
  }
  if (sv <= 0.0) return c;
  return {sx / sv, sy / sv};
}

}  // namespace

std::vector<PieGeometry> fit_pies(const Heatmap& center, const Heatmap& circumference, const AnalysisConfig& config,
                                  double scale) {
  const double r_min = config.pie_min_radius / scale;
  const double r_max = std::min(circumference.width(), circumference.height()) / 2.0;
  std::vector<PieGeometry> out;
  for (const Point& peak : local_maxima(center, config.peak_threshold, config.peak_min_distance)) {
    Point c = refine_peak(center, peak);
    Vote v = vote_radius(circumference, c, r_min, r_max);
    if (v.weight <= 0.0) continue;
    double r = refine_radius(circumference, c, v.bin);
    c = ring_centroid(circumference, c, r);
    v = vote_radius(circumference, c, r_min, r_max);
    if (v.weight <= 0.0) continue;
    r = refine_radius(circumference, c, v.bin);
    const double support = v.weight / (2.0 * kPi * v.bin);
    if (support < config.pie_vote_fraction) continue;

    PieGeometry g;
    g.center = {c.x * scale, c.y * scale};
    g.radius = r * scale;
    g.support = support;
    // Two peaks on one ring collapse to the same circle.
    const bool dup = std::any_of(out.begin(), out.end(), [&](const PieGeometry& o) {
      return distance(o.center, g.center) < 0.5 * std::min(o.radius, g.radius);
    });
    if (!dup) out.push_back(std::move(g));
  }
  std::stable_sort(out.begin(), out.end(), [](const PieGeometry& a, const PieGeometry& b) { return a.support > b.support; });
  return out;
}

namespace {

// Edges closer than this fraction of the radius to a tangent are ignored.
constexpr double kTangentFraction = 0.98;
// Crossings this close (degrees) are one boundary candidate.
constexpr double kCandidateMergeDeg = 1.5;

BBox wedge_box(const Point& c, double r, double start, double span) {
  BBox b{c.x, c.y, c.x, c.y};
  auto include = [&](double deg) {
    const double t = deg * kPi / 180.0;
    const Point p{c.x + r * std::cos(t), c.y - r * std::sin(t)};
    b.x_min = std::min(b.x_min, p.x);
    b.y_min = std::min(b.y_min, p.y);
    b.x_max = std::max(b.x_max, p.x);
    b.y_max = std::max(b.y_max, p.y);
  };
  include(start);
  include(start + span);
  for (double a : {0.0, 90.0, 180.0, 270.0}) {
    if (angle_in_span(a, start, span)) include(a);
  }
  return b;
}

std::vector<SectorInfo> wedges(const std::vector<double>& bounds) {
  if (bounds.size() < 2) return {{0.0, 360.0, {}}};
  std::vector<SectorInfo> out;
  for (std::size_t i = 0; i < bounds.size(); ++i) {
    out.push_back({bounds[i], ccw_span_deg(bounds[i], bounds[(i + 1) % bounds.size()]), {}});
  }
  return out;
}

// Unexplained proposals plus unexplained wedges, each weighted by 1 - IoU.
double mismatch(const Point& c, double r, const std::vector<double>& bounds, const std::vector<BBox>& boxes) {
  std::vector<BBox> wb;
  for (const SectorInfo& w : wedges(bounds)) wb.push_back(wedge_box(c, r, w.start_deg, w.span_deg));
  double cost = 0.0;
  for (const BBox& b : boxes) {
    double best = 0.0;
    for (const BBox& w : wb) best = std::max(best, iou(b, w));
    cost += 1.0 - best;
  }
  for (const BBox& w : wb) {
    double best = 0.0;
    for (const BBox& b : boxes) best = std::max(best, iou(b, w));
    cost += 1.0 - best;
  }
  return cost;
}

// Angles where a proposal's edge crosses the circle inside the edge's extent.
std::vector<double> edge_crossings(const Point& c, double r, const std::vector<BBox>& boxes) {
  std::vector<double> angles;
  const double tol = 1.5;
  auto cross = [&](double offset, bool vertical, const BBox& b) {
    if (std::abs(offset) > kTangentFraction * r) return;
    const double h = std::sqrt(r * r - offset * offset);
    for (double s : {-h, h}) {
      const Point p = vertical ? Point{c.x + offset, c.y + s} : Point{c.x + s, c.y + offset};
      const bool on_edge = vertical ? (p.y >= b.y_min - tol && p.y <= b.y_max + tol)
                                    : (p.x >= b.x_min - tol && p.x <= b.x_max + tol);
      if (on_edge) angles.push_back(polar_angle_deg(c, p));
    }
  };
  for (const BBox& b : boxes) {
    cross(b.x_min - c.x, true, b);
    cross(b.x_max - c.x, true, b);
    cross(b.y_min - c.y, false, b);
    cross(b.y_max - c.y, false, b);
  }
  std::sort(angles.begin(), angles.end());
  // Merge runs of close crossings, wrapping at 360.
  std::vector<std::vector<double>> groups;
  for (double a : angles) {
    if (!groups.empty() && a - groups.back().back() <= kCandidateMergeDeg) {
      groups.back().push_back(a);
    } else {
      groups.push_back({a});
    }
  }
  if (groups.size() > 1 && groups.front().front() + 360.0 - groups.back().back() <= kCandidateMergeDeg) {
    for (double a : groups.front()) groups.back().push_back(a + 360.0);
    groups.erase(groups.begin());
  }
  std::vector<double> out;
  for (const auto& g : groups) {
    double sum = 0.0;
    for (double a : g) sum += a;
    out.push_back(wrap_deg(sum / double(g.size())));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::optional<PieGeometry> pie_from_boxes(const std::vector<BBox>& sector_boxes, const AnalysisConfig& config) {
  std::vector<BBox> boxes;
  for (const BBox& b : sector_boxes) {
    if (b.score >= config.element_score_threshold && b.valid()) boxes.push_back(b);
  }
  if (boxes.empty()) return std::nullopt;
  BBox u = boxes.front();
  for (const BBox& b : boxes) {
    u.x_min = std::min(u.x_min, b.x_min);
    u.y_min = std::min(u.y_min, b.y_min);
    u.x_max = std::max(u.x_max, b.x_max);
    u.y_max = std::max(u.y_max, b.y_max);
  }
  PieGeometry g;
  g.center = u.center();
  g.radius = std::min(u.width(), u.height()) / 2.0;
  g.support = 1.0;

  // Every boundary ray ends where the circle meets an edge of a neighboring
  // proposal; drop crossings while that explains the proposals better.
  std::vector<double> bounds = edge_crossings(g.center, g.radius, boxes);
  double cost = mismatch(g.center, g.radius, bounds, boxes);
  while (bounds.size() > 1) {
    std::size_t drop = bounds.size();
    double best = cost;
    for (std::size_t i = 0; i < bounds.size(); ++i) {
      std::vector<double> trial = bounds;
      trial.erase(trial.begin() + std::ptrdiff_t(i));
      const double c = mismatch(g.center, g.radius, trial, boxes);
      if (c < best - 1e-9) {
        best = c;
        drop = i;
      }
    }
    if (drop == bounds.size()) break;
    bounds.erase(bounds.begin() + std::ptrdiff_t(drop));
    cost = best;
  }
  g.sectors = wedges(bounds);
  return g;
}

}  // namespace charter
