#include "charter/analysis/axis.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "charter/core/image_ops.hpp"
#include "charter/oracle/numeric.hpp"

namespace charter {

namespace {

// Tick labels read at least this many values; two readings are always
// collinear, so a pair of value labels could pass for an axis.
constexpr std::size_t kMinSupport = 3;

struct Reading {
  double edge = 0.0;
  double along = 0.0;
  double value = 0.0;
  std::size_t token = 0;
};

struct Fit {
  double slope = 0.0;
  double intercept = 0.0;
};

double residual_px(const Fit& f, const Reading& r) { return std::abs((r.value - f.intercept) / f.slope - r.along); }

std::optional<Fit> least_squares(const std::vector<Reading>& pts) {
  const double n = double(pts.size());
  double sx = 0.0, sy = 0.0;
  for (const Reading& r : pts) {
    sx += r.along;
    sy += r.value;
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (const Reading& r : pts) {
    sxx += (r.along - mx) * (r.along - mx);
    sxy += (r.along - mx) * (r.value - my);
  }
  if (sxx <= 0.0 || sxy == 0.0) return std::nullopt;
  const double slope = sxy / sxx;
  return Fit{slope, my - slope * mx};
}

bool direction_ok(Orientation o, double slope) { return o == Orientation::y ? slope < 0.0 : slope > 0.0; }

// Pair search for the largest consistent subset, then a least-squares refit
// that drops the worst reading until every residual is within tolerance.
std::optional<std::pair<Fit, std::vector<Reading>>> fit_bin(const std::vector<Reading>& bin, Orientation o,
                                                            double tol) {
  std::vector<Reading> best;
  double best_err = 0.0;
  for (std::size_t i = 0; i < bin.size(); ++i) {
    for (std::size_t j = i + 1; j < bin.size(); ++j) {
      const double dp = bin[j].along - bin[i].along;
      if (std::abs(dp) < 1.0 || bin[j].value == bin[i].value) continue;
      Fit f;
      f.slope = (bin[j].value - bin[i].value) / dp;
      f.intercept = bin[i].value - f.slope * bin[i].along;
      if (!direction_ok(o, f.slope)) continue;
      std::vector<Reading> in;
      double err = 0.0;
      for (const Reading& r : bin) {
        const double e = residual_px(f, r);
        if (e <= tol) {
          in.push_back(r);
          err += e;
        }
      }
      if (in.size() > best.size() || (in.size() == best.size() && err < best_err)) {
        best = std::move(in);
        best_err = err;
      }
    }
  }
  while (best.size() >= kMinSupport) {
    const auto f = least_squares(best);
    if (!f || !direction_ok(o, f->slope)) return std::nullopt;
    auto worst = std::max_element(best.begin(), best.end(), [&](const Reading& a, const Reading& b) {
      return residual_px(*f, a) < residual_px(*f, b);
    });
    if (residual_px(*f, *worst) <= tol) return std::pair{*f, best};
    best.erase(worst);
  }
  return std::nullopt;
}

void snap_to_ticks(std::vector<Reading>& readings, Orientation o, const Heatmap& ticks, const AnalysisConfig& config,
                   double scale) {
  std::vector<Point> peaks;
  for (const Point& p : local_maxima(ticks, config.peak_threshold, config.peak_min_distance)) {
    const Point q = refine_peak(ticks, p);
    peaks.push_back({q.x * scale, q.y * scale});
  }
  for (Reading& r : readings) {
    double best = scale;
    for (const Point& p : peaks) {
      const double along = o == Orientation::y ? p.y : p.x;
      const double ortho = o == Orientation::y ? p.x : p.y;
      if (std::abs(ortho - r.edge) > 40.0) continue;
      if (std::abs(along - r.along) <= best) {
        best = std::abs(along - r.along);
        r.along = along;
      }
    }
  }
}

}  // namespace

double AxisModel::value_span() const {
  if (support.empty()) return 0.0;
  auto [lo, hi] = std::minmax_element(support.begin(), support.end(),
                                      [](const AxisSupport& a, const AxisSupport& b) { return a.value < b.value; });
  return hi->value - lo->value;
}

std::optional<AxisModel> recover_axis(const OcrOutput& ocr, Orientation o, const Heatmap* ticks,
                                      const AnalysisConfig& config, double scale) {
  std::vector<Reading> readings;
  std::vector<double> heights;
  for (const NumericToken& n : numeric_tokens(ocr)) {
    if (ocr.tokens[n.index].angle != 0.0) continue;
    const double edge = o == Orientation::y ? n.bounds.x_max : n.bounds.y_min;
    const double along = o == Orientation::y ? n.anchor.y : n.anchor.x;
    readings.push_back({edge, along, n.value, n.index});
    heights.push_back(n.height);
  }
  if (readings.size() < kMinSupport) return std::nullopt;

  // Sorting makes the result independent of token order.
  std::sort(readings.begin(), readings.end(), [](const Reading& a, const Reading& b) {
    return std::tie(a.edge, a.along, a.value) < std::tie(b.edge, b.along, b.value);
  });
  std::nth_element(heights.begin(), heights.begin() + heights.size() / 2, heights.end());
  const double bin_width = config.axis_bin_factor * heights[heights.size() / 2];

  if (config.axis_snap_to_ticks && ticks) snap_to_ticks(readings, o, *ticks, config, scale);

  // Candidate bins: every window [edge_i, edge_i + bin_width], most populated first.
  std::vector<std::pair<std::size_t, std::size_t>> bins;
  for (std::size_t i = 0; i < readings.size(); ++i) {
    std::size_t j = i;
    while (j < readings.size() && readings[j].edge <= readings[i].edge + bin_width) ++j;
    if (j - i >= kMinSupport) bins.emplace_back(i, j);
  }
  std::stable_sort(bins.begin(), bins.end(),
                   [](const auto& a, const auto& b) { return a.second - a.first > b.second - b.first; });

  for (const auto& [lo, hi] : bins) {
    std::vector<Reading> bin(readings.begin() + std::ptrdiff_t(lo), readings.begin() + std::ptrdiff_t(hi));
    std::sort(bin.begin(), bin.end(), [](const Reading& a, const Reading& b) {
      return std::tie(a.along, a.value, a.edge) < std::tie(b.along, b.value, b.edge);
    });
    const auto fit = fit_bin(bin, o, config.axis_tolerance);
    if (!fit) continue;
    AxisModel m;
    m.orientation = o;
    m.slope = fit->first.slope;
    m.intercept = fit->first.intercept;
    for (const Reading& r : fit->second) m.support.push_back({r.along, r.value, r.token});
    return m;
  }
  return std::nullopt;
}

}  // namespace charter
