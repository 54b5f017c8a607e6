#include "charter/eval/accuracy.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "charter/core/error.hpp"
#include "charter/eval/levenshtein.hpp"

namespace charter {

std::string_view to_string(ValueKind kind) {
  switch (kind) {
    case ValueKind::bar_value: return "bar_value";
    case ValueKind::sector_angle: return "sector_angle";
    case ValueKind::point_pair: return "point_pair";
  }
  return "?";
}

std::string_view to_string(Pairing pairing) { return pairing == Pairing::label ? "label" : "positional"; }

std::optional<Pairing> pairing_from_string(std::string_view name) {
  if (name == "label") return Pairing::label;
  if (name == "positional") return Pairing::positional;
  return std::nullopt;
}

ValueKind value_kind_for(ChartType type) {
  if (type == ChartType::pie) return ValueKind::sector_angle;
  return is_xy(type) ? ValueKind::point_pair : ValueKind::bar_value;
}

bool within_epsilon(double pred, double gt, double epsilon, double range) {
  if (!std::isfinite(pred)) return false;
  if (gt == 0.0) return std::fabs(pred) <= epsilon * std::fabs(range);
  return std::fabs((gt - pred) / gt) <= epsilon;
}

void validate(const MatchPolicy& policy) {
  if (policy.tau && !(*policy.tau >= 0.0 && *policy.tau <= 1.0)) {
    throw Error(ErrorCode::invalid_config, "tau must lie in [0, 1]");
  }
  if (!(policy.epsilon > 0.0)) throw Error(ErrorCode::invalid_config, "epsilon must be positive");
}

std::size_t element_count(const ChartTable& gt) {
  if (!is_xy(gt.type)) return gt.rows.size();
  std::size_t n = 0;
  for (const TableSeries& s : gt.series) n += s.points.size();
  return n;
}

namespace {

struct Candidate {
  std::size_t gt;
  std::size_t pred;
  double ratio;
};

template <typename Labels>
std::vector<Candidate> pair_elements(const Labels& gt, const Labels& pred, const MatchPolicy& policy, bool cyclic) {
  const std::size_t g = gt.size(), p = pred.size();
  std::vector<Candidate> all;
  if (g == 0 || p == 0) return all;
  auto accepted = [&](double r) { return !policy.tau || r >= *policy.tau; };

  if (policy.pairing == Pairing::positional) {
    const std::size_t n = std::min(g, p);
    std::size_t best_shift = 0;
    if (cyclic) {
      double best = -1.0;
      for (std::size_t k = 0; k < p; ++k) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += levenshtein_ratio(gt[i].label, pred[(i + k) % p].label);
        if (sum > best) {
          best = sum;
          best_shift = k;
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + best_shift) % p;
      const double r = levenshtein_ratio(gt[i].label, pred[j].label);
      if (accepted(r)) all.push_back({i, j, r});
    }
    return all;
  }

  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      const double r = levenshtein_ratio(gt[i].label, pred[j].label);
      if (accepted(r)) all.push_back({i, j, r});
    }
  }
  // Higher ratio first, then pairs closer in order. Raising tau only removes
  // a suffix of this order, so stricter thresholds never gain matches.
  std::sort(all.begin(), all.end(), [](const Candidate& a, const Candidate& b) {
    const auto gap = [](const Candidate& c) { return c.gt > c.pred ? c.gt - c.pred : c.pred - c.gt; };
    return std::make_tuple(-a.ratio, gap(a), a.gt, a.pred) < std::make_tuple(-b.ratio, gap(b), b.gt, b.pred);
  });
  std::vector<bool> gt_used(g), pred_used(p);
  std::vector<Candidate> chosen;
  for (const Candidate& c : all) {
    if (gt_used[c.gt] || pred_used[c.pred]) continue;
    gt_used[c.gt] = pred_used[c.pred] = true;
    chosen.push_back(c);
  }
  return chosen;
}

double value_range(const ChartTable& gt) {
  if (gt.y_range && gt.y_range->span() != 0.0) return std::fabs(gt.y_range->span());
  double m = 0.0;
  for (const TableRow& r : gt.rows) m = std::max(m, std::fabs(r.value));
  return m > 0.0 ? m : 1.0;
}

AxisRange extent(const ChartTable& gt, bool x) {
  const auto& declared = x ? gt.x_range : gt.y_range;
  if (declared && declared->span() != 0.0) return *declared;
  AxisRange r{INFINITY, -INFINITY};
  for (const TableSeries& s : gt.series) {
    for (const DataPoint& q : s.points) {
      r.min = std::min(r.min, x ? q.x : q.y);
      r.max = std::max(r.max, x ? q.x : q.y);
    }
  }
  if (!(r.max > r.min)) return {0.0, 1.0};
  return r;
}

// Label-blind series pairing: greedy by the mean distance from each ground
// truth point to the nearest predicted point, then filtered by tau.
std::vector<Candidate> pair_series_by_position(const ChartTable& gt, const ChartTable& pred, double xr, double yr,
                                               const MatchPolicy& policy) {
  struct Cost {
    double cost;
    std::size_t g, p;
  };
  std::vector<Cost> costs;
  for (std::size_t i = 0; i < gt.series.size(); ++i) {
    for (std::size_t j = 0; j < pred.series.size(); ++j) {
      const auto& a = gt.series[i].points;
      const auto& b = pred.series[j].points;
      if (a.empty() || b.empty()) continue;
      double sum = 0.0;
      for (const DataPoint& q : a) {
        double best = INFINITY;
        for (const DataPoint& r : b) best = std::min(best, std::hypot((r.x - q.x) / xr, (r.y - q.y) / yr));
        sum += best;
      }
      const double c = sum / double(a.size());
      if (std::isfinite(c)) costs.push_back({c, i, j});
    }
  }
  std::sort(costs.begin(), costs.end(),
            [](const Cost& a, const Cost& b) { return std::tie(a.cost, a.g, a.p) < std::tie(b.cost, b.g, b.p); });
  std::vector<bool> gt_used(gt.series.size()), pred_used(pred.series.size());
  std::vector<Candidate> out;
  for (const Cost& c : costs) {
    if (gt_used[c.g] || pred_used[c.p]) continue;
    gt_used[c.g] = pred_used[c.p] = true;
    const double r = levenshtein_ratio(gt.series[c.g].label, pred.series[c.p].label);
    if (!policy.tau || r >= *policy.tau) out.push_back({c.g, c.p, r});
  }
  return out;
}

// One-to-one greedy pairing of points by distance in axis-normalized units.
void match_points(const TableSeries& gt, const TableSeries& pred, double xr, double yr, double epsilon,
                  MatchedPair& out) {
  struct Near {
    double d;
    std::size_t g, p;
  };
  std::vector<Near> near;
  near.reserve(gt.points.size() * pred.points.size());
  for (std::size_t i = 0; i < gt.points.size(); ++i) {
    for (std::size_t j = 0; j < pred.points.size(); ++j) {
      const double dx = (pred.points[j].x - gt.points[i].x) / xr;
      const double dy = (pred.points[j].y - gt.points[i].y) / yr;
      const double d = std::hypot(dx, dy);
      if (std::isfinite(d)) near.push_back({d, i, j});
    }
  }
  std::sort(near.begin(), near.end(),
            [](const Near& a, const Near& b) { return std::tie(a.d, a.g, a.p) < std::tie(b.d, b.g, b.p); });
  std::vector<bool> gt_used(gt.points.size()), pred_used(pred.points.size());
  for (const Near& n : near) {
    if (gt_used[n.g] || pred_used[n.p]) continue;
    gt_used[n.g] = pred_used[n.p] = true;
    ++out.points_matched;
    const DataPoint& a = gt.points[n.g];
    const DataPoint& b = pred.points[n.p];
    if (std::fabs(a.x - b.x) <= epsilon * xr && std::fabs(a.y - b.y) <= epsilon * yr) ++out.points_within;
  }
}

}  // namespace

AccuracyResult value_accuracy(const ChartTable& pred, const ChartTable& gt, const MatchPolicy& policy) {
  validate(policy);
  if (pred.type != gt.type) {
    throw Error(ErrorCode::type_mismatch,
                std::string("predicted ") + std::string(to_string(pred.type)) + " for a " +
                    std::string(to_string(gt.type)) + " chart");
  }
  if (policy.value_kind != value_kind_for(gt.type)) {
    throw Error(ErrorCode::type_mismatch,
                std::string(to_string(policy.value_kind)) + " does not apply to " + std::string(to_string(gt.type)));
  }

  AccuracyResult result;
  result.gt_count = element_count(gt);

  if (policy.value_kind == ValueKind::point_pair) {
    const AxisRange xa = extent(gt, true), ya = extent(gt, false);
    const double xr = std::fabs(xa.span()), yr = std::fabs(ya.span());
    const auto pairs = policy.pairing == Pairing::positional ? pair_series_by_position(gt, pred, xr, yr, policy)
                                                             : pair_elements(gt.series, pred.series, policy, false);
    for (const Candidate& c : pairs) {
      MatchedPair m{c.gt, c.pred, c.ratio, 0, 0};
      match_points(gt.series[c.gt], pred.series[c.pred], xr, yr, policy.epsilon, m);
      result.matched += m.points_matched;
      result.value_tp += m.points_within;
      result.pairs.push_back(m);
    }
    return result;
  }

  const bool pie = policy.value_kind == ValueKind::sector_angle;
  const double range = pie ? 360.0 : value_range(gt);
  const double scale = pie ? 360.0 : 1.0;
  for (const Candidate& c : pair_elements(gt.rows, pred.rows, policy, pie)) {
    const bool ok = within_epsilon(pred.rows[c.pred].value * scale, gt.rows[c.gt].value * scale, policy.epsilon, range);
    result.pairs.push_back({c.gt, c.pred, c.ratio, 1, ok ? 1u : 0u});
    ++result.matched;
    result.value_tp += ok;
  }
  return result;
}

}  // namespace charter
