#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "charter/analysis/chart_table.hpp"

namespace charter {

enum class ValueKind { bar_value, sector_angle, point_pair };
/// label: pairs by label similarity. positional: ignores labels for pairing;
/// rows pair in order (pie sectors cyclically, from the rotation where the
/// labels agree best) and series pair by proximity of their points.
enum class Pairing { label, positional };

std::string_view to_string(ValueKind kind);
std::string_view to_string(Pairing pairing);
std::optional<Pairing> pairing_from_string(std::string_view name);

ValueKind value_kind_for(ChartType type);

/// |pred - gt| <= epsilon * |gt|, or <= epsilon * range when gt is zero.
bool within_epsilon(double pred, double gt, double epsilon, double range);

struct MatchPolicy {
  /// Smallest label ratio a pair may have; absent accepts any label.
  std::optional<double> tau;
  double epsilon = 0.05;
  ValueKind value_kind = ValueKind::bar_value;
  Pairing pairing = Pairing::label;
};

/// Throws Error(invalid_config) unless tau is in [0, 1] and epsilon > 0.
void validate(const MatchPolicy& policy);

/// One paired row, or one paired series with its point counts.
struct MatchedPair {
  std::size_t gt = 0;
  std::size_t pred = 0;
  double label_ratio = 0.0;
  std::size_t points_matched = 0;
  std::size_t points_within = 0;
};

struct AccuracyResult {
  /// Rows, or points for series.
  std::size_t gt_count = 0;
  std::size_t matched = 0;
  std::size_t value_tp = 0;
  std::vector<MatchedPair> pairs;

  double accuracy() const { return gt_count == 0 ? 1.0 : double(value_tp) / double(gt_count); }
};

/// Number of scored elements: rows, or points of all series.
std::size_t element_count(const ChartTable& gt);

/// Greedy pairing by label ratio (ties by order), then the value test on
/// each pair. Throws Error(type_mismatch) when the tables or the value kind
/// disagree.
AccuracyResult value_accuracy(const ChartTable& pred, const ChartTable& gt, const MatchPolicy& policy);

}  // namespace charter
