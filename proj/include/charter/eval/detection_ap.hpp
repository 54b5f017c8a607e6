#pragma once

#include <span>
#include <vector>

#include "charter/core/geometry.hpp"

namespace charter {

/// Predictions and ground truth of one image, one category.
struct DetectionImage {
  std::vector<BBox> pred;
  std::vector<BBox> gt;
};

/// All-point interpolated average precision. Predictions are ranked by
/// score (ties keep input order); a prediction is a true positive when a
/// one-to-one assignment at IoU >= threshold exists that also keeps every
/// higher-ranked true positive. With no ground truth the result is 1 when
/// there are no predictions and 0 otherwise.
double detection_ap(std::span<const BBox> pred, std::span<const BBox> gt, double iou_threshold = 0.5);

/// Same, ranking predictions of all images together; matches never cross
/// images.
double detection_ap(std::span<const DetectionImage> images, double iou_threshold = 0.5);

/// Area under the interpolated precision envelope of a ranked TP/FP list.
double average_precision(const std::vector<bool>& ranked_tp, std::size_t gt_count);

}  // namespace charter
