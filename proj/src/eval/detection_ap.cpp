#include "charter/eval/detection_ap.hpp"

#include <algorithm>
#include <numeric>

namespace charter {

namespace {

// Incremental bipartite matching: one image, predictions added in rank order.
class Matcher {
 public:
  Matcher(const DetectionImage& image, double threshold) : image_(image), owner_(image.gt.size(), -1) {
    for (const BBox& p : image.pred) {
      std::vector<std::size_t> adj;
      for (std::size_t g = 0; g < image.gt.size(); ++g) {
        if (iou(p, image.gt[g]) >= threshold) adj.push_back(g);
      }
      edges_.push_back(std::move(adj));
    }
  }

  bool add(std::size_t pred) {
    std::vector<bool> seen(image_.gt.size());
    return augment(pred, seen);
  }

 private:
  bool augment(std::size_t pred, std::vector<bool>& seen) {
    for (std::size_t g : edges_[pred]) {
      if (seen[g]) continue;
      seen[g] = true;
      if (owner_[g] < 0 || augment(std::size_t(owner_[g]), seen)) {
        owner_[g] = int(pred);
        return true;
      }
    }
    return false;
  }

  const DetectionImage& image_;
  std::vector<std::vector<std::size_t>> edges_;
  std::vector<int> owner_;
};

}  // namespace

double average_precision(const std::vector<bool>& ranked_tp, std::size_t gt_count) {
  if (gt_count == 0) return ranked_tp.empty() ? 1.0 : 0.0;
  std::vector<double> precision, recall;
  std::size_t tp = 0;
  for (std::size_t k = 0; k < ranked_tp.size(); ++k) {
    tp += ranked_tp[k];
    precision.push_back(double(tp) / double(k + 1));
    recall.push_back(double(tp) / double(gt_count));
  }
  for (std::size_t k = precision.size(); k-- > 1;) precision[k - 1] = std::max(precision[k - 1], precision[k]);
  double ap = 0.0, prev = 0.0;
  for (std::size_t k = 0; k < recall.size(); ++k) {
    ap += (recall[k] - prev) * precision[k];
    prev = recall[k];
  }
  return ap;
}

double detection_ap(std::span<const DetectionImage> images, double iou_threshold) {
  struct Ranked {
    double score;
    std::size_t image, pred;
  };
  std::vector<Ranked> ranked;
  std::size_t gt_count = 0;
  std::vector<Matcher> matchers;
  for (std::size_t i = 0; i < images.size(); ++i) {
    gt_count += images[i].gt.size();
    matchers.emplace_back(images[i], iou_threshold);
    for (std::size_t p = 0; p < images[i].pred.size(); ++p) ranked.push_back({images[i].pred[p].score, i, p});
  }
  std::stable_sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) { return a.score > b.score; });
  std::vector<bool> tp;
  tp.reserve(ranked.size());
  for (const Ranked& r : ranked) tp.push_back(matchers[r.image].add(r.pred));
  return average_precision(tp, gt_count);
}

double detection_ap(std::span<const BBox> pred, std::span<const BBox> gt, double iou_threshold) {
  const DetectionImage image{{pred.begin(), pred.end()}, {gt.begin(), gt.end()}};
  return detection_ap(std::span<const DetectionImage>(&image, 1), iou_threshold);
}

}  // namespace charter
