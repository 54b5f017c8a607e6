#include "charter/oracle/detector.hpp"

#include <algorithm>
#include <cmath>

#include "charter/core/image_ops.hpp"
#include "charter/simd/kernels.hpp"
#include "charter/synth/heatmaps.hpp"
#include "charter/synth/rng.hpp"

namespace charter {

namespace {

bool is_element(BoxCategory c) {
  return c == BoxCategory::vbar || c == BoxCategory::hbar || c == BoxCategory::pie_sector;
}

double noisy_score(Rng& rng, double sigma) {
  if (sigma <= 0.0) return 1.0;
  return std::clamp(1.0 - std::fabs(rng.normal() * sigma), 0.0, 1.0);
}

void jitter(Rng& rng, BBox& b, double sigma) {
  if (sigma <= 0.0) return;
  b.x_min += rng.normal() * sigma;
  b.y_min += rng.normal() * sigma;
  b.x_max += rng.normal() * sigma;
  b.y_max += rng.normal() * sigma;
  if (b.x_min > b.x_max) std::swap(b.x_min, b.x_max);
  if (b.y_min > b.y_max) std::swap(b.y_min, b.y_max);
  if (b.x_max - b.x_min < 1.0) b.x_max = b.x_min + 1.0;
  if (b.y_max - b.y_min < 1.0) b.y_max = b.y_min + 1.0;
}

BBox text_box(const TextBox& t, BoxCategory c) {
  BBox b = quad_bounds(t.polygon);
  b.x_max += 1.0;
  b.y_max += 1.0;
  b.category = c;
  return b;
}

}  // namespace

std::vector<BBox> ground_truth_boxes(const GroundTruth& gt) {
  std::vector<BBox> out;
  out.push_back(gt.chart_region);
  if (gt.plot_area) out.push_back(*gt.plot_area);
  if (gt.legend_box) out.push_back(*gt.legend_box);
  for (const TextBox& t : gt.texts) {
    switch (t.role) {
      case TextRole::title: out.push_back(text_box(t, BoxCategory::title)); break;
      case TextRole::caption: out.push_back(text_box(t, BoxCategory::caption)); break;
      case TextRole::x_title: out.push_back(text_box(t, BoxCategory::x_label)); break;
      case TextRole::y_title: out.push_back(text_box(t, BoxCategory::y_label)); break;
      default: break;
    }
  }
  for (const BarGeometry& b : gt.bars) out.push_back(b.box);
  if (gt.pie) {
    for (const SectorGeometry& s : gt.pie->sectors) out.push_back(s.box);
  }
  return out;
}

DetectorOutput simulate_detector(const GroundTruth& gt, const NoiseConfig& noise, std::uint64_t seed) {
  return simulate_detector(gt, emit_heatmaps(gt), noise, seed);
}

DetectorOutput simulate_detector(const GroundTruth& gt, HeatmapSet heatmaps, const NoiseConfig& noise,
                                 std::uint64_t seed) {
  validate(noise);
  DetectorOutput det;
  det.width = gt.width;
  det.height = gt.height;
  Rng rng(mix_seed(seed, 0xde7ec7));

  const std::vector<BBox> truth = ground_truth_boxes(gt);
  for (BBox b : truth) {
    if (is_element(b.category) && noise.false_negative_rate > 0.0 && rng.bernoulli(noise.false_negative_rate)) continue;
    jitter(rng, b, noise.box_jitter);
    b.score = noisy_score(rng, noise.score_sigma);
    det.boxes.push_back(b);
  }

  if (noise.false_positive_rate > 0.0) {
    const BBox area = gt.plot_area ? *gt.plot_area : gt.chart_region;
    for (BoxCategory c : {BoxCategory::vbar, BoxCategory::hbar, BoxCategory::pie_sector}) {
      std::vector<BBox> templates;
      for (const BBox& b : truth) {
        if (b.category == c) templates.push_back(b);
      }
      int count = 0;
      for (std::size_t i = 0; i < templates.size(); ++i) count += rng.bernoulli(noise.false_positive_rate) ? 1 : 0;
      for (int k = 0; k < count; ++k) {
        const BBox& t = templates[static_cast<std::size_t>(rng.integer(0, static_cast<int>(templates.size()) - 1))];
        const double w = std::min(t.width(), area.width()), h = std::min(t.height(), area.height());
        const double x = rng.uniform(area.x_min, area.x_max - w);
        const double y = rng.uniform(area.y_min, area.y_max - h);
        det.boxes.push_back({x, y, x + w, y + h, c, rng.uniform()});
      }
    }
  }

  const auto& kern = simd::kernels();
  for (auto& [cat, h] : heatmaps) {
    Heatmap out = noise.heatmap_blur > 0.0 ? gaussian_blur(h, noise.heatmap_blur) : h;
    if (noise.heatmap_speckle > 0.0) {
      Rng hr(mix_seed(seed, 0x5be0 + static_cast<std::uint64_t>(cat)));
      auto values = out.mutable_values();
      std::vector<float> speckle(values.size());
      for (float& v : speckle) v = static_cast<float>(hr.uniform(-noise.heatmap_speckle, noise.heatmap_speckle));
      kern.add_clamp01(speckle.data(), values.data(), values.size());
    }
    det.heatmaps.emplace(cat, std::move(out));
  }
  return det;
}

}  // namespace charter
