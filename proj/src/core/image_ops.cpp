#include "charter/core/image_ops.hpp"

#include <algorithm>
#include <optional>
#include <cmath>
#include <limits>

#include "charter/core/error.hpp"
#include "charter/simd/kernels.hpp"

namespace charter {

namespace {

// Clipped windowed max along rows then columns. `fold` combines a shifted
// source row into an accumulator row; for floats and bytes alike.
template <typename T, typename Fold>
std::vector<T> separable_window(const std::vector<T>& src, int w, int h, int radius, Fold fold) {
  std::vector<T> rows(src);
  for (int y = 0; y < h; ++y) {
    const T* in = src.data() + std::size_t(y) * w;
    T* out = rows.data() + std::size_t(y) * w;
    for (int k = 1; k <= radius && k < w; ++k) {
      fold(in + k, out, std::size_t(w - k));  // neighbor to the right
      fold(in, out + k, std::size_t(w - k));  // neighbor to the left
    }
  }
  std::vector<T> out(rows);
  for (int y = 0; y < h; ++y) {
    T* dst = out.data() + std::size_t(y) * w;
    for (int k = 1; k <= radius; ++k) {
      if (y - k >= 0) fold(rows.data() + std::size_t(y - k) * w, dst, std::size_t(w));
      if (y + k < h) fold(rows.data() + std::size_t(y + k) * w, dst, std::size_t(w));
    }
  }
  return out;
}

std::vector<float> gaussian_taps(double sigma) {
  const int radius = std::max(1, int(std::ceil(3.0 * sigma)));
  std::vector<float> taps(std::size_t(2 * radius + 1));
  double sum = 0.0;
  for (int i = -radius; i <= radius; ++i) {
    const double v = std::exp(-(i * i) / (2.0 * sigma * sigma));
    taps[std::size_t(i + radius)] = float(v);
    sum += v;
  }
  for (float& t : taps) t = float(t / sum);
  return taps;
}

}  // namespace

Heatmap max_filter(const Heatmap& h, int radius) {
  const auto& k = simd::kernels();
  std::vector<float> src(h.values().begin(), h.values().end());
  auto out = separable_window(src, h.width(), h.height(), radius,
                              [&](const float* x, float* y, std::size_t n) { k.max_f32(x, y, n); });
  return Heatmap(h.width(), h.height(), h.category(), std::move(out));
}

std::vector<Point> local_maxima(const Heatmap& h, float threshold, int min_distance) {
  if (!(threshold > 0.0f && threshold <= 1.0f)) {
    throw Error(ErrorCode::invalid_argument, "local_maxima threshold must lie in (0,1]");
  }
  min_distance = std::max(min_distance, 0);
  const Heatmap windowed = max_filter(h, min_distance);
  std::vector<Point> candidates;
  for (int y = 0; y < h.height(); ++y) {
    for (int x = 0; x < h.width(); ++x) {
      const float v = h.at(x, y);
      if (v >= threshold && v == windowed.at(x, y)) candidates.push_back({double(x), double(y), v});
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const Point& a, const Point& b) { return a.intensity > b.intensity; });
  std::vector<Point> kept;
  for (const Point& c : candidates) {
    const bool clear = std::none_of(kept.begin(), kept.end(), [&](const Point& k) {
      return distance(k, c) < double(min_distance);
    });
    if (clear) kept.push_back(c);
  }
  return kept;
}

namespace {

// Offset of the vertex of the parabola through (-1, l), (0, c), (1, r).
std::optional<double> parabola_vertex(double l, double c, double r) {
  const double denom = l - 2.0 * c + r;
  if (denom >= 0.0) return std::nullopt;
  const double off = 0.5 * (l - r) / denom;
  if (std::abs(off) > 1.0) return std::nullopt;
  return off;
}

}  // namespace

Point refine_peak(const Heatmap& h, const Point& peak, int radius) {
  const int cx = int(std::lround(peak.x));
  const int cy = int(std::lround(peak.y));

  // Gaussian fit: a parabola through log intensities is exact for Gaussian blobs.
  auto logv = [&](int x, int y) -> std::optional<double> {
    if (!h.in_bounds(x, y) || h.at(x, y) <= 0.0f) return std::nullopt;
    return std::log(double(h.at(x, y)));
  };
  const auto c = logv(cx, cy), l = logv(cx - 1, cy), r = logv(cx + 1, cy), t = logv(cx, cy - 1), b = logv(cx, cy + 1);
  if (c && l && r && t && b) {
    const auto ox = parabola_vertex(*l, *c, *r);
    const auto oy = parabola_vertex(*t, *c, *b);
    if (ox && oy) return {cx + *ox, cy + *oy, peak.intensity};
  }

  double sw = 0.0, sx = 0.0, sy = 0.0;
  for (int y = cy - radius; y <= cy + radius; ++y) {
    for (int x = cx - radius; x <= cx + radius; ++x) {
      if (!h.in_bounds(x, y)) continue;
      const double v = h.at(x, y);
      sw += v;
      sx += v * x;
      sy += v * y;
    }
  }
  if (sw <= 0.0) return peak;
  return {sx / sw, sy / sw, peak.intensity};
}

Heatmap gaussian_blur(const Heatmap& h, double sigma) {
  if (sigma <= 0.0) return h;
  const auto& k = simd::kernels();
  const std::vector<float> taps = gaussian_taps(sigma);
  const int radius = int(taps.size() / 2);
  const int w = h.width();
  const int hh = h.height();
  auto src = h.values();

  // Horizontal pass over a zero-padded copy of each row.
  std::vector<float> horiz(std::size_t(w) * hh);
  std::vector<float> padded(std::size_t(w + 2 * radius), 0.0f);
  for (int y = 0; y < hh; ++y) {
    std::copy_n(src.data() + std::size_t(y) * w, w, padded.data() + radius);
    k.convolve(padded.data(), taps.data(), taps.size(), horiz.data() + std::size_t(y) * w, std::size_t(w));
  }
  // Vertical pass accumulates whole rows, tap order fixed per element.
  std::vector<float> out(std::size_t(w) * hh, 0.0f);
  for (int y = 0; y < hh; ++y) {
    float* dst = out.data() + std::size_t(y) * w;
    for (int t = 0; t < int(taps.size()); ++t) {
      const int sy = y + t - radius;
      if (sy < 0 || sy >= hh) continue;
      k.axpy(taps[std::size_t(t)], horiz.data() + std::size_t(sy) * w, dst, std::size_t(w));
    }
  }
  for (float& v : out) v = std::clamp(v, 0.0f, 1.0f);
  return Heatmap(w, hh, h.category(), std::move(out));
}

std::vector<Component> connected_components(const Mask& mask) {
  std::vector<Component> comps;
  std::vector<int> label(mask.cells.size(), -1);
  std::vector<PixelCoord> stack;
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      const std::size_t idx = std::size_t(y) * mask.width + x;
      if (!mask.cells[idx] || label[idx] >= 0) continue;
      Component comp;
      comp.x_min = comp.x_max = x;
      comp.y_min = comp.y_max = y;
      const int id = int(comps.size());
      label[idx] = id;
      stack.push_back({x, y});
      while (!stack.empty()) {
        const PixelCoord p = stack.back();
        stack.pop_back();
        comp.pixels.push_back(p);
        comp.x_min = std::min(comp.x_min, p.x);
        comp.x_max = std::max(comp.x_max, p.x);
        comp.y_min = std::min(comp.y_min, p.y);
        comp.y_max = std::max(comp.y_max, p.y);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = p.x + dx;
            const int ny = p.y + dy;
            if (!mask.in_bounds(nx, ny)) continue;
            const std::size_t nidx = std::size_t(ny) * mask.width + nx;
            if (mask.cells[nidx] && label[nidx] < 0) {
              label[nidx] = id;
              stack.push_back({nx, ny});
            }
          }
        }
      }
      std::sort(comp.pixels.begin(), comp.pixels.end(), [](const PixelCoord& a, const PixelCoord& b) {
        return a.y != b.y ? a.y < b.y : a.x < b.x;
      });
      comps.push_back(std::move(comp));
    }
  }
  return comps;
}

Mask morphology(const Mask& mask, MorphOp op, int radius) {
  if (radius < 1) throw Error(ErrorCode::invalid_argument, "morphology radius must be >= 1");
  const auto& k = simd::kernels();
  auto dilate = [&](const Mask& m) {
    Mask out(m.width, m.height);
    out.cells = separable_window(m.cells, m.width, m.height, radius,
                                 [&](const std::uint8_t* x, std::uint8_t* y, std::size_t n) { k.max_u8(x, y, n); });
    return out;
  };
  auto erode = [&](const Mask& m) {
    Mask out(m.width, m.height);
    out.cells = separable_window(m.cells, m.width, m.height, radius,
                                 [&](const std::uint8_t* x, std::uint8_t* y, std::size_t n) { k.min_u8(x, y, n); });
    return out;
  };
  Mask normalized = mask;
  for (auto& c : normalized.cells) c = c ? 1 : 0;
  switch (op) {
    case MorphOp::dilate: return dilate(normalized);
    case MorphOp::erode: return erode(normalized);
    case MorphOp::open: return dilate(erode(normalized));
    case MorphOp::close: return erode(dilate(normalized));
  }
  return normalized;
}

Mask threshold(const Heatmap& h, float t) {
  Mask m(h.width(), h.height());
  simd::kernels().threshold(h.values().data(), t, m.cells.data(), m.cells.size());
  return m;
}

}  // namespace charter
