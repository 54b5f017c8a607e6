#include "charter/synth/canvas.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "charter/synth/rng.hpp"

namespace charter {

namespace {

#include "font_data.inc"

bool glyph_ink(FontSize size, char ch, int gx, int gy) {
  const int code = static_cast<unsigned char>(ch);
  if (code < 32 || code > 126) return false;
  if (size == FontSize::regular) {
    if (gx < 0 || gx >= regular_width || gy < 0 || gy >= regular_height) return false;
    return (regular_glyphs[code - 32][gy] >> gx) & 1;
  }
  if (gx < 0 || gx >= small_width || gy < 0 || gy >= small_height) return false;
  return (small_glyphs[code - 32][gy] >> gx) & 1;
}

bool text_ink(std::string_view text, FontSize size, int x, int y) {
  const int adv = font_advance(size);
  if (x < 0 || y < 0) return false;
  const std::size_t idx = static_cast<std::size_t>(x / adv);
  if (idx >= text.size()) return false;
  return glyph_ink(size, text[idx], x % adv, y);
}

int lo_pixel(double edge) { return static_cast<int>(std::ceil(edge)); }

bool texture_alternate(Texture t, int x, int y) {
  switch (t) {
    case Texture::stripes: return ((x + y) / 4) % 2 == 1;
    case Texture::checker: return ((x / 6) + (y / 6)) % 2 == 1;
    default: return false;
  }
}

}  // namespace

int font_advance(FontSize size) { return size == FontSize::regular ? regular_width + 1 : small_width + 1; }
int font_height(FontSize size) { return size == FontSize::regular ? regular_height : small_height; }

int text_width(std::string_view text, FontSize size) {
  if (text.empty()) return 0;
  return font_advance(size) * static_cast<int>(text.size()) - 1;
}

Color texture_shade(Color c) {
  const int lum = (c.r * 3 + c.g * 6 + c.b) / 10;
  auto shift = [&](int v) { return static_cast<std::uint8_t>(std::clamp(lum > 128 ? v - 60 : v + 60, 0, 255)); };
  return {shift(c.r), shift(c.g), shift(c.b)};
}

Canvas::Canvas(int width, int height, Color background) : raster_(width, height, background) {}

void Canvas::fill_rect(double x0, double y0, double x1, double y1, Color c, Texture texture) {
  const Color alt = texture_shade(c);
  const int xa = std::max(0, lo_pixel(x0)), xb = std::min(raster_.width(), lo_pixel(x1));
  const int ya = std::max(0, lo_pixel(y0)), yb = std::min(raster_.height(), lo_pixel(y1));
  for (int y = ya; y < yb; ++y) {
    for (int x = xa; x < xb; ++x) raster_.set(x, y, texture_alternate(texture, x, y) ? alt : c);
  }
}

void Canvas::fill_circle(const Point& center, double r, Color c) {
  const int xa = std::max(0, static_cast<int>(std::floor(center.x - r)));
  const int xb = std::min(raster_.width() - 1, static_cast<int>(std::ceil(center.x + r)));
  const int ya = std::max(0, static_cast<int>(std::floor(center.y - r)));
  const int yb = std::min(raster_.height() - 1, static_cast<int>(std::ceil(center.y + r)));
  for (int y = ya; y <= yb; ++y) {
    for (int x = xa; x <= xb; ++x) {
      const double dx = x - center.x, dy = y - center.y;
      if (dx * dx + dy * dy <= r * r) raster_.set(x, y, c);
    }
  }
}

void Canvas::fill_wedge(const Point& center, double r, double start_deg, double span_deg, Color c,
                        Texture texture) {
  const Color alt = texture_shade(c);
  const int xa = std::max(0, static_cast<int>(std::floor(center.x - r)));
  const int xb = std::min(raster_.width() - 1, static_cast<int>(std::ceil(center.x + r)));
  const int ya = std::max(0, static_cast<int>(std::floor(center.y - r)));
  const int yb = std::min(raster_.height() - 1, static_cast<int>(std::ceil(center.y + r)));
  for (int y = ya; y <= yb; ++y) {
    for (int x = xa; x <= xb; ++x) {
      const double dx = x - center.x, dy = y - center.y;
      if (dx * dx + dy * dy > r * r) continue;
      if (span_deg < 360.0 && !angle_in_span(polar_angle_deg(center, {double(x), double(y)}), start_deg, span_deg)) {
        continue;
      }
      raster_.set(x, y, texture_alternate(texture, x, y) ? alt : c);
    }
  }
}

void Canvas::stroke_segment(const Point& a, const Point& b, double width, Color c, double dash_on,
                            double dash_period, double dash_offset) {
  const double half = width / 2.0;
  const int xa = std::max(0, static_cast<int>(std::floor(std::min(a.x, b.x) - half)));
  const int xb = std::min(raster_.width() - 1, static_cast<int>(std::ceil(std::max(a.x, b.x) + half)));
  const int ya = std::max(0, static_cast<int>(std::floor(std::min(a.y, b.y) - half)));
  const int yb = std::min(raster_.height() - 1, static_cast<int>(std::ceil(std::max(a.y, b.y) + half)));
  const double len = std::hypot(b.x - a.x, b.y - a.y);
  for (int y = ya; y <= yb; ++y) {
    for (int x = xa; x <= xb; ++x) {
      const Point p{double(x), double(y)};
      if (segment_distance(p, a, b) > half) continue;
      if (dash_period > 0.0 && len > 0.0) {
        const double t = ((p.x - a.x) * (b.x - a.x) + (p.y - a.y) * (b.y - a.y)) / len;
        const double phase = std::fmod(std::clamp(t, 0.0, len) + dash_offset, dash_period);
        if (phase >= dash_on) continue;
      }
      raster_.set(x, y, c);
    }
  }
}

void Canvas::stroke_polyline(const std::vector<Point>& points, double width, Color c, bool dashed) {
  double offset = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (dashed) {
      stroke_segment(points[i], points[i + 1], width, c, 8.0, 14.0, offset);
      offset += distance(points[i], points[i + 1]);
    } else {
      stroke_segment(points[i], points[i + 1], width, c);
    }
  }
}

void Canvas::stroke_rect(double x0, double y0, double x1, double y1, Color c, bool dashed) {
  const double on = dashed ? 6.0 : 0.0, period = dashed ? 10.0 : 0.0;
  stroke_segment({x0, y0}, {x1, y0}, 1.0, c, on, period);
  stroke_segment({x1, y0}, {x1, y1}, 1.0, c, on, period);
  stroke_segment({x1, y1}, {x0, y1}, 1.0, c, on, period);
  stroke_segment({x0, y1}, {x0, y0}, 1.0, c, on, period);
}

void Canvas::texture_region(double x0, double y0, double x1, double y1, Color only_over, Texture texture,
                            std::uint64_t seed) {
  if (texture == Texture::none) return;
  const int xa = std::max(0, lo_pixel(x0)), xb = std::min(raster_.width(), lo_pixel(x1));
  const int ya = std::max(0, lo_pixel(y0)), yb = std::min(raster_.height(), lo_pixel(y1));
  const Color alt = texture_shade(only_over);
  for (int y = ya; y < yb; ++y) {
    for (int x = xa; x < xb; ++x) {
      if (raster_.at(x, y) != only_over) continue;
      if (texture == Texture::noise) {
        const std::uint64_t h = mix_seed(seed, std::uint64_t(y) * 4096 + std::uint64_t(x));
        const int delta = static_cast<int>(h % 41) - 20;
        auto ch = [&](std::uint8_t v) { return static_cast<std::uint8_t>(std::clamp(int(v) + delta, 0, 255)); };
        raster_.set(x, y, {ch(only_over.r), ch(only_over.g), ch(only_over.b)});
      } else if (texture_alternate(texture, x, y)) {
        raster_.set(x, y, alt);
      }
    }
  }
}

Quad text_quad(std::string_view text, int x, int y, FontSize size) {
  const double w = text_width(text, size) - 1, h = font_height(size) - 1;
  return {Point{double(x), double(y)}, Point{x + w, double(y)}, Point{x + w, y + h}, Point{double(x), y + h}};
}

Quad rotated_text_quad(std::string_view text, const Point& origin, double angle_deg) {
  const double t = angle_deg * kPi / 180.0;
  const double ux = std::cos(t), uy = -std::sin(t);
  const double vx = std::sin(t), vy = std::cos(t);
  const double w = text_width(text) - 1, h = font_height(FontSize::regular) - 1;
  return {Point{origin.x, origin.y}, Point{origin.x + w * ux, origin.y + w * uy},
          Point{origin.x + w * ux + h * vx, origin.y + w * uy + h * vy}, Point{origin.x + h * vx, origin.y + h * vy}};
}

Quad Canvas::draw_text(std::string_view text, int x, int y, Color c, FontSize size) {
  const int w = text_width(text, size), h = font_height(size);
  for (int gy = 0; gy < h; ++gy) {
    for (int gx = 0; gx < w; ++gx) {
      if (text_ink(text, size, gx, gy) && raster_.in_bounds(x + gx, y + gy)) raster_.set(x + gx, y + gy, c);
    }
  }
  return text_quad(text, x, y, size);
}

Quad Canvas::draw_text_rotated(std::string_view text, const Point& origin, double angle_deg, Color c) {
  const Quad q = rotated_text_quad(text, origin, angle_deg);
  const BBox b = quad_bounds(q);
  const double t = angle_deg * kPi / 180.0;
  const double ux = std::cos(t), uy = -std::sin(t);
  const double vx = std::sin(t), vy = std::cos(t);
  for (int y = static_cast<int>(std::floor(b.y_min)) - 1; y <= static_cast<int>(std::ceil(b.y_max)) + 1; ++y) {
    for (int x = static_cast<int>(std::floor(b.x_min)) - 1; x <= static_cast<int>(std::ceil(b.x_max)) + 1; ++x) {
      if (!raster_.in_bounds(x, y)) continue;
      const double dx = x - origin.x, dy = y - origin.y;
      const int gx = static_cast<int>(std::lround(dx * ux + dy * uy));
      const int gy = static_cast<int>(std::lround(dx * vx + dy * vy));
      if (text_ink(text, FontSize::regular, gx, gy)) raster_.set(x, y, c);
    }
  }
  return q;
}

}  // namespace charter
