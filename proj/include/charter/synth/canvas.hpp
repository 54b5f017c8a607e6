#pragma once

#include <string_view>

#include "charter/core/raster.hpp"
#include "charter/synth/chart_spec.hpp"
#include "charter/synth/ground_truth.hpp"

namespace charter {

enum class FontSize { regular, small };

/// Glyph cell advance and height of the bundled bitmap font.
int font_advance(FontSize size);
int font_height(FontSize size);
/// Width in pixels of `text`: advance * n - 1.
int text_width(std::string_view text, FontSize size = FontSize::regular);

/// Shade used for the alternate cells of a texture.
Color texture_shade(Color c);

/// Drawing surface over a Raster. Area fills paint the pixels whose centers
/// fall in half-open intervals, so float edges map to exact pixel sets.
class Canvas {
 public:
  Canvas(int width, int height, Color background);

  Raster& raster() { return raster_; }
  const Raster& raster() const { return raster_; }

  void fill_rect(double x0, double y0, double x1, double y1, Color c, Texture texture = Texture::none);
  /// Pixels within radius r (inclusive) of the center.
  void fill_circle(const Point& center, double r, Color c);
  /// Pixels within r of the center whose polar angle lies in [start, start + span).
  void fill_wedge(const Point& center, double r, double start_deg, double span_deg, Color c,
                  Texture texture = Texture::none);
  /// Pixels within width/2 of the segment. A positive dash period keeps only
  /// pixels whose projection falls in the first `dash_on` pixels of each period,
  /// measured from `dash_offset` along the segment.
  void stroke_segment(const Point& a, const Point& b, double width, Color c, double dash_on = 0.0,
                      double dash_period = 0.0, double dash_offset = 0.0);
  void stroke_polyline(const std::vector<Point>& points, double width, Color c, bool dashed);
  void stroke_rect(double x0, double y0, double x1, double y1, Color c, bool dashed);
  /// Applies a texture to pixels in the rectangle that still show `only_over`.
  void texture_region(double x0, double y0, double x1, double y1, Color only_over, Texture texture,
                      std::uint64_t seed);

  /// Draws text with its top-left glyph pixel at (x, y); returns the quad of
  /// extreme pixel centers.
  Quad draw_text(std::string_view text, int x, int y, Color c, FontSize size = FontSize::regular);
  /// Rotated text about `origin` (the unrotated top-left pixel center),
  /// counterclockwise by `angle_deg`, nearest-neighbor sampled.
  Quad draw_text_rotated(std::string_view text, const Point& origin, double angle_deg, Color c);

 private:
  Raster raster_;
};

/// Quad of text laid out at (x, y) without drawing.
Quad text_quad(std::string_view text, int x, int y, FontSize size = FontSize::regular);
/// Quad of rotated text without drawing.
Quad rotated_text_quad(std::string_view text, const Point& origin, double angle_deg);

}  // namespace charter
