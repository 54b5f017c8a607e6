#include "charter/core/png_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include "json.hpp"

#include "charter/core/error.hpp"

namespace charter {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw Error(ErrorCode::io, "cannot open " + path.string());
  return f;
}

[[noreturn]] void png_error_handler(png_structp, png_const_charp msg) {
  throw Error(ErrorCode::io, std::string("libpng: ") + msg);
}

void png_warning_handler(png_structp, png_const_charp) {}

// Writes rows of `bit_depth` samples; `color_type` is a PNG_COLOR_TYPE_*.
void write_rows(const std::filesystem::path& path, int width, int height, int bit_depth, int color_type,
                const std::vector<const png_byte*>& rows) {
  FilePtr f = open_file(path, "wb");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_handler, png_warning_handler);
  png_infop info = png_create_info_struct(png);
  try {
    png_init_io(png, f.get());
    png_set_IHDR(png, info, png_uint_32(width), png_uint_32(height), bit_depth, color_type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    for (const png_byte* row : rows) png_write_row(png, row);
    png_write_end(png, nullptr);
  } catch (...) {
    png_destroy_write_struct(&png, &info);
    throw;
  }
  png_destroy_write_struct(&png, &info);
}

struct Decoded {
  int width = 0;
  int height = 0;
  int bit_depth = 0;
  int channels = 0;
  std::vector<png_byte> data;
};

Decoded read_rows(const std::filesystem::path& path, bool want_gray16) {
  FilePtr f = open_file(path, "rb");
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, png_error_handler, png_warning_handler);
  png_infop info = png_create_info_struct(png);
  Decoded out;
  try {
    png_init_io(png, f.get());
    png_read_info(png, info);
    const int color_type = png_get_color_type(png, info);
    const int depth = png_get_bit_depth(png, info);
    if (want_gray16) {
      if (color_type != PNG_COLOR_TYPE_GRAY || depth != 16) {
        throw Error(ErrorCode::parse, path.string() + ": expected 16-bit grayscale PNG");
      }
      png_set_swap(png);  // little-endian host order for uint16 access
    } else {
      if (depth == 16) png_set_strip_16(png);
      if (color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
      if (color_type == PNG_COLOR_TYPE_GRAY || color_type == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_gray_to_rgb(png);
      if (color_type & PNG_COLOR_MASK_ALPHA) png_set_strip_alpha(png);
      if (depth < 8) png_set_expand(png);
    }
    png_read_update_info(png, info);
    out.width = int(png_get_image_width(png, info));
    out.height = int(png_get_image_height(png, info));
    out.bit_depth = png_get_bit_depth(png, info);
    out.channels = png_get_channels(png, info);
    const std::size_t stride = png_get_rowbytes(png, info);
    out.data.resize(stride * std::size_t(out.height));
    std::vector<png_bytep> rows(std::size_t(out.height));
    for (int y = 0; y < out.height; ++y) rows[std::size_t(y)] = out.data.data() + stride * std::size_t(y);
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
  } catch (...) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw;
  }
  png_destroy_read_struct(&png, &info, nullptr);
  return out;
}

std::filesystem::path sidecar_path(const std::filesystem::path& png_path) {
  std::filesystem::path p = png_path;
  p.replace_extension(".json");
  return p;
}

}  // namespace

void write_png(const std::filesystem::path& path, const Raster& raster) {
  std::vector<const png_byte*> rows(std::size_t(raster.height()));
  const auto bytes = raster.bytes();
  for (int y = 0; y < raster.height(); ++y) rows[std::size_t(y)] = bytes.data() + std::size_t(y) * raster.width() * 3;
  write_rows(path, raster.width(), raster.height(), 8, PNG_COLOR_TYPE_RGB, rows);
}

Raster read_png(const std::filesystem::path& path) {
  Decoded d = read_rows(path, false);
  if (d.channels != 3 || d.bit_depth != 8) throw Error(ErrorCode::parse, path.string() + ": unsupported PNG layout");
  return Raster(d.width, d.height, std::vector<std::uint8_t>(d.data.begin(), d.data.end()));
}

void write_heatmap(const std::filesystem::path& png_path, const Heatmap& heatmap) {
  const int w = heatmap.width();
  std::vector<std::uint8_t> buffer(std::size_t(w) * heatmap.height() * 2);
  const auto values = heatmap.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto q = std::uint16_t(std::lround(double(values[i]) * 65535.0));
    buffer[2 * i] = std::uint8_t(q >> 8);  // PNG samples are big-endian
    buffer[2 * i + 1] = std::uint8_t(q & 0xff);
  }
  std::vector<const png_byte*> rows(std::size_t(heatmap.height()));
  for (int y = 0; y < heatmap.height(); ++y) rows[std::size_t(y)] = buffer.data() + std::size_t(y) * w * 2;
  write_rows(png_path, w, heatmap.height(), 16, PNG_COLOR_TYPE_GRAY, rows);

  nlohmann::ordered_json side;
  side["category"] = std::string(to_string(heatmap.category()));
  side["width"] = w;
  side["height"] = heatmap.height();
  side["encoding"] = "png16";
  side["scale"] = 65535;
  std::ofstream os(sidecar_path(png_path));
  if (!os) throw Error(ErrorCode::io, "cannot write " + sidecar_path(png_path).string());
  os << side.dump(2) << '\n';
}

Heatmap read_heatmap(const std::filesystem::path& png_path) {
  std::ifstream is(sidecar_path(png_path));
  if (!is) throw Error(ErrorCode::io, "missing heatmap sidecar for " + png_path.string());
  nlohmann::json side;
  try {
    side = nlohmann::json::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse, png_path.string() + ": " + e.what());
  }
  const auto category = heatmap_category_from_string(side.value("category", ""));
  if (!category) throw Error(ErrorCode::parse, png_path.string() + ": unknown heatmap category");

  Decoded d = read_rows(png_path, true);
  if (d.width != side.value("width", -1) || d.height != side.value("height", -1)) {
    throw Error(ErrorCode::parse, png_path.string() + ": sidecar resolution mismatch");
  }
  std::vector<float> values(std::size_t(d.width) * d.height);
  const auto* samples = reinterpret_cast<const std::uint16_t*>(d.data.data());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = float(samples[i] / 65535.0);
  return Heatmap(d.width, d.height, *category, std::move(values));
}

}  // namespace charter
