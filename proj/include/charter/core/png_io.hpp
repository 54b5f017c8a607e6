#pragma once

#include <filesystem>

#include "charter/core/heatmap.hpp"
#include "charter/core/raster.hpp"

namespace charter {

void write_png(const std::filesystem::path& path, const Raster& raster);
Raster read_png(const std::filesystem::path& path);

/// Writes `<stem>.png` as 16-bit grayscale (value * 65535, rounded) plus a
/// `<stem>.json` sidecar naming the category and resolution.
void write_heatmap(const std::filesystem::path& png_path, const Heatmap& heatmap);
/// Reads a heatmap PNG; the category comes from the sidecar next to it.
Heatmap read_heatmap(const std::filesystem::path& png_path);

}  // namespace charter
