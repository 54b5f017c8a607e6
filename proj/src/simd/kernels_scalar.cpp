#include <algorithm>

#include "charter/simd/kernels.hpp"

namespace charter::simd {

namespace {

void convolve_scalar(const float* in, const float* taps, std::size_t n_taps, float* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    float acc = 0.0f;
    for (std::size_t k = 0; k < n_taps; ++k) acc += taps[k] * in[i + k];
    out[i] = acc;
  }
}

void axpy_scalar(float a, const float* x, float* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void max_f32_scalar(const float* x, float* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::max(y[i], x[i]);
}

void max_u8_scalar(const std::uint8_t* x, std::uint8_t* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::max(y[i], x[i]);
}

void min_u8_scalar(const std::uint8_t* x, std::uint8_t* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::min(y[i], x[i]);
}

void add_clamp01_scalar(const float* x, float* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = std::clamp(y[i] + x[i], 0.0f, 1.0f);
}

void threshold_scalar(const float* x, float t, std::uint8_t* mask, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) mask[i] = x[i] >= t ? 1 : 0;
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{
      "scalar",       convolve_scalar, axpy_scalar,        max_f32_scalar,
      max_u8_scalar,  min_u8_scalar,   add_clamp01_scalar, threshold_scalar,
  };
  return table;
}

}  // namespace charter::simd
