#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops used by the heatmap and mask operations.
//
// Every variant must produce bit-identical results to the scalar reference:
// per-element accumulation order is fixed and the build disables FMA
// contraction, so the AVX2 path is a pure throughput change.

namespace charter::simd {

struct KernelTable {
  const char* name;

  /// out[i] = sum_k taps[k] * in[i + k], accumulated in k order.
  void (*convolve)(const float* in, const float* taps, std::size_t n_taps, float* out, std::size_t n);
  /// y[i] += a * x[i]
  void (*axpy)(float a, const float* x, float* y, std::size_t n);
  /// y[i] = max(y[i], x[i])
  void (*max_f32)(const float* x, float* y, std::size_t n);
  /// y[i] = max(y[i], x[i])
  void (*max_u8)(const std::uint8_t* x, std::uint8_t* y, std::size_t n);
  /// y[i] = min(y[i], x[i])
  void (*min_u8)(const std::uint8_t* x, std::uint8_t* y, std::size_t n);
  /// y[i] = clamp(y[i] + x[i], 0, 1)
  void (*add_clamp01)(const float* x, float* y, std::size_t n);
  /// mask[i] = x[i] >= t ? 1 : 0
  void (*threshold)(const float* x, float t, std::uint8_t* mask, std::size_t n);
};

const KernelTable& scalar_kernels();

/// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_kernels();

/// True when the running CPU can execute the AVX2 variant.
bool cpu_has_avx2();

/// The table selected for this process: AVX2 when compiled in and supported,
/// unless the environment variable CHARTER_SIMD=scalar forces the reference.
const KernelTable& kernels();

}  // namespace charter::simd
