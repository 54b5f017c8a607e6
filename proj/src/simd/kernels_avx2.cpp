#include <immintrin.h>

#include <algorithm>

#include "charter/simd/kernels.hpp"

namespace charter::simd {

namespace {

void convolve_avx2(const float* in, const float* taps, std::size_t n_taps, float* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 acc = _mm256_setzero_ps();
    for (std::size_t k = 0; k < n_taps; ++k) {
      const __m256 w = _mm256_set1_ps(taps[k]);
      acc = _mm256_add_ps(acc, _mm256_mul_ps(w, _mm256_loadu_ps(in + i + k)));
    }
    _mm256_storeu_ps(out + i, acc);
  }
  for (; i < n; ++i) {
    float acc = 0.0f;
    for (std::size_t k = 0; k < n_taps; ++k) acc += taps[k] * in[i + k];
    out[i] = acc;
  }
}

void axpy_avx2(float a, const float* x, float* y, std::size_t n) {
  const __m256 va = _mm256_set1_ps(a);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 prod = _mm256_mul_ps(va, _mm256_loadu_ps(x + i));
    _mm256_storeu_ps(y + i, _mm256_add_ps(_mm256_loadu_ps(y + i), prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void max_f32_avx2(const float* x, float* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    // Operand order matches std::max(y, x): y is kept when equal.
    _mm256_storeu_ps(y + i, _mm256_max_ps(_mm256_loadu_ps(x + i), _mm256_loadu_ps(y + i)));
  }
  for (; i < n; ++i) y[i] = std::max(y[i], x[i]);
}

void max_u8_avx2(const std::uint8_t* x, std::uint8_t* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), _mm256_max_epu8(a, b));
  }
  for (; i < n; ++i) y[i] = std::max(y[i], x[i]);
}

void min_u8_avx2(const std::uint8_t* x, std::uint8_t* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 32 <= n; i += 32) {
    const __m256i a = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(x + i));
    const __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(y + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(y + i), _mm256_min_epu8(a, b));
  }
  for (; i < n; ++i) y[i] = std::min(y[i], x[i]);
}

void add_clamp01_avx2(const float* x, float* y, std::size_t n) {
  const __m256 zero = _mm256_setzero_ps();
  const __m256 one = _mm256_set1_ps(1.0f);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 v = _mm256_add_ps(_mm256_loadu_ps(y + i), _mm256_loadu_ps(x + i));
    // Same select semantics as std::clamp, including signed zeros.
    v = _mm256_min_ps(one, _mm256_max_ps(zero, v));
    _mm256_storeu_ps(y + i, v);
  }
  for (; i < n; ++i) y[i] = std::clamp(y[i] + x[i], 0.0f, 1.0f);
}

void threshold_avx2(const float* x, float t, std::uint8_t* mask, std::size_t n) {
  const __m256 vt = _mm256_set1_ps(t);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const int bits = _mm256_movemask_ps(_mm256_cmp_ps(_mm256_loadu_ps(x + i), vt, _CMP_GE_OQ));
    for (int k = 0; k < 8; ++k) mask[i + k] = std::uint8_t((bits >> k) & 1);
  }
  for (; i < n; ++i) mask[i] = x[i] >= t ? 1 : 0;
}

}  // namespace

const KernelTable* avx2_kernels() {
  static const KernelTable table{
      "avx2",      convolve_avx2, axpy_avx2,        max_f32_avx2,
      max_u8_avx2, min_u8_avx2,   add_clamp01_avx2, threshold_avx2,
  };
  return &table;
}

}  // namespace charter::simd
