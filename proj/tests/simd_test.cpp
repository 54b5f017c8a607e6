#include <cstring>
#include <random>
#include <vector>

#include "charter/simd/kernels.hpp"
#include "doctest.h"

using namespace charter::simd;

namespace {

std::vector<float> floats(std::mt19937& rng, std::size_t n, float lo, float hi) {
  std::uniform_real_distribution<float> u(lo, hi);
  std::vector<float> v(n);
  for (float& x : v) x = u(rng);
  return v;
}

std::vector<std::uint8_t> bytes(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> u(0, 255);
  std::vector<std::uint8_t> v(n);
  for (auto& x : v) x = std::uint8_t(u(rng));
  return v;
}

bool same_bits(const std::vector<float>& a, const std::vector<float>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(float)) == 0;
}

}  // namespace

TEST_SUITE("simd") {

TEST_CASE("selected table is usable") {
  const KernelTable& k = kernels();
  CHECK(k.name != nullptr);
  if (!cpu_has_avx2()) CHECK(&k == &scalar_kernels());
}

TEST_CASE("avx2 kernels are bit-identical to the scalar reference") {
  const KernelTable* avx = avx2_kernels();
  if (avx == nullptr || !cpu_has_avx2()) {
    MESSAGE("AVX2 variant unavailable; nothing to compare");
    return;
  }
  const KernelTable& ref = scalar_kernels();
  std::mt19937 rng(42);
  // Lengths straddle the vector width and its tail handling.
  for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 64u, 127u, 1000u}) {
    const auto x = floats(rng, n + 8, -1.0f, 1.0f);
    const auto y0 = floats(rng, n, -1.0f, 1.0f);
    const auto taps = floats(rng, 9, 0.0f, 0.3f);

    std::vector<float> a(n), b(n);
    ref.convolve(x.data(), taps.data(), taps.size(), a.data(), n);
    avx->convolve(x.data(), taps.data(), taps.size(), b.data(), n);
    CHECK(same_bits(a, b));

    a = y0, b = y0;
    ref.axpy(0.37f, x.data(), a.data(), n);
    avx->axpy(0.37f, x.data(), b.data(), n);
    CHECK(same_bits(a, b));

    a = y0, b = y0;
    ref.max_f32(x.data(), a.data(), n);
    avx->max_f32(x.data(), b.data(), n);
    CHECK(same_bits(a, b));

    a = y0, b = y0;
    ref.add_clamp01(x.data(), a.data(), n);
    avx->add_clamp01(x.data(), b.data(), n);
    CHECK(same_bits(a, b));

    std::vector<std::uint8_t> ma(n), mb(n);
    ref.threshold(x.data(), 0.1f, ma.data(), n);
    avx->threshold(x.data(), 0.1f, mb.data(), n);
    CHECK(ma == mb);

    const auto u = bytes(rng, n), v0 = bytes(rng, n);
    auto va = v0, vb = v0;
    ref.max_u8(u.data(), va.data(), n);
    avx->max_u8(u.data(), vb.data(), n);
    CHECK(va == vb);
    va = v0, vb = v0;
    ref.min_u8(u.data(), va.data(), n);
    avx->min_u8(u.data(), vb.data(), n);
    CHECK(va == vb);
  }
}

TEST_CASE("scalar kernels match their definitions") {
  const KernelTable& k = scalar_kernels();
  const float in[] = {1, 2, 3, 4, 5};
  const float taps[] = {0.5f, 0.25f};
  float out[4];
  k.convolve(in, taps, 2, out, 4);
  CHECK(out[0] == 0.5f * 1 + 0.25f * 2);
  CHECK(out[3] == 0.5f * 4 + 0.25f * 5);

  float y[] = {0.9f, 0.1f, -0.5f};
  const float x[] = {0.5f, 0.2f, 0.1f};
  k.add_clamp01(x, y, 3);
  CHECK(y[0] == 1.0f);
  CHECK(y[1] == doctest::Approx(0.3f));
  CHECK(y[2] == 0.0f);

  std::uint8_t m[3];
  k.threshold(x, 0.2f, m, 3);
  CHECK(m[0] == 1);
  CHECK(m[1] == 1);
  CHECK(m[2] == 0);
}

}
