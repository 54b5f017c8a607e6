#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace charter {

/// SplitMix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

/// Seeded generator whose derived draws do not depend on the standard
/// library's distribution implementations, so outputs are identical across
/// toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform() { return double(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi);
  bool bernoulli(double p) { return uniform() < p; }
  double normal();
  /// Index drawn proportionally to nonnegative weights.
  std::size_t weighted(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace charter
