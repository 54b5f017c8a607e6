#include "charter/synth/rng.hpp"

#include <cmath>
#include <numeric>

#include "charter/core/geometry.hpp"

namespace charter {

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

int Rng::integer(int lo, int hi) {
  if (hi <= lo) return lo;
  const std::uint64_t span = std::uint64_t(hi - lo) + 1;
  return lo + int(std::uint64_t(uniform() * double(span)) % span);
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  spare_ = mag * std::sin(2.0 * kPi * u2);
  has_spare_ = true;
  return mag * std::cos(2.0 * kPi * u2);
}

std::size_t Rng::weighted(std::span<const double> weights) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  double pick = uniform() * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (pick < weights[i]) return i;
    pick -= weights[i];
  }
  return weights.empty() ? 0 : weights.size() - 1;
}

}  // namespace charter
