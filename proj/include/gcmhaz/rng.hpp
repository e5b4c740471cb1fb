#pragma once

#include <cstdint>
#include <random>

namespace gcmhaz {

// SplitMix64 step, used only to spread (seed, stream) pairs into engine seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// One deterministic stream of randomness keyed by (seed, stream_id).
// Distinct stream ids on the same seed give statistically independent
// streams; replicated simulations assign one stream per work unit so the
// result does not depend on scheduling.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0)
      : eng_(splitmix64(splitmix64(seed) ^ splitmix64(~stream))) {}

  double gaussian() { return normal_(eng_); }

  // Uniform on [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace gcmhaz
