#pragma once

#include <cstdint>
#include <random>

namespace sparseflip {

/// splitmix64 finalizer; the mixer behind all stream derivation.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stream-derivation rule: trial t of an experiment with base seed s draws
/// from derive_stream(s, t, k) with k = 0 for edge weights, 1 for the
/// initial cut, 2 for pivot decisions. Streams are independent of worker
/// scheduling, so parallel trials reproduce exactly.
constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t trial,
                                      std::uint64_t substream) {
  return mix64(mix64(mix64(seed) ^ trial) ^ substream);
}

/// Deterministic uniform source. mt19937_64 has a fully specified bit
/// stream; the [0,1) conversion below avoids the implementation-defined
/// std distributions so outputs are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform in [0, 1), 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform in [0, k). Modulo bias is ~k/2^64, irrelevant here.
  std::uint64_t bounded(std::uint64_t k) { return next_u64() % k; }

  bool coin() { return (next_u64() & 1u) != 0; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace sparseflip
