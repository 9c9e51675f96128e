#ifndef CURSOR_RNG_H_
#define CURSOR_RNG_H_

#include <cstdint>
#include <random>

namespace cursor {

// SplitMix64 finalizer. Used to derive independent substream seeds.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Seed of substream `index` under `master`. Adding streams never changes
// the seeds of existing ones.
constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t index) {
  return mix64(mix64(master) ^ mix64(index + 0x632be59bd9b4e019ull));
}

// Deterministic on every platform: std::mt19937_64 is fully specified, and the
// distributions below are implemented here instead of using the
// implementation-defined <random> distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [lo, hi], unbiased (rejection sampling).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
  // Uniform real in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  // Standard normal via Box-Muller; no cached second variate.
  double normal(double mean, double sigma);

 private:
  std::mt19937_64 engine_;
};

}  // namespace cursor

#endif  // CURSOR_RNG_H_
