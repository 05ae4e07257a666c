#pragma once

#include <cstdint>
#include <limits>

namespace synckit {

// Counter-based 64-bit generator (SplitMix64, Steele et al.). Chosen over
// std::mt19937_64 because substreams derived from (seed, index) are cheap
// and the uniform-double mapping below is identical on every platform.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

 private:
  std::uint64_t state_;
};

// Independent substream for trial `index` of a seeded experiment. Streams do
// not overlap in practice: the mix scrambles (seed, index) into a fresh
// starting state.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mixer(seed ^ (0x632be59bd9b4e019ULL * (index + 1)));
  std::uint64_t s = mixer();
  s ^= mixer() << 1;
  return SplitMix64(s);
}

// Uniform double in [lo, hi). 53-bit mantissa path, bit-identical everywhere.
inline double uniform(SplitMix64& rng, double lo, double hi) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + u * (hi - lo);
}

inline std::uint64_t uniform_index(SplitMix64& rng, std::uint64_t n) {
  // Modulo bias is irrelevant for the small n used here.
  return rng() % n;
}

}  // namespace synckit
