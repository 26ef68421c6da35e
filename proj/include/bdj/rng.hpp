#pragma once

#include <cmath>
#include <cstdint>

namespace bdj {

/// SplitMix64 finalizer (Stafford mix 13). Used to key substreams and to
/// expand seeds into generator state.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// xoshiro256++ (Blackman-Vigna), seeded through SplitMix64. Small, fast,
/// and fully specified here so runs reproduce bit-for-bit anywhere.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) {
    std::uint64_t s = seed;
    for (int i = 0; i < 4; ++i) {
      s += 0x9E3779B97F4A7C15ULL;
      std::uint64_t z = s;
      z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
      z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
      state_[i] = z ^ (z >> 31);
    }
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on the open interval (0, 1): (x >> 11 + 1/2) * 2^-53.
  double uniform_open() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Inverse-transform exponential draw, exact and branch-free.
  double exponential(double rate) { return -std::log(uniform_open()) / rate; }

private:
  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::uint64_t state_[4];
};

/// Independent substream keyed by (seed, lane, index). Excursion j draws its
/// jumps from lane 1 index j+1 and its holding times from lane 2 index j+1;
/// index 0 is reserved for single-path runs. Aggregation over excursions is
/// therefore schedule-independent.
inline RngStream substream(std::uint64_t seed, std::uint64_t lane, std::uint64_t index) {
  const std::uint64_t key = mix64(seed ^ mix64(lane * 0xD1B54A32D192ED03ULL) ^
                                  mix64(index * 0x8CB92BA72F3D8DD7ULL));
  return RngStream(key);
}

}  // namespace bdj
