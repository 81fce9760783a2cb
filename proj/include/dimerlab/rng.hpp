#pragma once

#include <cstdint>

namespace dimerlab {

// SplitMix64.  Streams are split by hashing (seed, stream index), so chain i
// of a run does not depend on how many chains ran before it.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 h(seed ^ 0x6a09e667f3bcc909ULL);
    const std::uint64_t a = h.next();
    SplitMix64 k(a + index * 0x9e3779b97f4a7c15ULL);
    return SplitMix64(k.next());
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double uniform() { return double(next() >> 11) * 0x1.0p-53; }

  bool coin() { return (next() >> 63) != 0; }

 private:
  std::uint64_t state_;
};

}  // namespace dimerlab
