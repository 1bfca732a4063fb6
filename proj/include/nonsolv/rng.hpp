#pragma once

#include <cstdint>

namespace nsv {

// SplitMix64 stream. Small, seedable, identical output on every platform,
// which keeps witness reports byte-for-byte reproducible.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, n) by rejection; n > 0.
  uint64_t below(uint64_t n) {
    uint64_t limit = ~0ULL - ~0ULL % n;
    uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % n;
  }

  uint64_t state() const { return state_; }

 private:
  uint64_t state_;
};

}  // namespace nsv
