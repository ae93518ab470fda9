#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace newscred {

// SplitMix64 (Steele, Lea, Flood 2014). Chosen over std::mt19937_64 because the
// full output sequence is pinned by ~10 lines of integer arithmetic, so splits,
// weight init, and epoch shuffles are reproducible across toolchains.
class SplitMix64 {
public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform in [0, n). Plain modulo; bias is negligible for n << 2^64.
  uint64_t below(uint64_t n) { return next() % n; }

private:
  uint64_t state_;
};

// In-place Fisher-Yates shuffle driven by SplitMix64, iterating from the back.
template <typename T>
void fisher_yates(std::vector<T>& items, SplitMix64& rng) {
  for (size_t i = items.size(); i > 1; --i) {
    size_t j = static_cast<size_t>(rng.below(i));
    std::swap(items[i - 1], items[j]);
  }
}

// FNV-1a, used for token hashing and config fingerprints.
inline uint64_t fnv1a64(const void* data, size_t len, uint64_t seed = 0xcbf29ce484222325ULL) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  uint64_t h = seed;
  for (size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline uint64_t fnv1a64(const std::string& s, uint64_t seed = 0xcbf29ce484222325ULL) {
  return fnv1a64(s.data(), s.size(), seed);
}

}  // namespace newscred
