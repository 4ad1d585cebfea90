#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace placebench {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline uint64_t hash_str64(std::string_view s, uint64_t seed = 0) {
  uint64_t h = splitmix64(seed ^ 0x51ed270b4d2c6ae5ULL);
  for (unsigned char c : s) h = splitmix64(h ^ c);
  return h;
}

// Seeded random stream. std::mt19937 output is pinned by the standard; the
// distribution helpers below avoid std::uniform_*_distribution, whose streams
// differ between standard library implementations, so identical seeds give
// byte-identical results everywhere.
class DetRng {
 public:
  explicit DetRng(uint64_t seed)
      : gen_(static_cast<uint32_t>(splitmix64(seed) >> 32)) {}

  uint32_t next_u32() { return gen_(); }

  // Uniform in [0, n). n must be > 0.
  uint32_t uniform_u32(uint32_t n) { return next_u32() % n; }

  int uniform_int(int lo, int hi) {  // inclusive range
    return lo + static_cast<int>(uniform_u32(static_cast<uint32_t>(hi - lo + 1)));
  }

  // Uniform in [0, 1).
  double uniform01() { return next_u32() * (1.0 / 4294967296.0); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  // Independent child stream, stable across call sites.
  DetRng fork(uint64_t salt) {
    uint64_t base = (static_cast<uint64_t>(next_u32()) << 32) | next_u32();
    return DetRng(splitmix64(base ^ splitmix64(salt)));
  }

 private:
  std::mt19937 gen_;
};

}  // namespace placebench
