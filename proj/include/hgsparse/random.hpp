#pragma once

#include <cstdint>
#include <random>

namespace hgsparse {

// Counter-based random streams: every draw is keyed by (seed, id, counter),
// so per-edge / per-round results do not depend on iteration order.

inline std::uint64_t mix64(std::uint64_t z) {
  // splitmix64 finalizer
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return mix64(mix64(mix64(seed) ^ a) ^ b);
}

// Uniform double in [0, 1) from 64 random bits.
inline double uniform01(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

inline bool coin_flip(std::uint64_t seed, std::uint64_t edge, std::uint64_t round, double p) {
  return uniform01(stream_key(seed, edge, round)) < p;
}

// Exact Binomial(trials, p) draw on a dedicated stream. The distribution is
// exact; speed comes from the standard library's rejection sampler.
inline int binomial_draw(int trials, double p, std::uint64_t seed, std::uint64_t edge) {
  if (p >= 1.0) return trials;
  if (p <= 0.0) return 0;
  std::mt19937_64 rng(stream_key(seed, edge));
  std::binomial_distribution<int> dist(trials, p);
  return dist(rng);
}

}  // namespace hgsparse
