#pragma once

#include <cstdint>
#include <random>

namespace homs::detail {

/// splitmix64 mixer; used to derive independent named RNG streams from one
/// user-facing seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed for a named substream. Streams with distinct tags are independent of
/// each other and of the order in which they are consumed.
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t tag) {
  return splitmix64(seed ^ splitmix64(tag));
}

/// Unbiased draw from [0, n) using mask rejection. Deterministic for a given
/// engine state on every platform (no std::uniform_int_distribution, whose
/// algorithm is implementation-defined).
inline std::uint64_t bounded_uniform(std::mt19937_64& rng, std::uint64_t n) {
  std::uint64_t mask = n - 1;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  mask |= mask >> 32;
  std::uint64_t v;
  do {
    v = rng() & mask;
  } while (v >= n);
  return v;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace homs::detail
