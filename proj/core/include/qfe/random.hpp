#pragma once

#include <cstdint>
#include <random>

#include "qfe/bit.hpp"

namespace qfe {

/// The library's random engine. mt19937_64 has a fully specified output
/// sequence, so seeded runs reproduce across standard libraries. Helpers below
/// consume raw engine output instead of std distributions for the same reason.
using Rng = std::mt19937_64;

inline Bit uniform_bit(Rng& rng) { return Bit(static_cast<unsigned>(rng() >> 63)); }

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline BitString uniform_bits(Rng& rng, std::size_t n) {
  BitString out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(uniform_bit(rng));
  return out;
}

/// Uniform integer in [0, bound) by rejection. bound > 0.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % bound;
}

/// splitmix64 finalizer; used to derive independent per-trial seeds.
inline std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline Rng derive_rng(std::uint64_t base, std::uint64_t stream, std::uint64_t index) {
  return Rng(mix_seed(mix_seed(base ^ mix_seed(stream)) + index));
}

}  // namespace qfe
