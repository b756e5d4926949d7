#pragma once

// Deterministic randomness that does not depend on the standard library's
// distribution implementations (those differ between vendors).

#include "hypermon/integer.hpp"
#include "hypermon/interval.hpp"

#include <cstdint>
#include <initializer_list>
#include <random>
#include <stdexcept>
#include <string_view>

namespace hypermon {

using Rng = std::mt19937_64;

/// Uniform value in [0, n), n > 0, by rejection sampling.
inline std::uint64_t uniformIndex(Rng& rng, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("uniformIndex: empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

/// Uniform element of a finite, non-empty interval of width below 2^64.
inline Integer uniformIn(Rng& rng, const Interval& range) {
  const Integer width = range.size();
  return *range.lo + Integer(uniformIndex(rng, width.convert_to<std::uint64_t>()));
}

/// SplitMix64 finalizer; mixes several words into one seed.
inline std::uint64_t mixSeed(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL;
  for (std::uint64_t w : words) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h = (h ^ (h >> 30)) * 0xbf58476d1ce4e5b9ULL;
    h = (h ^ (h >> 27)) * 0x94d049bb133111ebULL;
    h ^= h >> 31;
  }
  return h;
}

/// Stable 64-bit hash of a string (FNV-1a), for seeding by name.
inline std::uint64_t nameHash(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace hypermon
