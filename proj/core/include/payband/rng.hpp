#pragma once

#include <cstdint>
#include <random>

namespace payband {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer. A bijection on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of an independent stream tagged by (a, b) under `master`.
/// For fixed master and a, b < 2^32 the map is injective: (a, b) packs into
/// one word, and every later step is a bijection.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) noexcept {
  const std::uint64_t packed = (a << 32) | (b & 0xffffffffULL);
  return splitmix64(master + splitmix64(packed));
}

// Stream tags used inside a run. Policy child seeds use the policy index as
// the tag, so these sit well above any realistic policy count.
inline constexpr std::uint64_t kContextStream = 0xC0000001ULL;
inline constexpr std::uint64_t kNoiseStream = 0xC0000002ULL;
inline constexpr std::uint64_t kShuffleStream = 0xC0000003ULL;
inline constexpr std::uint64_t kEnvironmentStream = 0xC0000004ULL;

}  // namespace payband
