#pragma once

#include <cstdint>
#include <random>

namespace wdl {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Derives an independent stream seed from a base seed and a path of indices
/// (replication, cell, stream tag, ...). Order of the indices matters.
constexpr std::uint64_t derive_seed(std::uint64_t base) { return mix_seed(base); }

template <typename... Rest>
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index, Rest... rest) {
  return derive_seed(mix_seed(base) ^ mix_seed(index * 0xD1B54A32D192ED03ULL + 1), rest...);
}

// Stream tags used when splitting a replication seed.
namespace stream {
inline constexpr std::uint64_t kCurves = 1;
inline constexpr std::uint64_t kInitialWelfare = 2;
inline constexpr std::uint64_t kNoise = 3;
inline constexpr std::uint64_t kPolicy = 4;
inline constexpr std::uint64_t kBounds = 5;
}  // namespace stream

}  // namespace wdl
