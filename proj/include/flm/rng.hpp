#pragma once

#include <cstdint>
#include <random>

namespace flm {

using Rng = std::mt19937_64;

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Seed of replicate `index` under `master_seed`:
//   splitmix64(splitmix64(master_seed) ^ splitmix64(~index))
// The two inputs pass through independent mixes before combining, so nearby
// (master, index) pairs land on unrelated streams.
constexpr std::uint64_t replicate_seed(std::uint64_t master_seed, std::uint64_t index) {
  return splitmix64(splitmix64(master_seed) ^ splitmix64(~index));
}

Rng make_rng(std::uint64_t seed);
Rng replicate_stream(std::uint64_t master_seed, std::uint64_t index);

}  // namespace flm
