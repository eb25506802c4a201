#pragma once

#include <cstdint>
#include <random>

namespace ssi {

// SplitMix64 finalizer; used to derive independent per-stream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed rule for trial-level parallelism: stream i of base seed s is
// mt19937_64(splitmix64(s ^ splitmix64(i + 1))). Results therefore do not
// depend on how trials are scheduled across threads.
inline std::mt19937_64 make_stream_rng(std::uint64_t base_seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(base_seed ^ splitmix64(stream + 1)));
}

}  // namespace ssi
