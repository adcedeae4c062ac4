#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace mpmdl {

using Rng = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of the independent stream owned by (run seed, generation, individual).
/// Evaluation results depend only on this triple, never on worker scheduling.
inline std::uint64_t stream_seed(std::uint64_t run_seed, std::uint64_t generation,
                                 std::uint64_t index) {
  return splitmix64(splitmix64(splitmix64(run_seed) ^ generation) ^ index);
}

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline double uniform01(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline bool bernoulli(Rng& rng, double p) {
  if (p <= 0.0) return false;
  if (p >= 1.0) return true;
  return uniform01(rng) < p;
}

}  // namespace mpmdl
