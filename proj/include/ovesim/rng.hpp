#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace ovesim {

/// All stochastic operations take an explicit stream; nothing draws from
/// hidden global state.
using RandomStream = std::mt19937_64;

/// splitmix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Counter-based stream derivation: the same (master, path) always yields
/// the same stream and distinct paths yield statistically independent
/// streams. Parallel code derives one stream per task index instead of
/// sharing a sequential generator, so results do not depend on scheduling.
inline RandomStream derive_stream(std::uint64_t master,
                                  std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = mix64(master);
  for (std::uint64_t v : path) {
    s = mix64(s ^ mix64(v));
  }
  return RandomStream{s};
}

}  // namespace ovesim
