#pragma once

#include <cstdint>

namespace nlexp::rng {

// SplitMix64 finalizer. Bijective on 64-bit words, full avalanche.
constexpr std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based draw: a pure function of (seed, stream, counter). There is
// no generator state, so any (stream, counter) cell can be evaluated in any
// order, from any thread, and always yields the same word. Streams index
// coordinates; counters index Monte Carlo repetitions.
constexpr std::uint64_t draw(std::uint64_t seed, std::uint64_t stream,
                             std::uint64_t counter) {
  std::uint64_t h = mix(seed);
  h = mix(h ^ stream);
  h = mix(h ^ counter);
  return h;
}

// Maps a 64-bit word to the open interval (0,1): never returns 0 or 1, so
// quantile transforms stay finite.
constexpr double to_unit_open(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

constexpr double unit(std::uint64_t seed, std::uint64_t stream,
                      std::uint64_t counter) {
  return to_unit_open(draw(seed, stream, counter));
}

// Domain separation for independent purposes sharing one user seed.
enum class Purpose : std::uint64_t {
  kPathDraws = 0x70617468,    // coordinate draws of scenario paths
  kRestarts = 0x72737472,     // random restart selections
  kSpotChecks = 0x73706f74,   // test-function membership spot checks
};

constexpr std::uint64_t derive_seed(std::uint64_t seed, Purpose purpose) {
  return mix(seed ^ static_cast<std::uint64_t>(purpose));
}

}  // namespace nlexp::rng
