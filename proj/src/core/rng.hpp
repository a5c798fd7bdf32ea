#pragma once

#include <cstdint>

namespace adsgame {

// Counter-based uniform generator. Every draw is a pure function of
// (seed, stream, counter), so parallel agent streams are reproducible
// and independent of thread count and evaluation order.
namespace rng {

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline std::uint64_t hash(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t counter) {
  std::uint64_t h = mix64(seed ^ 0xD1B54A32D192ED03ull);
  h = mix64(h ^ stream);
  h = mix64(h ^ counter);
  return h;
}

// Uniform on [0, 1).
inline double u01(std::uint64_t seed, std::uint64_t stream,
                  std::uint64_t counter) {
  return static_cast<double>(hash(seed, stream, counter) >> 11) * 0x1.0p-53;
}

// Uniform on (0, 1]; used when the lower endpoint must stay open.
inline double u01_open_low(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t counter) {
  return static_cast<double>((hash(seed, stream, counter) >> 11) + 1) *
         0x1.0p-53;
}

}  // namespace rng
}  // namespace adsgame
