#pragma once

#include <cmath>
#include <cstdint>
#include <random>

// Deterministic draw helpers. std::distributions are implementation-defined,
// so uniforms and normals are produced directly from the 64-bit engine output
// to keep results reproducible for a given seed.
namespace parcoord::detail {

using rng64 = std::mt19937_64;

/// Uniform on [0, 1) with 53 random bits.
inline double uniform01(rng64& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

/// Uniform on (0, 1]; safe as a log() argument.
inline double uniform01_pos(rng64& g) {
  return static_cast<double>((g() >> 11) + 1) * 0x1.0p-53;
}

/// Standard normal via Box-Muller (cosine branch, one draw per call).
inline double standard_normal(rng64& g) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  const double u1 = uniform01_pos(g);
  const double u2 = uniform01(g);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

/// Uniform integer in [0, n).
inline std::size_t uniform_index(rng64& g, std::size_t n) {
  return static_cast<std::size_t>(uniform01(g) * static_cast<double>(n)) % n;
}

}  // namespace parcoord::detail
