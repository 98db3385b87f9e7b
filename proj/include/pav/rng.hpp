#pragma once

#include <cstdint>
#include <random>

namespace pav::detail {

// Seeded randomness used across the library. std::uniform_*_distribution is
// implementation-defined, so fixtures would not be portable through it; these
// two helpers plus mt19937_64 are the documented generator contract.

/// Uniform integer in [0, n). Modulo reduction; the bias is irrelevant at
/// the ranges used here and the output is identical on every platform.
inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) {
  return rng() % n;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform double in [-1, 1).
inline double uniform_symmetric(std::mt19937_64& rng) {
  return 2.0 * uniform_unit(rng) - 1.0;
}

}  // namespace pav::detail
