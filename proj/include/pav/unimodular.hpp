#pragma once

#include "pav/error.hpp"
#include "pav/matrix.hpp"
#include "pav/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <random>

namespace pav {

/// Seeded random unimodular matrix: a product of 20*n elementary shears
/// u_j += c * u_i with c in [-3, 3]. Entry growth stays moderate and the
/// result is reproducible for a fixed seed; det is exactly 1.
inline IntMatrix random_unimodular(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw error(errc::shape_mismatch, "dimension must be positive");
  IntMatrix u = IntMatrix::identity(n);
  if (n == 1) return u;
  std::mt19937_64 rng(seed);
  for (std::size_t step = 0; step < 20 * n; ++step) {
    const std::size_t i = detail::uniform_index(rng, n);
    std::size_t j = detail::uniform_index(rng, n - 1);
    if (j >= i) ++j;
    const long long c = static_cast<long long>(detail::uniform_index(rng, 7)) - 3;
    if (c != 0) u.add_col_multiple(j, i, Int(c));
  }
  return u;
}

}  // namespace pav
