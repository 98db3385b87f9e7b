#pragma once

#include "pav/error.hpp"
#include "pav/matrix.hpp"

#include <cstddef>
#include <vector>

namespace pav {

namespace detail {

inline Int pfaffian_rec(const IntMatrix& a, std::vector<std::size_t>& idx) {
  if (idx.empty()) return 1;
  const std::size_t i0 = idx[0];
  Int acc = 0;
  for (std::size_t p = 1; p < idx.size(); ++p) {
    const Int& x = a(i0, idx[p]);
    if (x == 0) continue;
    std::vector<std::size_t> rest;
    rest.reserve(idx.size() - 2);
    for (std::size_t q = 1; q < idx.size(); ++q)
      if (q != p) rest.push_back(idx[q]);
    const Int sub = pfaffian_rec(a, rest);
    // Sign convention: Pf(A) = sum_j (-1)^j a_{1j} Pf(A with rows/cols 1,j
    // removed), j running over 2..2n in 1-based labels. Position p in the
    // active index list corresponds to j = p+1.
    if (p % 2 == 1)
      acc += x * sub;
    else
      acc -= x * sub;
  }
  return acc;
}

}  // namespace detail

/// Exact Pfaffian of a skew-symmetric matrix of even dimension, by recursive
/// expansion along the first row. Pf(A)^2 = det(A).
inline Int pfaffian(const IntMatrix& a) {
  if (!a.is_square())
    throw error(errc::non_square, "pfaffian requires a square matrix");
  const std::size_t n = a.rows();
  if (n % 2 != 0)
    throw error(errc::odd_dimension, "pfaffian requires even dimension");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (a(i, j) != -a(j, i))
        throw error(errc::not_skew, "pfaffian requires a skew-symmetric matrix");
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return detail::pfaffian_rec(a, idx);
}

}  // namespace pav
