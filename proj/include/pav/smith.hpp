#pragma once

#include "pav/error.hpp"
#include "pav/matrix.hpp"

#include <algorithm>
#include <cstddef>
#include <vector>

namespace pav {

/// Smith decomposition U * A * V = S with S diagonal, diagonal entries
/// nonnegative and each dividing the next, and U, V unimodular.
struct SnfResult {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;

  std::vector<Int> diagonal() const {
    std::vector<Int> d;
    const std::size_t r = std::min(S.rows(), S.cols());
    d.reserve(r);
    for (std::size_t i = 0; i < r; ++i) d.push_back(S(i, i));
    return d;
  }
};

/// Smith normal form with multiplier tracking.
///
/// Classic pivot-and-reduce scheme: bring the smallest nonzero entry of the
/// trailing block to the pivot, clear its row and column with rounded
/// division (a nonzero remainder strictly shrinks the minimum, so the loop
/// terminates), then force the pivot to divide the whole trailing block
/// before moving on. Every step is an elementary unimodular operation
/// mirrored into U or V, so U*A*V = S holds exactly throughout.
inline SnfResult smith_normal_form(const IntMatrix& a) {
  const std::size_t m = a.rows(), n = a.cols();
  IntMatrix S = a;
  IntMatrix U = IntMatrix::identity(m);
  IntMatrix V = IntMatrix::identity(n);

  auto row_swap = [&](std::size_t i, std::size_t j) {
    S.swap_rows(i, j);
    U.swap_rows(i, j);
  };
  auto col_swap = [&](std::size_t i, std::size_t j) {
    S.swap_cols(i, j);
    V.swap_cols(i, j);
  };
  auto row_add = [&](std::size_t dst, std::size_t src, const Int& c) {
    S.add_row_multiple(dst, src, c);
    U.add_row_multiple(dst, src, c);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Int& c) {
    S.add_col_multiple(dst, src, c);
    V.add_col_multiple(dst, src, c);
  };

  const std::size_t rank_bound = std::min(m, n);
  for (std::size_t k = 0; k < rank_bound; ++k) {
    for (;;) {
      // Smallest nonzero |entry| in the trailing block.
      bool found = false;
      std::size_t pi = k, pj = k;
      Int best = 0;
      for (std::size_t i = k; i < m; ++i)
        for (std::size_t j = k; j < n; ++j) {
          const Int& x = S(i, j);
          if (x == 0) continue;
          if (!found || abs(x) < best) {
            found = true;
            best = abs(x);
            pi = i;
            pj = j;
          }
        }
      if (!found) break;  // trailing block is zero

      if (pi != k) row_swap(pi, k);
      if (pj != k) col_swap(pj, k);

      bool remainder = false;
      for (std::size_t i = k + 1; i < m; ++i) {
        if (S(i, k) == 0) continue;
        row_add(i, k, -round_div(S(i, k), S(k, k)));
        if (S(i, k) != 0) remainder = true;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        if (S(k, j) == 0) continue;
        col_add(j, k, -round_div(S(k, j), S(k, k)));
        if (S(k, j) != 0) remainder = true;
      }
      if (remainder) continue;

      // Pivot must divide the rest of the trailing block; if not, pull a
      // bad row up and reduce again.
      bool divides = true;
      for (std::size_t i = k + 1; i < m && divides; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          if (S(i, j) % S(k, k) != 0) {
            row_add(k, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (S(k, k) < 0) {
      S.negate_row(k);
      U.negate_row(k);
    }
  }
  return {S, U, V};
}

}  // namespace pav
