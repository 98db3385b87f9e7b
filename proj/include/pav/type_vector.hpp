#pragma once

#include "pav/error.hpp"
#include "pav/matrix.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace pav {

/// Moduli label (d_1,...,d_g): positive integers with d_i | d_{i+1}.
struct TypeVector {
  std::vector<Int> d;

  std::size_t genus() const { return d.size(); }
  const Int& first() const { return d.front(); }
  const Int& last() const { return d.back(); }

  bool operator==(const TypeVector& o) const { return d == o.d; }
  bool operator!=(const TypeVector& o) const { return d != o.d; }
};

/// Accepts iff all entries are positive and the divisibility chain holds;
/// reports the first violating index otherwise.
inline TypeVector validate_type(std::vector<Int> d) {
  if (d.empty())
    throw error(errc::invalid_type, "type vector must be nonempty");
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i] <= 0)
      throw error(errc::invalid_type,
                  "entry at index " + std::to_string(i) + " is not positive");
    if (i > 0 && d[i] % d[i - 1] != 0)
      throw error(errc::invalid_type,
                  "divisibility chain broken at index " + std::to_string(i));
  }
  return TypeVector{std::move(d)};
}

inline bool type_less(const TypeVector& a, const TypeVector& b) {
  const std::size_t n = std::min(a.d.size(), b.d.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.d[i] != b.d[i]) return a.d[i] < b.d[i];
  }
  return a.d.size() < b.d.size();
}

inline std::string to_string(const TypeVector& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.d.size(); ++i) {
    if (i) s += ",";
    s += t.d[i].str();
  }
  return s + ")";
}

}  // namespace pav
