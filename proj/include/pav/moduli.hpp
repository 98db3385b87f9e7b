#pragma once

#include "pav/error.hpp"
#include "pav/type_vector.hpp"

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace pav {

/// Type of lambda^D for a polarization of type (d_1,...,d_g):
/// (1, d_g/d_{g-1}, ..., d_g/d_1).
inline TypeVector d_dual_type(const TypeVector& t) {
  validate_type(t.d);
  const std::size_t g = t.genus();
  std::vector<Int> out;
  out.reserve(g);
  out.push_back(1);
  for (std::size_t i = g - 1; i >= 1; --i) out.push_back(t.last() / t.d[i - 1]);
  return TypeVector{std::move(out)};
}

/// The involution on moduli labels:
/// (d_1,...,d_g) -> (d_1, d_1 d_g/d_{g-1}, ..., d_1 d_g/d_2, d_g),
/// which is d_1 times the D-dual type. First and last entries are kept, so
/// the exponent d_g is preserved.
inline TypeVector delta_type(const TypeVector& t) {
  TypeVector out = d_dual_type(t);
  for (Int& x : out.d) x *= t.first();
  return out;
}

/// Fixed point of the involution: delta_type(t) == t. Equivalent to
/// d_i * d_{g+1-i} == d_1 * d_g for all i; every g <= 2 type is fixed.
inline bool is_fixed(const TypeVector& t) { return delta_type(t) == t; }

inline constexpr std::uint64_t kDefaultEnumerationCap = 1000000;

namespace detail {

// Chains counted per start-and-length; the cap aborts the projection before
// anything is materialized.
inline void count_types_rec(std::size_t remaining, const Int& max_dg,
                            const Int& start, std::uint64_t& count,
                            std::uint64_t cap) {
  if (remaining == 0) {
    if (++count > cap)
      throw error(errc::bound_too_large,
                  "projected enumeration exceeds cap of " + std::to_string(cap));
    return;
  }
  for (Int v = start; v <= max_dg; v += start)
    count_types_rec(remaining - 1, max_dg, v, count, cap);
}

inline void enumerate_rec(std::size_t remaining, const Int& max_dg,
                          std::vector<Int>& prefix,
                          std::vector<TypeVector>& out) {
  if (remaining == 0) {
    out.push_back(TypeVector{prefix});
    return;
  }
  const Int step = prefix.empty() ? Int(1) : prefix.back();
  for (Int v = step; v <= max_dg; v += step) {
    prefix.push_back(v);
    enumerate_rec(remaining - 1, max_dg, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace detail

/// All valid types with genus g and d_g <= max_dg, in lexicographic order.
/// Throws bound_too_large when the projected count exceeds the cap.
inline std::vector<TypeVector> enumerate_types(
    std::size_t g, const Int& max_dg,
    std::uint64_t cap = kDefaultEnumerationCap) {
  if (g == 0) throw error(errc::invalid_type, "genus must be at least 1");
  if (max_dg < 1) throw error(errc::invalid_type, "bound must be at least 1");
  std::uint64_t count = 0;
  detail::count_types_rec(g, max_dg, Int(1), count, cap);
  std::vector<TypeVector> out;
  out.reserve(count);
  std::vector<Int> prefix;
  detail::enumerate_rec(g, max_dg, prefix, out);
  return out;
}

/// Partition of an enumerated type set into delta-orbits.
struct OrbitReport {
  std::size_t g = 0;
  Int max_dg;
  std::vector<TypeVector> types;
  std::vector<std::vector<TypeVector>> orbits;  // each of size 1 or 2
  std::size_t fixed_count = 0;
  std::size_t swap_count = 0;  // number of 2-orbits
};

inline OrbitReport orbit_report(std::size_t g, const Int& max_dg,
                                std::uint64_t cap = kDefaultEnumerationCap) {
  OrbitReport r;
  r.g = g;
  r.max_dg = max_dg;
  r.types = enumerate_types(g, max_dg, cap);
  std::vector<bool> seen(r.types.size(), false);
  for (std::size_t i = 0; i < r.types.size(); ++i) {
    if (seen[i]) continue;
    seen[i] = true;
    const TypeVector image = delta_type(r.types[i]);
    if (image == r.types[i]) {
      r.orbits.push_back({r.types[i]});
      ++r.fixed_count;
      continue;
    }
    // The involution preserves d_g, so the partner is in the same set.
    bool paired = false;
    for (std::size_t j = i + 1; j < r.types.size(); ++j) {
      if (!seen[j] && r.types[j] == image) {
        seen[j] = true;
        r.orbits.push_back({r.types[i], r.types[j]});
        ++r.swap_count;
        paired = true;
        break;
      }
    }
    if (!paired)
      throw error(errc::internal,
                  "delta image missing from enumeration: " + to_string(image));
  }
  return r;
}

}  // namespace pav
