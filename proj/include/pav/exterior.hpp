#pragma once

#include "pav/error.hpp"
#include "pav/matrix.hpp"

#include <bit>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <utility>

namespace pav {

using GenMask = std::uint64_t;

/// Element of the rational exterior algebra on n generators. A term is a
/// strictly increasing generator subset, stored as a bitmask; coefficients
/// are exact rationals and zero coefficients are never kept.
class ExteriorClass {
public:
  explicit ExteriorClass(std::size_t generators) : n_(generators) {
    if (generators == 0 || generators > 63)
      throw error(errc::generator_mismatch,
                  "generator count must be between 1 and 63");
  }

  static ExteriorClass scalar(std::size_t generators, const Rat& c) {
    ExteriorClass e(generators);
    e.add_term(0, c);
    return e;
  }

  static ExteriorClass monomial(std::size_t generators, GenMask mask,
                                const Rat& c) {
    ExteriorClass e(generators);
    e.add_term(mask, c);
    return e;
  }

  std::size_t generators() const { return n_; }
  const std::map<GenMask, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rat coefficient(GenMask mask) const {
    auto it = terms_.find(mask);
    return it == terms_.end() ? Rat(0) : it->second;
  }

  void add_term(GenMask mask, const Rat& c) {
    if (c == 0) return;
    if (mask >> n_)
      throw error(errc::generator_mismatch, "term uses unknown generators");
    auto [it, inserted] = terms_.emplace(mask, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  ExteriorClass degree_part(std::size_t k) const {
    ExteriorClass out(n_);
    for (const auto& [mask, c] : terms_)
      if (static_cast<std::size_t>(std::popcount(mask)) == k)
        out.add_term(mask, c);
    return out;
  }

  std::size_t top_degree() const {
    std::size_t d = 0;
    for (const auto& [mask, c] : terms_)
      d = std::max(d, static_cast<std::size_t>(std::popcount(mask)));
    return d;
  }

  bool operator==(const ExteriorClass& o) const {
    return n_ == o.n_ && terms_ == o.terms_;
  }
  bool operator!=(const ExteriorClass& o) const { return !(*this == o); }

private:
  std::size_t n_;
  std::map<GenMask, Rat> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const ExteriorClass& c) {
  if (c.is_zero()) return os << "0";
  bool first = true;
  for (const auto& [mask, coeff] : c.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << coeff << ")";
    for (std::size_t i = 0; i < c.generators(); ++i)
      if (mask & (GenMask(1) << i)) os << " e" << (i + 1);
  }
  return os;
}

/// Sign of merging two disjoint increasing index sets: (-1)^inversions.
inline int merge_sign(GenMask a, GenMask b) {
  int inversions = 0;
  while (b) {
    const int j = std::countr_zero(b);
    b &= b - 1;
    inversions += std::popcount(a >> (j + 1));
  }
  return inversions % 2 ? -1 : 1;
}

inline ExteriorClass operator+(const ExteriorClass& a, const ExteriorClass& b) {
  if (a.generators() != b.generators())
    throw error(errc::generator_mismatch, "classes live on different algebras");
  ExteriorClass out = a;
  for (const auto& [mask, c] : b.terms()) out.add_term(mask, c);
  return out;
}

// Constrained for the same reason as the matrix scalar products: a plain
// `const Rat&` parameter would trip boost's converting constructor during
// overload resolution against foreign expression types.
template <typename S>
  requires(std::same_as<S, Rat> || std::same_as<S, Int> || std::integral<S>)
ExteriorClass operator*(const S& c, const ExteriorClass& a) {
  ExteriorClass out(a.generators());
  const Rat f(c);
  for (const auto& [mask, x] : a.terms()) out.add_term(mask, f * x);
  return out;
}

inline ExteriorClass operator-(const ExteriorClass& a, const ExteriorClass& b) {
  return a + Rat(-1) * b;
}

inline ExteriorClass operator-(const ExteriorClass& a) { return Rat(-1) * a; }

/// Graded product. Bilinear; the sign comes from sorting the concatenated
/// generator lists.
inline ExteriorClass wedge(const ExteriorClass& a, const ExteriorClass& b) {
  if (a.generators() != b.generators())
    throw error(errc::generator_mismatch, "classes live on different algebras");
  ExteriorClass out(a.generators());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      if (ma & mb) continue;
      out.add_term(ma | mb, Rat(merge_sign(ma, mb)) * ca * cb);
    }
  return out;
}

inline ExteriorClass operator*(const ExteriorClass& a, const ExteriorClass& b) {
  return wedge(a, b);
}

/// exp(c) = sum c^k / k!, finite because the algebra is nilpotent. Input
/// must be concentrated in even degrees so that powers commute.
inline ExteriorClass exp_class(const ExteriorClass& c) {
  for (const auto& [mask, coeff] : c.terms())
    if (std::popcount(mask) % 2 != 0)
      throw error(errc::odd_degree_input,
                  "exp is defined for even-degree classes only");
  ExteriorClass out = ExteriorClass::scalar(c.generators(), 1);
  ExteriorClass power = ExteriorClass::scalar(c.generators(), 1);
  Rat factorial(1);
  for (std::size_t k = 1; k <= c.generators() / 2 + 1; ++k) {
    power = wedge(power, c);
    if (power.is_zero()) break;
    factorial *= Rat(static_cast<long>(k));
    out = out + Rat(1) / factorial * power;
  }
  return out;
}

namespace detail {

template <typename Matrix, typename Coeff>
ExteriorClass substitute(const ExteriorClass& c, const Matrix& m,
                         Coeff to_rat) {
  if (m.rows() != c.generators() || m.cols() != c.generators())
    throw error(errc::shape_mismatch,
                "substitution matrix must be n x n for n generators");
  const std::size_t n = c.generators();
  ExteriorClass out(n);
  for (const auto& [mask, coeff] : c.terms()) {
    ExteriorClass acc = ExteriorClass::scalar(n, coeff);
    GenMask rest = mask;
    while (rest) {
      const int j = std::countr_zero(rest);
      rest &= rest - 1;
      ExteriorClass row(n);
      for (std::size_t k = 0; k < n; ++k)
        row.add_term(GenMask(1) << k, to_rat(m(j, k)));
      acc = wedge(acc, row);
      if (acc.is_zero()) break;
    }
    out = out + acc;
  }
  return out;
}

}  // namespace detail

/// Pullback along the lattice map with matrix M: generator j is replaced by
/// the row sum_k M(j,k) * generator_k (functionals transform by the
/// transpose), extended multiplicatively. Top-degree classes scale by
/// det(M).
inline ExteriorClass pullback(const ExteriorClass& c, const IntMatrix& m) {
  return detail::substitute(c, m, [](const Int& x) { return Rat(x); });
}

inline ExteriorClass pullback(const ExteriorClass& c, const RatMatrix& m) {
  return detail::substitute(c, m, [](const Rat& x) { return x; });
}

/// Pushforward along an isogeny with lattice matrix M, realized on rational
/// cohomology as deg(M) * (pullback by M)^{-1}. Satisfies
/// pushforward(pullback(c)) = pullback(pushforward(c)) = deg * c.
inline ExteriorClass pushforward_isogeny(const ExteriorClass& c,
                                         const IntMatrix& m) {
  const Int d = det(m);
  if (d == 0)
    throw error(errc::singular, "isogeny matrix must be nonsingular");
  return Rat(abs(d)) * pullback(c, inverse_rational(m));
}

}  // namespace pav
