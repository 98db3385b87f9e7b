#pragma once

#include "pav/error.hpp"
#include "pav/matrix.hpp"
#include "pav/moduli.hpp"
#include "pav/pfaffian.hpp"
#include "pav/smith.hpp"
#include "pav/type_vector.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pav {

/// Exact lattice model of a polarization: a nondegenerate integral
/// alternating form E on Z^{2g}. With the dual basis convention on the
/// target lattice, E is literally the matrix of the isogeny, so the duality
/// statements below become matrix identities:
///
///   lambda^D      = e * E^{-1}          (e = exponent, always integral)
///   lambda^delta  = d_1 * e * E^{-1}
///   phi_Lhat      = d * E^{-1}          (d = degree)
///
/// Positivity (ampleness) is not decidable at this level; it is certified
/// separately by the Riemann relations in the complex-torus layer.
class PolarizationForm {
public:
  explicit PolarizationForm(IntMatrix e) : E_(std::move(e)) {
    if (!E_.is_square() || E_.rows() == 0 || E_.rows() % 2 != 0)
      throw error(errc::shape_mismatch, "form must be 2g x 2g with g >= 1");
    for (std::size_t i = 0; i < E_.rows(); ++i)
      for (std::size_t j = i; j < E_.cols(); ++j)
        if (E_(i, j) != -E_(j, i))
          throw error(errc::not_skew, "form must be alternating");
    if (det(E_) == 0)
      throw error(errc::singular, "form must be nondegenerate");
    g_ = E_.rows() / 2;
  }

  std::size_t genus() const { return g_; }
  const IntMatrix& matrix() const { return E_; }

  bool operator==(const PolarizationForm& o) const { return E_ == o.E_; }
  bool operator!=(const PolarizationForm& o) const { return E_ != o.E_; }

private:
  IntMatrix E_;
  std::size_t g_ = 0;
};

/// Invariant factors of the cokernel Lambda^ / E(Lambda): a divisibility
/// chain of 2g positive integers coming in equal pairs.
struct FiniteAbelianInvariants {
  std::vector<Int> factors;

  bool operator==(const FiniteAbelianInvariants& o) const {
    return factors == o.factors;
  }
};

/// Canonical representative [[0, D], [-D, 0]] with D = diag(d_1,...,d_g).
inline PolarizationForm standard_form(const TypeVector& t) {
  validate_type(t.d);
  const std::size_t g = t.genus();
  IntMatrix e(2 * g, 2 * g);
  for (std::size_t i = 0; i < g; ++i) {
    e(i, g + i) = t.d[i];
    e(g + i, i) = -t.d[i];
  }
  return PolarizationForm(std::move(e));
}

/// Invariant factors of an arbitrary integer matrix, folded into a type
/// vector. The factors of an alternating form come in equal pairs
/// (d_1,d_1,...,d_g,d_g); anything else indicates corrupted input.
inline TypeVector type_of_matrix(const IntMatrix& e) {
  const SnfResult snf = smith_normal_form(e);
  const std::vector<Int> s = snf.diagonal();
  if (s.size() % 2 != 0)
    throw error(errc::odd_dimension, "alternating forms have even dimension");
  std::vector<Int> d;
  d.reserve(s.size() / 2);
  for (std::size_t i = 0; i < s.size(); i += 2) {
    if (s[i] != s[i + 1] || s[i] == 0)
      throw error(errc::pairing_violation,
                  "invariant factors do not come in equal nonzero pairs");
    d.push_back(s[i]);
  }
  return validate_type(std::move(d));
}

inline TypeVector type_of(const PolarizationForm& p) {
  return type_of_matrix(p.matrix());
}

inline FiniteAbelianInvariants kernel_invariants(const PolarizationForm& p) {
  const SnfResult snf = smith_normal_form(p.matrix());
  std::vector<Int> s = snf.diagonal();
  for (std::size_t i = 0; i + 1 < s.size(); i += 2)
    if (s[i] != s[i + 1] || s[i] == 0)
      throw error(errc::pairing_violation,
                  "invariant factors do not come in equal nonzero pairs");
  return FiniteAbelianInvariants{std::move(s)};
}

/// Exponent e(lambda): the largest invariant factor d_g, equivalently the
/// smallest e > 0 making e * E^{-1} integral. Both characterizations are
/// computed and must agree.
inline Int exponent(const PolarizationForm& p) {
  const TypeVector t = type_of(p);
  const Int e = t.last();

  const RatMatrix inv = inverse_rational(p.matrix());
  Int lcm_den = 1;
  for (std::size_t i = 0; i < inv.rows(); ++i)
    for (std::size_t j = 0; j < inv.cols(); ++j) {
      const Int den = denominator(inv(i, j));
      lcm_den = lcm_den / gcd(lcm_den, den) * den;
    }
  if (lcm_den != e)
    throw error(errc::internal,
                "exponent characterizations disagree: " + e.str() + " vs " +
                    lcm_den.str());
  return e;
}

/// Degree d = h^0(L) = d_1 * ... * d_g = |Pf(E)|.
inline Int degree(const PolarizationForm& p) {
  return abs(pfaffian(p.matrix()));
}

namespace detail {

inline PolarizationForm scaled_inverse_form(const PolarizationForm& p,
                                            const Int& c) {
  const RatMatrix scaled = inverse_rational(p.matrix()).scaled(Rat(c));
  if (!scaled.is_integral())
    throw error(errc::integrality_failure,
                "scaled inverse form is not integral");
  return PolarizationForm(scaled.to_int());
}

}  // namespace detail

/// lambda^D = e * E^{-1}: the unique polarization with
/// lambda^D o lambda = e_A and lambda o lambda^D = e_Ahat.
inline PolarizationForm dual_d_form(const PolarizationForm& p) {
  return detail::scaled_inverse_form(p, exponent(p));
}

/// lambda^delta = d_1 * lambda^D; applying it twice returns E exactly.
inline PolarizationForm dual_delta_form(const PolarizationForm& p) {
  const TypeVector t = type_of(p);
  return detail::scaled_inverse_form(p, t.first() * t.last());
}

/// phi_Lhat = d * E^{-1} = d_1*...*d_{g-1} * lambda^D: the polarization
/// induced by the determinant line bundle of the Fourier transform of L.
inline PolarizationForm line_bundle_dual_form(const PolarizationForm& p) {
  return detail::scaled_inverse_form(p, degree(p));
}

/// Unimodular U with U^T * E * U = standard_form(t), t = type_of(E).
struct FrobeniusBasis {
  IntMatrix U;
  TypeVector type;
};

/// Symplectic (Frobenius) basis for an integral alternating form, by
/// congruence reduction. Works on S with the invariant S = U^T * E * U:
/// each stage isolates a hyperbolic pair with the smallest reachable
/// pairing value, clears its row/column by rounded shears (a nonzero
/// remainder strictly shrinks the minimum), and forces the pairing value to
/// divide the remaining block, which yields the divisibility chain.
inline FrobeniusBasis frobenius_basis(const PolarizationForm& p) {
  const std::size_t n = 2 * p.genus();
  const std::size_t g = p.genus();
  IntMatrix s = p.matrix();
  IntMatrix u = IntMatrix::identity(n);

  auto swap_basis = [&](std::size_t i, std::size_t j) {
    s.swap_rows(i, j);
    s.swap_cols(i, j);
    u.swap_cols(i, j);
  };
  auto negate_basis = [&](std::size_t i) {
    s.negate_row(i);
    s.negate_col(i);
    u.negate_col(i);
  };
  // u_dst += c * u_src
  auto shear = [&](std::size_t dst, std::size_t src, const Int& c) {
    s.add_col_multiple(dst, src, c);
    s.add_row_multiple(dst, src, c);
    u.add_col_multiple(dst, src, c);
  };

  for (std::size_t k = 0; k + 1 < n; k += 2) {
    for (;;) {
      bool found = false;
      std::size_t pi = k, pj = k + 1;
      Int best = 0;
      for (std::size_t i = k; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          const Int& x = s(i, j);
          if (x == 0) continue;
          if (!found || abs(x) < best) {
            found = true;
            best = abs(x);
            pi = i;
            pj = j;
          }
        }
      if (!found)
        throw error(errc::internal, "degenerate block in frobenius reduction");

      if (pi != k) swap_basis(pi, k);
      if (pj != k + 1) swap_basis(pj, k + 1);
      if (s(k, k + 1) < 0) negate_basis(k + 1);
      const Int m = s(k, k + 1);

      bool remainder = false;
      for (std::size_t t = k + 2; t < n; ++t) {
        // s(k+1, t) shifts by -c*m under shear(t, k, c)
        if (s(k + 1, t) != 0) {
          shear(t, k, round_div(s(k + 1, t), m));
          if (s(k + 1, t) != 0) remainder = true;
        }
        // s(k, t) shifts by +c*m under shear(t, k+1, c)
        if (s(k, t) != 0) {
          shear(t, k + 1, -round_div(s(k, t), m));
          if (s(k, t) != 0) remainder = true;
        }
      }
      if (remainder) continue;

      bool divides = true;
      for (std::size_t i = k + 2; i < n && divides; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (s(i, j) % m != 0) {
            shear(k, i, 1);
            divides = false;
            break;
          }
      if (divides) break;
    }
  }

  // Hyperbolic pairs sit interleaved at (0,1),(2,3),...; reorder the basis
  // to (e_1..e_g, f_1..f_g) so S becomes [[0,D],[-D,0]].
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < g; ++i) {
    perm[i] = 2 * i;
    perm[g + i] = 2 * i + 1;
  }
  IntMatrix sp(n, n), up(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      sp(i, j) = s(perm[i], perm[j]);
      up(i, j) = u(i, perm[j]);
    }

  std::vector<Int> diag(g);
  for (std::size_t i = 0; i < g; ++i) diag[i] = sp(i, g + i);
  const TypeVector t = validate_type(std::move(diag));

  if (t != type_of(p))
    throw error(errc::internal, "frobenius type disagrees with SNF type");
  if (up.transposed() * p.matrix() * up != standard_form(t).matrix())
    throw error(errc::internal, "frobenius reduction identity failed");
  return FrobeniusBasis{std::move(up), t};
}

/// Per-identity results of the lattice-level duality checks.
struct DualityReport {
  bool input_valid = false;
  std::string input_error;

  bool d_composition_left = false;   // (e E^{-1}) * E == e I
  bool d_composition_right = false;  // E * (e E^{-1}) == e I
  bool d_type_ok = false;            // type(lambda^D) == (1, dg/dg-1, ..., dg/d1)
  bool delta_type_ok = false;        // type(lambda^delta) == delta formula
  bool delta_involution = false;     // delta(delta(E)) == E
  bool exponent_preserved = false;   // e(lambda^delta) == e(lambda)

  bool pass() const {
    return input_valid && d_composition_left && d_composition_right &&
           d_type_ok && delta_type_ok && delta_involution &&
           exponent_preserved;
  }
};

inline DualityReport verify_duality(const IntMatrix& e) {
  DualityReport r;
  std::optional<PolarizationForm> maybe;
  try {
    maybe.emplace(e);
  } catch (const error& err) {
    r.input_error = err.what();
    return r;
  }
  const PolarizationForm& p = *maybe;
  r.input_valid = true;

  const TypeVector t = type_of(p);
  const std::size_t g = t.genus();
  const Int ex = exponent(p);
  const IntMatrix id_e = ex * IntMatrix::identity(2 * g);

  const PolarizationForm d_dual = dual_d_form(p);
  r.d_composition_left = (d_dual.matrix() * p.matrix() == id_e);
  r.d_composition_right = (p.matrix() * d_dual.matrix() == id_e);
  r.d_type_ok = (type_of(d_dual) == d_dual_type(t));

  const PolarizationForm delta = dual_delta_form(p);
  r.delta_type_ok = (type_of(delta) == delta_type(t));
  r.delta_involution = (dual_delta_form(delta).matrix() == p.matrix());
  r.exponent_preserved = (exponent(delta) == ex);
  return r;
}

inline DualityReport verify_duality(const PolarizationForm& p) {
  return verify_duality(p.matrix());
}

}  // namespace pav
