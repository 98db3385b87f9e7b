#pragma once

#include "pav/error.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

namespace pav {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Dense row-major matrix over arbitrary-precision integers.
///
/// All arithmetic is exact; nothing here ever rounds. Operations return new
/// values and instances carry no shared mutable state, so matrices can be
/// used freely from multiple threads.
class IntMatrix {
public:
  IntMatrix() = default;

  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {
    if (rows == 0 || cols == 0)
      throw error(errc::shape_mismatch, "matrix dimensions must be positive");
  }

  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    if (rows_ == 0 || cols_ == 0)
      throw error(errc::shape_mismatch, "matrix dimensions must be positive");
    a_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_)
        throw error(errc::shape_mismatch, "ragged initializer list");
      a_.insert(a_.end(), r.begin(), r.end());
    }
  }

  static IntMatrix zero(std::size_t rows, std::size_t cols) {
    return IntMatrix(rows, cols);
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix diagonal(const std::vector<Int>& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  IntMatrix transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }

  // Elementary row/column operations, used by the normal-form algorithms.
  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < cols_; ++k)
      std::swap((*this)(i, k), (*this)(j, k));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t k = 0; k < rows_; ++k)
      std::swap((*this)(k, i), (*this)(k, j));
  }
  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
  }
  void negate_col(std::size_t j) {
    for (std::size_t k = 0; k < rows_; ++k) (*this)(k, j) = -(*this)(k, j);
  }
  void add_row_multiple(std::size_t dst, std::size_t src, const Int& c) {
    for (std::size_t k = 0; k < cols_; ++k)
      (*this)(dst, k) += c * (*this)(src, k);
  }
  void add_col_multiple(std::size_t dst, std::size_t src, const Int& c) {
    for (std::size_t k = 0; k < rows_; ++k)
      (*this)(k, dst) += c * (*this)(k, src);
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> a_;
};

inline IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw error(errc::shape_mismatch, "matrix addition shape mismatch");
  IntMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) + b(i, j);
  return r;
}

inline IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw error(errc::shape_mismatch, "matrix subtraction shape mismatch");
  IntMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) - b(i, j);
  return r;
}

inline IntMatrix operator-(const IntMatrix& a) {
  IntMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = -a(i, j);
  return r;
}

inline IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.rows())
    throw error(errc::shape_mismatch, "matrix product shape mismatch");
  IntMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Int& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

// Constrained templates: an unconstrained `const Int&` parameter would make
// overload resolution instantiate boost's converting constructor on foreign
// expression types (e.g. Eigen's), which hard-errors.
template <typename S>
  requires(std::same_as<S, Int> || std::integral<S>)
IntMatrix operator*(const S& c, const IntMatrix& a) {
  IntMatrix r(a.rows(), a.cols());
  const Int f(c);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = f * a(i, j);
  return r;
}

template <typename S>
  requires(std::same_as<S, Int> || std::integral<S>)
IntMatrix operator*(const IntMatrix& a, const S& c) {
  return c * a;
}

inline std::ostream& operator<<(std::ostream& os, const IntMatrix& a) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    os << (i == 0 ? "[" : " ");
    for (std::size_t j = 0; j < a.cols(); ++j)
      os << a(i, j) << (j + 1 < a.cols() ? " " : "");
    os << (i + 1 < a.rows() ? "\n" : "]");
  }
  return os;
}

/// Exact determinant by fraction-free (Bareiss) elimination. Entry growth
/// stays polynomial; every division below is exact by the Sylvester identity.
inline Int det(const IntMatrix& m) {
  if (!m.is_square()) throw error(errc::non_square, "det requires a square matrix");
  const std::size_t n = m.rows();
  IntMatrix a = m;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      a.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      a(i, k) = 0;
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

/// Dense matrix over arbitrary-precision rationals. Entries are kept in
/// canonical reduced form (positive denominator, coprime parts) by the
/// underlying number type.
class RatMatrix {
public:
  RatMatrix() = default;

  RatMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {
    if (rows == 0 || cols == 0)
      throw error(errc::shape_mismatch, "matrix dimensions must be positive");
  }

  explicit RatMatrix(const IntMatrix& m) : RatMatrix(m.rows(), m.cols()) {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = Rat(m(i, j));
  }

  static RatMatrix identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Rat& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rat& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  bool operator==(const RatMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }
  bool operator!=(const RatMatrix& o) const { return !(*this == o); }

  RatMatrix scaled(const Rat& c) const {
    RatMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(i, j) = c * (*this)(i, j);
    return r;
  }

  bool is_integral() const {
    for (const Rat& x : a_)
      if (denominator(x) != 1) return false;
    return true;
  }

  /// Numerator matrix; requires all denominators equal to one.
  IntMatrix to_int() const {
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        const Rat& x = (*this)(i, j);
        if (denominator(x) != 1)
          throw error(errc::integrality_failure, "matrix entry is not an integer");
        r(i, j) = numerator(x);
      }
    return r;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rat> a_;
};

inline RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
  if (a.cols() != b.rows())
    throw error(errc::shape_mismatch, "matrix product shape mismatch");
  RatMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Rat& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

/// Exact inverse over the rationals via Gauss-Jordan elimination.
inline RatMatrix inverse_rational(const IntMatrix& m) {
  if (!m.is_square())
    throw error(errc::non_square, "inverse requires a square matrix");
  const std::size_t n = m.rows();
  RatMatrix a(m);
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw error(errc::singular, "matrix is singular");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(k, j), a(p, j));
        std::swap(inv(k, j), inv(p, j));
      }
    }
    const Rat pivot = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= pivot;
      inv(k, j) /= pivot;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      const Rat f = a(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

/// Quotient rounded to the nearest integer (ties toward zero). Used by the
/// normal-form reductions so remainders shrink as fast as possible.
inline Int round_div(const Int& a, const Int& b) {
  Int q = a / b;
  Int r = a - q * b;
  if (2 * abs(r) > abs(b)) q += ((r < 0) == (b < 0)) ? 1 : -1;
  return q;
}

}  // namespace pav
