#pragma once

// Small exact linear algebra over Z and Q: integer matrices, Hermite normal
// form of full-rank lattices, canonical reduction modulo a lattice, and
// enumeration of Z^d / L.

#include <cstddef>
#include <functional>
#include <ostream>
#include <utility>
#include <vector>

#include "hecke/error.hpp"
#include "hecke/number.hpp"

namespace hecke::lattice {

using QVec = std::vector<Rational>;

template <class T>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t d) {
    Matrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(const std::vector<std::vector<T>>& rows) {
    if (rows.empty()) throw DomainError("empty matrix");
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols_) throw DomainError("ragged matrix rows");
      for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DomainError("matrix shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::vector<std::vector<T>> to_rows() const {
    std::vector<std::vector<T>> out(rows_, std::vector<T>(cols_));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
    return out;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<BigInt>;
using RatMatrix = Matrix<Rational>;

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

template <class T>
Matrix<T> power(const Matrix<T>& m, std::size_t e) {
  Matrix<T> result = Matrix<T>::identity(m.rows());
  Matrix<T> base = m;
  while (e > 0) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

inline QVec apply(const RatMatrix& m, const QVec& v) {
  if (m.cols() != v.size()) throw DomainError("vector length does not match matrix");
  QVec out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0 && v[j] != 0) out[i] += m(i, j) * v[j];
  return out;
}

inline QVec apply(const IntMatrix& m, const QVec& v) {
  if (m.cols() != v.size()) throw DomainError("vector length does not match matrix");
  QVec out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0 && v[j] != 0) out[i] += v[j] * m(i, j);
  return out;
}

/// Gaussian elimination over Q.
inline Rational determinant(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("determinant of a non-square matrix");
  RatMatrix a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a(pivot, c) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == 0) continue;
      Rational f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

inline BigInt determinant(const IntMatrix& m) {
  Rational d = determinant(to_rational(m));
  return d.get_num();
}

inline RatMatrix inverse(const RatMatrix& m) {
  if (m.rows() != m.cols()) throw DomainError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && a(pivot, c) == 0) ++pivot;
    if (pivot == n) throw DomainError("singular matrix");
    if (pivot != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(pivot, j), a(c, j));
        std::swap(inv(pivot, j), inv(c, j));
      }
    Rational f = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= f;
      inv(c, j) /= f;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      Rational g = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= g * a(c, j);
        inv(r, j) -= g * inv(c, j);
      }
    }
  }
  return inv;
}

/// Column-style Hermite normal form of the full-rank lattice B Z^d: an upper
/// triangular H with positive diagonal, 0 <= H(i,k) < H(i,i) for k > i, and
/// H Z^d = B Z^d.
inline IntMatrix hermite_normal_form(const IntMatrix& basis) {
  if (basis.rows() != basis.cols()) throw DomainError("lattice basis must be square");
  const std::size_t d = basis.rows();
  IntMatrix h = basis;
  auto combine = [&](std::size_t ci, std::size_t cj, const BigInt& a11, const BigInt& a12,
                     const BigInt& a21, const BigInt& a22) {
    // (col_i, col_j) <- (a11 col_i + a12 col_j, a21 col_i + a22 col_j)
    for (std::size_t r = 0; r < d; ++r) {
      BigInt x = h(r, ci), y = h(r, cj);
      h(r, ci) = a11 * x + a12 * y;
      h(r, cj) = a21 * x + a22 * y;
    }
  };
  for (std::size_t i = d; i-- > 0;) {
    for (std::size_t j = 0; j < i; ++j) {
      if (h(i, j) == 0) continue;
      const BigInt a = h(i, i);
      const BigInt b = h(i, j);
      BigInt g, x, y;
      mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      // new col_i has entry g in row i, new col_j has entry 0; determinant -1.
      combine(i, j, x, y, BigInt(b / g), BigInt(-a / g));
    }
    if (h(i, i) == 0) throw DomainError("lattice basis is singular");
    if (h(i, i) < 0)
      for (std::size_t r = 0; r < d; ++r) h(r, i) = -h(r, i);
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = i + 1; k < d; ++k) {
      BigInt q;
      mpz_fdiv_q(q.get_mpz_t(), h(i, k).get_mpz_t(), h(i, i).get_mpz_t());
      if (q == 0) continue;
      for (std::size_t r = 0; r < d; ++r) h(r, k) -= q * h(r, i);
    }
  return h;
}

/// Canonical representative of x + H Z^d in the box 0 <= x_i < H(i,i).
inline QVec reduce_mod_hnf(const IntMatrix& hnf, QVec x) {
  const std::size_t d = hnf.rows();
  if (x.size() != d) throw DomainError("vector length does not match lattice");
  BigInt q, scaled;
  for (std::size_t i = d; i-- > 0;) {
    // q = floor(x_i / h_ii) without forming the rational quotient.
    scaled = x[i].get_den() * hnf(i, i);
    mpz_fdiv_q(q.get_mpz_t(), x[i].get_num_mpz_t(), scaled.get_mpz_t());
    if (q == 0) continue;
    for (std::size_t r = 0; r <= i; ++r)
      if (hnf(r, i) != 0) x[r] -= q * hnf(r, i);
  }
  return x;
}

/// |Z^d : H Z^d|.
inline BigInt box_volume(const IntMatrix& hnf) {
  BigInt v = 1;
  for (std::size_t i = 0; i < hnf.rows(); ++i) v *= hnf(i, i);
  return v;
}

/// Visits every integer point of the fundamental box of an HNF in
/// lexicographic order; these represent Z^d / H Z^d exactly once each.
inline void for_each_box_point(const IntMatrix& hnf, const std::function<void(const QVec&)>& visit) {
  const std::size_t d = hnf.rows();
  std::vector<BigInt> counter(d, 0);
  QVec point(d);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) point[i] = Rational(counter[i]);
    visit(point);
    std::size_t i = d;
    while (i-- > 0) {
      if (++counter[i] < hnf(i, i)) break;
      counter[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) return;
  }
}

} // namespace hecke::lattice
