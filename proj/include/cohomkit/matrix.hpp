#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <type_traits>
#include <vector>

#include "cohomkit/common.hpp"

namespace cohomkit {

/// Dense row-major matrix over an arbitrary field scalar.
/// With T = Rational all eliminations below are exact.
template <class T>
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<T> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, T(0)) {}

  T& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const T& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = T(1);
    return m;
  }

  static Matrix zero(int r, int c) { return Matrix(r, c); }

  bool is_zero() const {
    for (const T& x : a)
      if (!(x == T(0))) return false;
    return true;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

template <class T>
Matrix<T> operator*(const Matrix<T>& x, const Matrix<T>& y) {
  assert(x.cols == y.rows);
  Matrix<T> z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const T& v = x.at(i, k);
      if (v == T(0)) continue;
      for (int j = 0; j < y.cols; ++j) z.at(i, j) += v * y.at(k, j);
    }
  return z;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& x, const Matrix<T>& y) {
  assert(x.rows == y.rows && x.cols == y.cols);
  Matrix<T> z = x;
  for (size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
  return z;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& x, const Matrix<T>& y) {
  assert(x.rows == y.rows && x.cols == y.cols);
  Matrix<T> z = x;
  for (size_t i = 0; i < z.a.size(); ++i) z.a[i] -= y.a[i];
  return z;
}

template <class T>
Matrix<T> operator*(const T& s, const Matrix<T>& x) {
  Matrix<T> z = x;
  for (T& v : z.a) v *= s;
  return z;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& x) {
  Matrix<T> z(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) z.at(j, i) = x.at(i, j);
  return z;
}

template <class T>
Matrix<T> hconcat(const Matrix<T>& x, const Matrix<T>& y) {
  assert(x.rows == y.rows);
  Matrix<T> z(x.rows, x.cols + y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int j = 0; j < x.cols; ++j) z.at(i, j) = x.at(i, j);
    for (int j = 0; j < y.cols; ++j) z.at(i, x.cols + j) = y.at(i, j);
  }
  return z;
}

template <class T>
Matrix<T> vconcat(const Matrix<T>& x, const Matrix<T>& y) {
  assert(x.cols == y.cols);
  Matrix<T> z(x.rows + y.rows, x.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) z.at(i, j) = x.at(i, j);
  for (int i = 0; i < y.rows; ++i)
    for (int j = 0; j < x.cols; ++j) z.at(x.rows + i, j) = y.at(i, j);
  return z;
}

template <class T>
Matrix<T> from_columns(const std::vector<std::vector<T>>& cols, int rows) {
  Matrix<T> z(rows, static_cast<int>(cols.size()));
  for (int j = 0; j < z.cols; ++j) {
    assert(static_cast<int>(cols[j].size()) == rows);
    for (int i = 0; i < rows; ++i) z.at(i, j) = cols[j][i];
  }
  return z;
}

template <class T>
std::vector<T> column(const Matrix<T>& m, int j) {
  std::vector<T> v(m.rows);
  for (int i = 0; i < m.rows; ++i) v[i] = m.at(i, j);
  return v;
}

template <class T>
std::vector<T> mat_vec(const Matrix<T>& m, const std::vector<T>& v) {
  assert(static_cast<int>(v.size()) == m.cols);
  std::vector<T> w(m.rows, T(0));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (!(m.at(i, j) == T(0))) w[i] += m.at(i, j) * v[j];
  return w;
}

namespace detail {
// Pivot choice: first nonzero for exact fields, largest magnitude for floats.
template <class T>
int pick_pivot(const Matrix<T>& m, int col, int from_row) {
  if constexpr (std::is_floating_point_v<T>) {
    int best = -1;
    T mag = T(0);
    for (int i = from_row; i < m.rows; ++i) {
      T v = std::abs(m.at(i, col));
      if (v > mag) {
        mag = v;
        best = i;
      }
    }
    return (best >= 0 && mag > T(1e-13)) ? best : -1;
  } else {
    for (int i = from_row; i < m.rows; ++i)
      if (!(m.at(i, col) == T(0))) return i;
    return -1;
  }
}
}  // namespace detail

/// Reduce m to reduced row echelon form in place; returns pivot columns.
template <class T>
std::vector<int> rref_in_place(Matrix<T>& m) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < m.cols && row < m.rows; ++col) {
    int pr = detail::pick_pivot(m, col, row);
    if (pr < 0) continue;
    if (pr != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(row, j));
    T inv = T(1) / m.at(row, col);
    for (int j = col; j < m.cols; ++j) m.at(row, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == row) continue;
      T f = m.at(i, col);
      if (f == T(0)) continue;
      for (int j = col; j < m.cols; ++j) m.at(i, j) -= f * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class T>
int rank(Matrix<T> m) {
  return static_cast<int>(rref_in_place(m).size());
}

/// Columns of the returned matrix form a basis of ker(m).
/// Over Rational the basis is the canonical rref kernel basis.
template <class T>
Matrix<T> nullspace(Matrix<T> m) {
  std::vector<int> pivots = rref_in_place(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  int nfree = m.cols - static_cast<int>(pivots.size());
  Matrix<T> basis(m.cols, nfree);
  int out = 0;
  for (int free_col = 0; free_col < m.cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    basis.at(free_col, out) = T(1);
    for (size_t pi = 0; pi < pivots.size(); ++pi) basis.at(pivots[pi], out) = -m.at(static_cast<int>(pi), free_col);
    ++out;
  }
  return basis;
}

/// Solve A X = B exactly. Requires the system to be consistent with a
/// unique solution (A of full column rank); throws otherwise.
template <class T>
Matrix<T> solve(const Matrix<T>& A, const Matrix<T>& B) {
  assert(A.rows == B.rows);
  Matrix<T> aug = hconcat(A, B);
  std::vector<int> pivots = rref_in_place(aug);
  for (int c : pivots)
    if (c >= A.cols) throw std::domain_error("solve: inconsistent linear system");
  if (static_cast<int>(pivots.size()) < A.cols) throw std::domain_error("solve: solution not unique");
  Matrix<T> X(A.cols, B.cols);
  for (int i = 0; i < A.cols; ++i)
    for (int j = 0; j < B.cols; ++j) X.at(i, j) = aug.at(i, A.cols + j);
  return X;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& A) {
  assert(A.rows == A.cols);
  return solve(A, Matrix<T>::identity(A.rows));
}

/// True if v lies in the column span of A (exact for Rational).
template <class T>
bool in_column_space(const Matrix<T>& A, const std::vector<T>& v) {
  Matrix<T> vc(A.rows, 1);
  for (int i = 0; i < A.rows; ++i) vc.at(i, 0) = v[i];
  return rank(hconcat(A, vc)) == rank(A);
}

template <class T>
Matrix<T> blockdiag(const Matrix<T>& x, const Matrix<T>& y) {
  Matrix<T> z(x.rows + y.rows, x.cols + y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) z.at(i, j) = x.at(i, j);
  for (int i = 0; i < y.rows; ++i)
    for (int j = 0; j < y.cols; ++j) z.at(x.rows + i, x.cols + j) = y.at(i, j);
  return z;
}

/// Random integer matrix of determinant +-1; its exact inverse has integer
/// entries, so conjugating preserves exactness of any identity.
inline Matrix<Rational> random_unimodular(Rng& rng, int n) {
  Matrix<Rational> m = Matrix<Rational>::identity(n);
  for (int t = 0; t < 2 * n + 2; ++t) {
    int i = rand_int(rng, 0, std::max(0, n - 1));
    int j = rand_int(rng, 0, std::max(0, n - 1));
    if (i == j || n < 2) continue;
    Rational f(rand_int(rng, -2, 2));
    for (int c = 0; c < n; ++c) m.at(i, c) += f * m.at(j, c);
  }
  for (int t = 0; t + 1 < n; ++t) {
    int j = rand_int(rng, t, n - 1);
    if (j != t)
      for (int c = 0; c < n; ++c) std::swap(m.at(t, c), m.at(j, c));
  }
  return m;
}

inline Matrix<double> to_float(const Matrix<Rational>& m) {
  Matrix<double> z(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) z.a[i] = to_double(m.a[i]);
  return z;
}

}  // namespace cohomkit
