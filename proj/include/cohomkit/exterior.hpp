#pragma once

#include <map>
#include <type_traits>
#include <vector>

#include "cohomkit/common.hpp"

namespace cohomkit {

/// Finite-dimensional based vector space; labels are optional and only
/// used for printing.
struct BasedSpace {
  int dim = 0;
  std::vector<std::string> labels;
};

using IndexTuple = std::vector<int>;

/// Alternating p-form on a dim-dimensional based space, stored sparsely as
/// coefficients on strictly increasing basis index tuples. The convention is
/// the determinant one: the basis covector e^{i1}...e^{ip} evaluates on
/// (v1,...,vp) as det of the (i1..ip) minor, so there are no 1/p! factors.
/// Mixing scalar backends is a compile error; promotion is to_float below.
template <class K>
struct AltForm {
  int dim = 0;
  int degree = 0;
  std::map<IndexTuple, K> coeffs;  // increasing tuples only; zeros are dropped

  AltForm() = default;
  AltForm(int d, int p) : dim(d), degree(p) {}

  void add_term(const IndexTuple& key, const K& c) {
    if (c == K(0)) return;
    auto it = coeffs.find(key);
    if (it == coeffs.end()) {
      coeffs.emplace(key, c);
    } else {
      it->second += c;
      if (it->second == K(0)) coeffs.erase(it);
    }
  }

  bool is_zero() const { return coeffs.empty(); }

  friend bool operator==(const AltForm& x, const AltForm& y) {
    return x.dim == y.dim && x.degree == y.degree && x.coeffs == y.coeffs;
  }
};

/// All strictly increasing p-tuples in [0, dim), lexicographic order.
inline std::vector<IndexTuple> enumerate_basis(int dim, int p) {
  std::vector<IndexTuple> out;
  if (p < 0 || p > dim) return out;
  IndexTuple t(p);
  for (int i = 0; i < p; ++i) t[i] = i;
  while (true) {
    out.push_back(t);
    int i = p - 1;
    while (i >= 0 && t[i] == dim - p + i) --i;
    if (i < 0) break;
    ++t[i];
    for (int j = i + 1; j < p; ++j) t[j] = t[j - 1] + 1;
  }
  if (p == 0) out = {IndexTuple{}};
  return out;
}

template <class K>
AltForm<K> basis_covector(int dim, const IndexTuple& key) {
  AltForm<K> f(dim, static_cast<int>(key.size()));
  f.add_term(key, K(1));
  return f;
}

namespace detail {
// Sort idx, counting transposition parity; returns 0 if a repeat is found.
inline int sort_sign(IndexTuple& idx) {
  int sign = 1;
  for (size_t i = 1; i < idx.size(); ++i) {
    size_t j = i;
    while (j > 0 && idx[j] < idx[j - 1]) {
      std::swap(idx[j], idx[j - 1]);
      sign = -sign;
      --j;
    }
    if (j > 0 && idx[j] == idx[j - 1]) return 0;
  }
  return sign;
}

template <class K>
K det(std::vector<std::vector<K>> m) {
  const int n = static_cast<int>(m.size());
  K result(1);
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    if constexpr (std::is_floating_point_v<K>) {
      K mag = K(0);
      for (int i = col; i < n; ++i)
        if (std::abs(m[i][col]) > mag) {
          mag = std::abs(m[i][col]);
          pivot = i;
        }
      if (pivot < 0 || mag == K(0)) return K(0);
    } else {
      for (int i = col; i < n; ++i)
        if (!(m[i][col] == K(0))) {
          pivot = i;
          break;
        }
      if (pivot < 0) return K(0);
    }
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      result = -result;
    }
    result *= m[col][col];
    K inv = K(1) / m[col][col];
    for (int i = col + 1; i < n; ++i) {
      K f = m[i][col] * inv;
      if (f == K(0)) continue;
      for (int j = col; j < n; ++j) m[i][j] -= f * m[col][j];
    }
  }
  return result;
}
}  // namespace detail

/// Multilinear alternating evaluation on degree-many coordinate vectors.
template <class K>
K eval(const AltForm<K>& f, const std::vector<std::vector<K>>& vectors) {
  if (static_cast<int>(vectors.size()) != f.degree)
    throw std::invalid_argument("eval: argument count must equal form degree");
  for (const auto& v : vectors)
    if (static_cast<int>(v.size()) != f.dim)
      throw std::invalid_argument("eval: vector dimension mismatch");
  if (f.degree == 0) {
    auto it = f.coeffs.find(IndexTuple{});
    return it == f.coeffs.end() ? K(0) : it->second;
  }
  K total(0);
  const int p = f.degree;
  std::vector<std::vector<K>> minor(p, std::vector<K>(p));
  for (const auto& [key, c] : f.coeffs) {
    for (int i = 0; i < p; ++i)
      for (int j = 0; j < p; ++j) minor[i][j] = vectors[j][key[i]];
    total += c * detail::det(minor);
  }
  return total;
}

template <class K>
AltForm<K> operator+(const AltForm<K>& x, const AltForm<K>& y) {
  if (x.dim != y.dim || x.degree != y.degree)
    throw std::invalid_argument("form addition: degree/dimension mismatch");
  AltForm<K> z = x;
  for (const auto& [k, c] : y.coeffs) z.add_term(k, c);
  return z;
}

template <class K>
AltForm<K> operator-(const AltForm<K>& x, const AltForm<K>& y) {
  if (x.dim != y.dim || x.degree != y.degree)
    throw std::invalid_argument("form subtraction: degree/dimension mismatch");
  AltForm<K> z = x;
  for (const auto& [k, c] : y.coeffs) z.add_term(k, -c);
  return z;
}

template <class K>
AltForm<K> operator*(const K& s, const AltForm<K>& x) {
  AltForm<K> z(x.dim, x.degree);
  if (s == K(0)) return z;
  for (const auto& [k, c] : x.coeffs) z.coeffs.emplace(k, s * c);
  return z;
}

template <class K>
AltForm<K> wedge(const AltForm<K>& x, const AltForm<K>& y) {
  if (x.dim != y.dim) throw std::invalid_argument("wedge: ambient dimension mismatch");
  AltForm<K> z(x.dim, x.degree + y.degree);
  for (const auto& [kx, cx] : x.coeffs)
    for (const auto& [ky, cy] : y.coeffs) {
      IndexTuple merged = kx;
      merged.insert(merged.end(), ky.begin(), ky.end());
      int sign = detail::sort_sign(merged);
      if (sign == 0) continue;
      K term = cx * cy;
      if (sign < 0) term = -term;
      z.add_term(merged, term);
    }
  return z;
}

/// Interior product with a coordinate vector.
template <class K>
AltForm<K> contract(const AltForm<K>& f, const std::vector<K>& v) {
  if (static_cast<int>(v.size()) != f.dim)
    throw std::invalid_argument("contract: vector dimension mismatch");
  if (f.degree == 0) throw std::invalid_argument("contract: cannot contract a 0-form");
  AltForm<K> z(f.dim, f.degree - 1);
  for (const auto& [key, c] : f.coeffs)
    for (size_t j = 0; j < key.size(); ++j) {
      const K& vj = v[key[j]];
      if (vj == K(0)) continue;
      IndexTuple rest;
      rest.reserve(key.size() - 1);
      for (size_t t = 0; t < key.size(); ++t)
        if (t != j) rest.push_back(key[t]);
      K term = vj * c;
      z.add_term(rest, (j % 2 == 0) ? term : -term);
    }
  return z;
}

/// Pullback along a linear map given columnwise: map_cols[j] is the image of
/// the j-th source basis vector, expressed in target coordinates.
template <class K>
AltForm<K> pullback(const AltForm<K>& f, const std::vector<std::vector<K>>& map_cols) {
  const int src_dim = static_cast<int>(map_cols.size());
  AltForm<K> z(src_dim, f.degree);
  if (f.degree == 0) {
    auto it = f.coeffs.find(IndexTuple{});
    if (it != f.coeffs.end()) z.add_term(IndexTuple{}, it->second);
    return z;
  }
  std::vector<std::vector<K>> args(f.degree);
  for (const IndexTuple& key : enumerate_basis(src_dim, f.degree)) {
    for (int j = 0; j < f.degree; ++j) args[j] = map_cols[key[j]];
    z.add_term(key, eval(f, args));
  }
  return z;
}

/// Explicit backend promotion; the only sanctioned way to mix exact and
/// floating point forms.
inline AltForm<double> to_float(const AltForm<Rational>& f) {
  AltForm<double> z(f.dim, f.degree);
  for (const auto& [k, c] : f.coeffs) z.add_term(k, to_double(c));
  return z;
}

/// Coefficients of f in the enumerate_basis(dim, degree) ordering.
template <class K>
std::vector<K> coefficient_vector(const AltForm<K>& f) {
  std::vector<IndexTuple> basis = enumerate_basis(f.dim, f.degree);
  std::vector<K> v(basis.size(), K(0));
  for (size_t i = 0; i < basis.size(); ++i) {
    auto it = f.coeffs.find(basis[i]);
    if (it != f.coeffs.end()) v[i] = it->second;
  }
  return v;
}

template <class K>
AltForm<K> from_coefficient_vector(int dim, int degree, const std::vector<K>& v) {
  std::vector<IndexTuple> basis = enumerate_basis(dim, degree);
  if (v.size() != basis.size())
    throw std::invalid_argument("from_coefficient_vector: length mismatch");
  AltForm<K> f(dim, degree);
  for (size_t i = 0; i < basis.size(); ++i) f.add_term(basis[i], v[i]);
  return f;
}

}  // namespace cohomkit
