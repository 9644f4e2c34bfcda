#pragma once

#include <string>
#include <vector>

#include "cohomkit/complex.hpp"
#include "cohomkit/exterior.hpp"
#include "cohomkit/matrix.hpp"

namespace cohomkit {

/// Real Lie algebra given by exact rational structure constants on a chosen
/// basis. Construction validates antisymmetry and the Jacobi identity.
struct LieAlgebra {
  BasedSpace space;
  // c[i][j] = coordinates of [e_i, e_j]; full antisymmetric table.
  std::vector<std::vector<std::vector<Rational>>> c;

  int dim() const { return space.dim; }
};

/// [x, y] by bilinear extension of the structure constants.
inline std::vector<Rational> bracket(const LieAlgebra& g, const std::vector<Rational>& x,
                                     const std::vector<Rational>& y) {
  const int n = g.dim();
  std::vector<Rational> out(n, Rational(0));
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (y[j] == 0 || i == j) continue;
      const Rational f = x[i] * y[j];
      for (int m = 0; m < n; ++m)
        if (!(g.c[i][j][m] == 0)) out[m] += f * g.c[i][j][m];
    }
  }
  return out;
}

struct BracketEntry {
  int i = 0;
  int j = 0;
  std::vector<Rational> coeffs;
};

/// Build and validate a Lie algebra. Entries may come in any (i, j) order
/// with i != j; duplicates for the same unordered pair are rejected.
inline LieAlgebra make_lie_algebra(int dim, std::vector<std::string> labels,
                                   const std::vector<BracketEntry>& entries) {
  if (dim < 0) throw ParseError("lie algebra: negative dimension");
  if (!labels.empty() && static_cast<int>(labels.size()) != dim)
    throw ParseError("lie algebra: label count != dim");
  LieAlgebra g;
  g.space.dim = dim;
  g.space.labels = std::move(labels);
  g.c.assign(dim, std::vector<std::vector<Rational>>(dim, std::vector<Rational>(dim, Rational(0))));
  std::vector<std::vector<bool>> seen(dim, std::vector<bool>(dim, false));
  for (const auto& e : entries) {
    if (e.i < 0 || e.i >= dim || e.j < 0 || e.j >= dim)
      throw ParseError("lie algebra: bracket index out of range");
    if (e.i == e.j) throw JacobiError("lie algebra: [e_i, e_i] must be zero");
    if (static_cast<int>(e.coeffs.size()) != dim)
      throw ParseError("lie algebra: bracket coefficient vector has wrong length");
    if (seen[e.i][e.j]) throw ParseError("lie algebra: duplicate bracket entry");
    seen[e.i][e.j] = seen[e.j][e.i] = true;
    for (int m = 0; m < dim; ++m) {
      g.c[e.i][e.j][m] = e.coeffs[m];
      g.c[e.j][e.i][m] = -e.coeffs[m];
    }
  }
  // Jacobi on basis triples: [[ei,ej],ek] + [[ej,ek],ei] + [[ek,ei],ej] = 0.
  auto bb = [&](int i, int j, int k, std::vector<Rational>& acc) {
    for (int m = 0; m < dim; ++m) {
      const Rational& f = g.c[i][j][m];
      if (f == 0) continue;
      for (int t = 0; t < dim; ++t)
        if (!(g.c[m][k][t] == 0)) acc[t] += f * g.c[m][k][t];
    }
  };
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = j + 1; k < dim; ++k) {
        std::vector<Rational> acc(dim, Rational(0));
        bb(i, j, k, acc);
        bb(j, k, i, acc);
        bb(k, i, j, acc);
        for (const Rational& v : acc)
          if (!(v == 0)) throw JacobiError("lie algebra: Jacobi identity fails on basis triple");
      }
  return g;
}

namespace detail {
// Signed coefficient of f on an arbitrary (possibly unsorted) index tuple.
inline Rational signed_coeff(const AltForm<Rational>& f, IndexTuple idx) {
  int sign = sort_sign(idx);
  if (sign == 0) return Rational(0);
  auto it = f.coeffs.find(idx);
  if (it == f.coeffs.end()) return Rational(0);
  return sign > 0 ? it->second : -it->second;
}
}  // namespace detail

/// Chevalley-Eilenberg differential at a point base (zero anchor):
/// (df)(x_1..x_{p+1}) = sum_{a<b} (-1)^{a+b} f([x_a,x_b], x_1..^a..^b..x_{p+1})
/// with 1-based sign convention, i.e. the classical formula.
inline AltForm<Rational> ce_differential(const LieAlgebra& g, const AltForm<Rational>& f) {
  if (f.dim != g.dim()) throw std::invalid_argument("ce_differential: form dimension mismatch");
  const int p1 = f.degree + 1;
  AltForm<Rational> out(g.dim(), p1);
  if (p1 > g.dim() || f.degree == 0) return out;
  for (const IndexTuple& J : enumerate_basis(g.dim(), p1)) {
    Rational coeff(0);
    for (int a = 0; a < p1; ++a)
      for (int b = a + 1; b < p1; ++b) {
        const std::vector<Rational>& br = g.c[J[a]][J[b]];
        IndexTuple rest;
        rest.reserve(p1 - 1);
        rest.push_back(-1);  // placeholder for the bracket slot
        for (int t = 0; t < p1; ++t)
          if (t != a && t != b) rest.push_back(J[t]);
        Rational val(0);
        for (int m = 0; m < g.dim(); ++m) {
          if (br[m] == 0) continue;
          rest[0] = m;
          val += br[m] * detail::signed_coeff(f, rest);
        }
        coeff += ((a + b) % 2 == 0) ? val : -val;
      }
    out.add_term(J, coeff);
  }
  return out;
}

/// Cartan formula; on 0-forms this is zero at a point base.
inline AltForm<Rational> lie_derivative(const LieAlgebra& g, const AltForm<Rational>& f,
                                        const std::vector<Rational>& eta) {
  AltForm<Rational> out = contract(ce_differential(g, f), eta);
  if (f.degree > 0) out = out + ce_differential(g, contract(f, eta));
  return out;
}

/// Matrix of the CE differential Lambda^p -> Lambda^{p+1} in the
/// enumerate_basis coordinate ordering.
inline Matrix<Rational> ce_matrix(const LieAlgebra& g, int p) {
  std::vector<IndexTuple> src = enumerate_basis(g.dim(), p);
  std::vector<std::vector<Rational>> cols;
  cols.reserve(src.size());
  for (const IndexTuple& T : src)
    cols.push_back(coefficient_vector(ce_differential(g, basis_covector<Rational>(g.dim(), T))));
  const int target_rows =
      static_cast<int>(enumerate_basis(g.dim(), p + 1).size());
  return from_columns(cols, target_rows);
}

inline Matrix<Rational> contraction_matrix(int dim, int p, const std::vector<Rational>& eta) {
  std::vector<IndexTuple> src = enumerate_basis(dim, p);
  std::vector<std::vector<Rational>> cols;
  cols.reserve(src.size());
  for (const IndexTuple& T : src)
    cols.push_back(coefficient_vector(contract(basis_covector<Rational>(dim, T), eta)));
  const int target_rows = static_cast<int>(enumerate_basis(dim, p - 1).size());
  return from_columns(cols, target_rows);
}

inline Matrix<Rational> lie_derivative_matrix(const LieAlgebra& g, int p,
                                              const std::vector<Rational>& eta) {
  std::vector<IndexTuple> src = enumerate_basis(g.dim(), p);
  std::vector<std::vector<Rational>> cols;
  cols.reserve(src.size());
  for (const IndexTuple& T : src)
    cols.push_back(
        coefficient_vector(lie_derivative(g, basis_covector<Rational>(g.dim(), T), eta)));
  return from_columns(cols, static_cast<int>(src.size()));
}

/// CE complex of g up to degree max_degree (inclusive).
inline GradedComplex ce_complex(const LieAlgebra& g, int max_degree = -1) {
  const int top = (max_degree < 0 || max_degree > g.dim()) ? g.dim() : max_degree;
  GradedComplex cx;
  for (int p = 0; p <= top; ++p)
    cx.dims.push_back(static_cast<int>(enumerate_basis(g.dim(), p).size()));
  for (int p = 0; p + 1 <= top; ++p) cx.d.push_back(ce_matrix(g, p));
  return cx;
}

/// Basic subcomplex of (g, k): per degree, the joint kernel of contraction
/// and Lie derivative along every column of k_basis. `embed[p]` carries the
/// chosen kernel basis back into Lambda^p coordinates, and `restricted.d[p]`
/// satisfies d_p . embed[p] = embed[p+1] . restricted.d[p] exactly.
struct BasicSubcomplex {
  GradedComplex restricted;
  std::vector<Matrix<Rational>> embed;
};

inline BasicSubcomplex basic_subcomplex(const LieAlgebra& g, const Matrix<Rational>& k_basis,
                                        int max_degree = -1) {
  if (k_basis.rows != g.dim())
    throw std::invalid_argument("basic_subcomplex: subalgebra ambient dimension mismatch");
  if (rank(k_basis) != k_basis.cols)
    throw std::invalid_argument("basic_subcomplex: subalgebra basis is linearly dependent");
  // Closure of k under the bracket; required for the restricted complex to make sense.
  for (int a = 0; a < k_basis.cols; ++a)
    for (int b = a + 1; b < k_basis.cols; ++b)
      if (!in_column_space(k_basis, bracket(g, column(k_basis, a), column(k_basis, b))))
        throw std::invalid_argument("basic_subcomplex: k is not a subalgebra");
  // Horizontal p-forms live in Lambda^p of the annihilator of k, so degrees
  // above dim g - dim k vanish identically and are not materialized.
  const int cap = g.dim() - k_basis.cols;
  const int top = (max_degree < 0 || max_degree > cap) ? cap : max_degree;
  BasicSubcomplex out;
  for (int p = 0; p <= top; ++p) {
    const int np = static_cast<int>(enumerate_basis(g.dim(), p).size());
    Matrix<Rational> constraints(0, np);
    for (int e = 0; e < k_basis.cols; ++e) {
      std::vector<Rational> eta = column(k_basis, e);
      if (p > 0) constraints = vconcat(constraints, contraction_matrix(g.dim(), p, eta));
      constraints = vconcat(constraints, lie_derivative_matrix(g, p, eta));
    }
    Matrix<Rational> E = (constraints.rows == 0) ? Matrix<Rational>::identity(np)
                                                 : nullspace(constraints);
    out.embed.push_back(E);
    out.restricted.dims.push_back(E.cols);
  }
  for (int p = 0; p + 1 <= top; ++p) {
    Matrix<Rational> image = ce_matrix(g, p) * out.embed[p];
    if (out.embed[p + 1].cols == 0) {
      if (!image.is_zero())
        throw std::logic_error("basic_subcomplex: subcomplex not closed under d");
      out.restricted.d.push_back(Matrix<Rational>::zero(0, out.embed[p].cols));
    } else {
      out.restricted.d.push_back(solve(out.embed[p + 1], image));
    }
  }
  return out;
}

inline std::vector<int> relative_betti(const LieAlgebra& g, const Matrix<Rational>& k_basis) {
  return betti(basic_subcomplex(g, k_basis).restricted);
}

// ---------------------------------------------------------------------------
// Builtins.

inline LieAlgebra abelian_algebra(int n) {
  return make_lie_algebra(n, {}, {});
}

inline LieAlgebra heisenberg_algebra() {
  std::vector<Rational> z(3, Rational(0));
  z[2] = 1;
  return make_lie_algebra(3, {"x", "y", "z"}, {{0, 1, z}});
}

inline LieAlgebra su2_algebra() {
  auto unit = [](int m) {
    std::vector<Rational> v(3, Rational(0));
    v[m] = 1;
    return v;
  };
  return make_lie_algebra(3, {"e1", "e2", "e3"},
                          {{0, 1, unit(2)}, {1, 2, unit(0)}, {2, 0, unit(1)}});
}

/// Realification convention for gl_n(C): basis index 2*(i*n+j) is Re E_{ij},
/// index 2*(i*n+j)+1 is Im E_{ij} (i.e. the matrix i*E_{ij}), rows first.
/// Shared by every module that talks to matrices.
inline int realify_index(int n, int i, int j, bool imag) { return 2 * (i * n + j) + (imag ? 1 : 0); }

namespace detail {
// Entry-exact product bookkeeping for the realified gl_n brackets:
// basis matrix M_a = (re? E_{ij} : i E_{ij}); [M_a, M_b] expands over
// Gaussian-integer entries which we push back into the realified basis.
struct GaussInt {
  long long re = 0;
  long long im = 0;
};
}  // namespace detail

inline LieAlgebra gl_realified(int n) {
  const int dim = 2 * n * n;
  auto basis_entry = [&](int idx, int& bi, int& bj, bool& imag) {
    imag = idx % 2 == 1;
    int cell = idx / 2;
    bi = cell / n;
    bj = cell % n;
  };
  std::vector<BracketEntry> entries;
  for (int a = 0; a < dim; ++a)
    for (int b = a + 1; b < dim; ++b) {
      int ai, aj, bi, bj;
      bool aim, bim;
      basis_entry(a, ai, aj, aim);
      basis_entry(b, bi, bj, bim);
      // [u E_{ai,aj}, v E_{bi,bj}] = uv (delta_{aj,bi} E_{ai,bj} - delta_{bj,ai} E_{bi,aj})
      // with u, v in {1, i}.
      detail::GaussInt uv;
      if (!aim && !bim) uv = {1, 0};
      else if (aim != bim) uv = {0, 1};
      else uv = {-1, 0};
      std::vector<Rational> coeffs(dim, Rational(0));
      auto put = [&](int r, int cjj, long long vre, long long vim) {
        if (vre != 0) coeffs[realify_index(n, r, cjj, false)] += vre;
        if (vim != 0) coeffs[realify_index(n, r, cjj, true)] += vim;
      };
      if (aj == bi) put(ai, bj, uv.re, uv.im);
      if (bj == ai) put(bi, aj, -uv.re, -uv.im);
      bool nonzero = false;
      for (const Rational& v : coeffs)
        if (!(v == 0)) {
          nonzero = true;
          break;
        }
      if (nonzero) entries.push_back({a, b, coeffs});
    }
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      labels.push_back("reE" + std::to_string(i + 1) + std::to_string(j + 1));
      labels.push_back("imE" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  return make_lie_algebra(dim, labels, entries);
}

/// u(n) inside realified gl_n(C): i E_kk, E_kl - E_lk and i(E_kl + E_lk)
/// for k < l. Columns are exact integer vectors.
inline Matrix<Rational> u_subalgebra_basis(int n) {
  std::vector<std::vector<Rational>> cols;
  const int dim = 2 * n * n;
  auto vec = [&]() { return std::vector<Rational>(dim, Rational(0)); };
  for (int k = 0; k < n; ++k) {
    auto v = vec();
    v[realify_index(n, k, k, true)] = 1;
    cols.push_back(v);
  }
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) {
      auto v = vec();
      v[realify_index(n, k, l, false)] = 1;
      v[realify_index(n, l, k, false)] = -1;
      cols.push_back(v);
      auto w = vec();
      w[realify_index(n, k, l, true)] = 1;
      w[realify_index(n, l, k, true)] = 1;
      cols.push_back(w);
    }
  return from_columns(cols, dim);
}

/// Builtin algebra registry used by the CLI: abelianN, heisenberg, su2, glNC.
inline LieAlgebra builtin_algebra(const std::string& name) {
  if (name == "heisenberg") return heisenberg_algebra();
  if (name == "su2") return su2_algebra();
  if (name.rfind("abelian", 0) == 0) {
    try {
      return abelian_algebra(std::stoi(name.substr(7)));
    } catch (const std::exception&) {
      throw ParseError("unknown builtin algebra: " + name);
    }
  }
  if (name.size() >= 4 && name.front() == 'g' && name[1] == 'l' && name.back() == 'C') {
    try {
      int n = std::stoi(name.substr(2, name.size() - 3));
      if (n >= 1 && n <= 6) return gl_realified(n);
    } catch (const std::exception&) {
    }
  }
  throw ParseError("unknown builtin algebra: " + name);
}

/// Builtin relative subalgebra registry: uN (valid inside glNC).
inline Matrix<Rational> builtin_subalgebra(const std::string& name, const LieAlgebra& g) {
  if (name.size() >= 2 && name.front() == 'u') {
    int n = 0;
    try {
      n = std::stoi(name.substr(1));
    } catch (const std::exception&) {
      throw ParseError("unknown builtin subalgebra: " + name);
    }
    if (g.dim() != 2 * n * n)
      throw ParseError("builtin subalgebra " + name + " does not fit an algebra of dimension " +
                       std::to_string(g.dim()));
    return u_subalgebra_basis(n);
  }
  throw ParseError("unknown builtin subalgebra: " + name);
}

}  // namespace cohomkit
