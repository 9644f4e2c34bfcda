#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <unsupported/Eigen/KroneckerProduct>

#include "cohomkit/group_cochains.hpp"
#include "cohomkit/vanest.hpp"

namespace cohomkit {

// ---------------------------------------------------------------------------
// Group representations. A representation is a multiplicative matrix-valued
// map on a matrix group; the sampler pins down which group that is (complex
// or real invertible matrices of the source size).
// ---------------------------------------------------------------------------

struct GroupRep {
  int source_size = 0;
  int target_size = 0;
  std::function<CMat(const CMat&)> map;
  std::function<CMat(Rng&)> sample;
};

/// Multiplicativity and unit spot-check. Residuals are relative to the
/// magnitude of the product so large samples do not mask failures.
inline void validate_rep(const GroupRep& rep, Rng& rng, int samples = 3) {
  if (rep.source_size < 1 || rep.target_size < 1)
    throw std::invalid_argument("validate_rep: sizes must be positive");
  if (!rep.map || !rep.sample) throw std::invalid_argument("validate_rep: missing map or sampler");
  const CMat at_unit = rep.map(CMat::Identity(rep.source_size, rep.source_size));
  if ((at_unit - CMat::Identity(rep.target_size, rep.target_size)).cwiseAbs().maxCoeff() > 1e-8)
    throw PreconditionError("validate_rep: map does not send the identity to the identity");
  for (int s = 0; s < samples; ++s) {
    CMat a = rep.sample(rng);
    CMat b = rep.sample(rng);
    CMat lhs = rep.map(CMat(a * b));
    CMat rhs = rep.map(a) * rep.map(b);
    double scale = std::max(1.0, rhs.cwiseAbs().maxCoeff());
    if ((lhs - rhs).cwiseAbs().maxCoeff() > 1e-8 * scale)
      throw PreconditionError("validate_rep: map is not multiplicative");
  }
}

inline GroupRep identity_rep(int n) {
  GroupRep rep;
  rep.source_size = rep.target_size = n;
  rep.map = [](const CMat& g) { return g; };
  rep.sample = [n](Rng& rng) { return random_gl(rng, n); };
  return rep;
}

/// Identity map sampled over real invertible matrices only.
inline GroupRep real_identity_rep(int n) {
  GroupRep rep = identity_rep(n);
  rep.sample = [n](Rng& rng) { return random_gl_real(rng, n); };
  return rep;
}

inline GroupRep trivial_rep(int m, int n) {
  GroupRep rep;
  rep.source_size = m;
  rep.target_size = n;
  rep.map = [n](const CMat&) { return CMat(CMat::Identity(n, n)); };
  rep.sample = [m](Rng& rng) { return random_gl(rng, m); };
  return rep;
}

/// z -> z^k on invertible 1x1 matrices. Multiplicative for any integer k
/// because the source is commutative.
inline GroupRep power_rep(int k) {
  GroupRep rep;
  rep.source_size = rep.target_size = 1;
  rep.map = [k](const CMat& g) {
    CMat z(1, 1);
    z(0, 0) = std::pow(g(0, 0), k);
    return z;
  };
  rep.sample = [](Rng& rng) { return random_gl(rng, 1); };
  return rep;
}

/// A -> det(A) as a rank-one representation.
inline GroupRep det_rep(int m) {
  GroupRep rep;
  rep.source_size = m;
  rep.target_size = 1;
  rep.map = [](const CMat& g) {
    CMat z(1, 1);
    z(0, 0) = g.determinant();
    return z;
  };
  rep.sample = [m](Rng& rng) { return random_gl(rng, m); };
  return rep;
}

inline GroupRep direct_sum(const GroupRep& v, const GroupRep& w) {
  if (v.source_size != w.source_size)
    throw std::invalid_argument("direct_sum: representations have different source groups");
  GroupRep rep;
  rep.source_size = v.source_size;
  rep.target_size = v.target_size + w.target_size;
  rep.map = [v, w](const CMat& g) {
    CMat z = CMat::Zero(v.target_size + w.target_size, v.target_size + w.target_size);
    z.topLeftCorner(v.target_size, v.target_size) = v.map(g);
    z.bottomRightCorner(w.target_size, w.target_size) = w.map(g);
    return z;
  };
  rep.sample = v.sample;
  return rep;
}

inline GroupRep tensor(const GroupRep& v, const GroupRep& w) {
  if (v.source_size != w.source_size)
    throw std::invalid_argument("tensor: representations have different source groups");
  GroupRep rep;
  rep.source_size = v.source_size;
  rep.target_size = v.target_size * w.target_size;
  rep.map = [v, w](const CMat& g) {
    return CMat(Eigen::kroneckerProduct(v.map(g), w.map(g)));
  };
  rep.sample = v.sample;
  return rep;
}

/// Contragredient representation g -> transpose(inverse(V(g))).
inline GroupRep dual(const GroupRep& v) {
  GroupRep rep;
  rep.source_size = v.source_size;
  rep.target_size = v.target_size;
  rep.map = [v](const CMat& g) {
    CMat m = v.map(g);
    require_invertible(m);
    return CMat(m.inverse().transpose());
  };
  rep.sample = v.sample;
  return rep;
}

/// Forget the complex structure of the target: each value becomes the real
/// 2n x 2n block matrix [[Re, -Im], [Im, Re]].
inline GroupRep realify(const GroupRep& v) {
  GroupRep rep;
  rep.source_size = v.source_size;
  rep.target_size = 2 * v.target_size;
  rep.map = [v](const CMat& g) {
    CMat m = v.map(g);
    const int n = static_cast<int>(m.rows());
    CMat z = CMat::Zero(2 * n, 2 * n);
    z.topLeftCorner(n, n) = m.real().cast<std::complex<double>>();
    z.bottomRightCorner(n, n) = m.real().cast<std::complex<double>>();
    z.topRightCorner(n, n) = (-m.imag()).cast<std::complex<double>>();
    z.bottomLeftCorner(n, n) = m.imag().cast<std::complex<double>>();
    return z;
  };
  rep.sample = v.sample;
  return rep;
}

// ---------------------------------------------------------------------------
// Characteristic classes of group representations: pull the odd cocycles
// back along the representation.
// ---------------------------------------------------------------------------

inline GroupCochain group_class(const GroupRep& rep, int q, const QuadratureSpec& spec = {}) {
  auto rng = seeded_rng(0, "classes.validate");
  validate_rep(rep, rng);
  GroupCochain base = v_generator(rep.target_size, q, spec);
  GroupCochain out;
  out.degree = base.degree;
  out.group_size = rep.source_size;
  out.claimed_normalized = true;
  auto map = rep.map;
  const int m = rep.source_size;
  out.evaluator = [base, map, m](const std::vector<CMat>& g) {
    std::vector<CMat> mapped;
    mapped.reserve(g.size());
    for (const CMat& a : g) {
      if (a.rows() != m || a.cols() != m)
        throw std::invalid_argument("group_class: matrix size does not match the source group");
      mapped.push_back(map(a));
    }
    return base(mapped);
  };
  return out;
}

// ---------------------------------------------------------------------------
// Algebra representations: exact linear maps into realified gl_n with the
// bracket preserved on basis pairs.
// ---------------------------------------------------------------------------

struct AlgebraRep {
  LieAlgebra source;
  int target_size = 0;
  Matrix<Rational> map;  // (2 n^2) x dim(source), columns are basis images
};

inline void validate_algebra_rep(const AlgebraRep& rep) {
  const int n = rep.target_size;
  if (n < 1) throw std::invalid_argument("validate_algebra_rep: target size must be positive");
  if (rep.map.rows != 2 * n * n || rep.map.cols != rep.source.dim())
    throw std::invalid_argument("validate_algebra_rep: map shape mismatch");
  const LieAlgebra& gl = detail::cached_gl_realified(n);
  auto column = [&](int c) {
    std::vector<Rational> v(rep.map.rows);
    for (int r = 0; r < rep.map.rows; ++r) v[r] = rep.map.at(r, c);
    return v;
  };
  for (int i = 0; i < rep.source.dim(); ++i)
    for (int j = i + 1; j < rep.source.dim(); ++j) {
      std::vector<Rational> ei(rep.source.dim(), Rational(0)), ej(rep.source.dim(), Rational(0));
      ei[i] = 1;
      ej[j] = 1;
      std::vector<Rational> src = bracket(rep.source, ei, ej);
      std::vector<Rational> lhs(rep.map.rows, Rational(0));
      for (int c = 0; c < rep.map.cols; ++c)
        if (!(src[c] == Rational(0)))
          for (int r = 0; r < rep.map.rows; ++r) lhs[r] += src[c] * rep.map.at(r, c);
      std::vector<Rational> rhs = bracket(gl, column(i), column(j));
      if (lhs != rhs)
        throw PreconditionError("validate_algebra_rep: map does not preserve the bracket");
    }
}

inline AlgebraRep identity_algebra_rep(int n) {
  AlgebraRep rep;
  rep.source = gl_realified(n);
  rep.target_size = n;
  rep.map = Matrix<Rational>::identity(2 * n * n);
  return rep;
}

/// Pullback of the basic generator along the algebra map. Exactly closed on
/// the source whenever the source brackets are (they always are here).
inline AltForm<Rational> algebra_class(const AlgebraRep& rep, int q) {
  validate_algebra_rep(rep);
  AltForm<Rational> u = u_generator(rep.target_size, q).u_basic;
  std::vector<std::vector<Rational>> cols(rep.source.dim());
  for (int c = 0; c < rep.map.cols; ++c) {
    cols[c].resize(rep.map.rows);
    for (int r = 0; r < rep.map.rows; ++r) cols[c][r] = rep.map.at(r, c);
  }
  return pullback(u, cols);
}

// ---------------------------------------------------------------------------
// Compatibility of the two class constructions through differentiation.
// ---------------------------------------------------------------------------

/// Finite-difference linearization of the representation at the identity:
/// columns are the realified derivatives along each realified basis
/// direction of the source.
inline Matrix<double> derived_algebra_map(const GroupRep& rep, double fd_step = 1e-4,
                                          int fd_order = 4) {
  const int m = rep.source_size;
  const int n = rep.target_size;
  const detail::Stencil st = detail::d1_stencil(fd_order, fd_step);
  Matrix<double> jac(2 * n * n, 2 * m * m);
  for (int j = 0; j < 2 * m * m; ++j) {
    std::vector<double> e(2 * m * m, 0.0);
    e[j] = 1.0;
    const CMat xi = unrealify(e);
    CMat acc = CMat::Zero(n, n);
    for (size_t s = 0; s < st.offsets.size(); ++s)
      acc += st.weights[s] * rep.map(mat_exp(CMat(st.offsets[s] * xi)));
    std::vector<double> col = realify(acc);
    for (int r = 0; r < 2 * n * n; ++r) jac.at(r, j) = col[r];
  }
  return jac;
}

/// Residual of differentiating the group-level class against the class of
/// the linearized representation, sampled over random direction tuples.
inline double ve_compatibility_check(const GroupRep& rep, int q, Rng& rng, int samples = 5,
                                     const QuadratureSpec& spec = {}) {
  validate_quadrature(spec);
  GroupCochain cls = group_class(rep, q, spec);
  Matrix<double> jac = derived_algebra_map(rep, spec.fd_step, spec.fd_order);
  AltForm<double> u = to_float(u_generator(rep.target_size, q).u_basic);
  const int p = 2 * q - 1;
  const int m = rep.source_size;
  double worst = 0;
  for (int s = 0; s < samples; ++s) {
    std::vector<std::vector<double>> xis(p, std::vector<double>(2 * m * m));
    for (auto& xi : xis)
      for (double& x : xi) x = rand_normal(rng);
    std::vector<std::vector<double>> images(p, std::vector<double>(jac.rows, 0.0));
    for (int i = 0; i < p; ++i)
      for (int c = 0; c < jac.cols; ++c)
        for (int r = 0; r < jac.rows; ++r) images[i][r] += jac.at(r, c) * xis[i][c];
    double lhs = ve_differentiate(cls, xis, spec);
    double rhs = eval(u, images);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Structural identities, exposed as sampled residuals.
// ---------------------------------------------------------------------------

namespace detail {
inline std::vector<CMat> sample_tuple(const GroupRep& rep, Rng& rng, int count) {
  std::vector<CMat> t(count);
  for (CMat& g : t) g = rep.sample(rng);
  return t;
}
}  // namespace detail

/// class(V + W) = class(V) + class(W).
inline double sum_law_residual(const GroupRep& v, const GroupRep& w, int q, Rng& rng,
                               int samples = 5, const QuadratureSpec& spec = {}) {
  GroupCochain cv = group_class(v, q, spec);
  GroupCochain cw = group_class(w, q, spec);
  GroupCochain cs = group_class(direct_sum(v, w), q, spec);
  double worst = 0;
  for (int s = 0; s < samples; ++s) {
    std::vector<CMat> t = detail::sample_tuple(v, rng, 2 * q - 1);
    worst = std::max(worst, std::abs(cs(t) - cv(t) - cw(t)));
  }
  return worst;
}

/// class(V (x) W) = rank(W) class(V) + rank(V) class(W).
inline double tensor_law_residual(const GroupRep& v, const GroupRep& w, int q, Rng& rng,
                                  int samples = 5, const QuadratureSpec& spec = {}) {
  GroupCochain cv = group_class(v, q, spec);
  GroupCochain cw = group_class(w, q, spec);
  GroupCochain ct = group_class(tensor(v, w), q, spec);
  double worst = 0;
  for (int s = 0; s < samples; ++s) {
    std::vector<CMat> t = detail::sample_tuple(v, rng, 2 * q - 1);
    worst = std::max(worst, std::abs(ct(t) - w.target_size * cv(t) - v.target_size * cw(t)));
  }
  return worst;
}

/// Dual compatibility through the inversion map of the group: the class of
/// the dual evaluated on a tuple matches the original class on the
/// entrywise-inverted, order-reversed tuple.
inline double dual_law_residual(const GroupRep& v, int q, Rng& rng, int samples = 5,
                                const QuadratureSpec& spec = {}) {
  GroupCochain cv = group_class(v, q, spec);
  GroupCochain cd = group_class(dual(v), q, spec);
  const int p = 2 * q - 1;
  double worst = 0;
  for (int s = 0; s < samples; ++s) {
    std::vector<CMat> t = detail::sample_tuple(v, rng, p);
    std::vector<CMat> ri(p);
    for (int i = 0; i < p; ++i) ri[i] = t[p - 1 - i].inverse();
    worst = std::max(worst, std::abs(cd(t) - cv(ri)));
  }
  return worst;
}

/// Classes of real representations vanish in degree 4q' - 1 (q even here).
/// Returns the largest sampled magnitude of the class after the entrywise
/// complexification (which is a no-op at matrix level: values embed as is).
inline double real_vanishing_check(const GroupRep& rep, int q, Rng& rng, int samples = 3,
                                   const QuadratureSpec& spec = {}) {
  if (q < 2 || q % 2 != 0)
    throw std::invalid_argument("real_vanishing_check: q must be even and >= 2");
  GroupCochain cls = group_class(rep, q, spec);
  const int p = 2 * q - 1;
  double worst = 0;
  for (int s = 0; s < samples; ++s) {
    std::vector<CMat> t = detail::sample_tuple(rep, rng, p);
    for (const CMat& g : t) {
      CMat b = rep.map(g);
      double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
      if (b.imag().cwiseAbs().maxCoeff() > 1e-9 * scale)
        throw PreconditionError("real_vanishing_check: representation has non-real entries");
    }
    worst = std::max(worst, std::abs(cls(t)));
  }
  return worst;
}

/// Changing the Hermitian metric to h'(x, y) = h(Sx, Sy) conjugates the
/// whole generator chain by S. Cohomologous degree-1 cocycles over a point
/// agree exactly (a degree-0 coboundary vanishes), so the two evaluators
/// must coincide.
inline double metric_independence_residual(int n, const CMat& s, Rng& rng, int samples = 10,
                                           const QuadratureSpec& spec = {}) {
  if (s.rows() != n || s.cols() != n)
    throw std::invalid_argument("metric_independence_residual: conjugator size mismatch");
  require_invertible(s);
  GroupCochain v1 = v_generator(n, 1, spec);
  const CMat sinv = s.inverse();
  double worst = 0;
  for (int k = 0; k < samples; ++k) {
    CMat a = random_gl(rng, n);
    worst = std::max(worst, std::abs(v1({CMat(s * a * sinv)}) - v1({a})));
  }
  return worst;
}

}  // namespace cohomkit
