#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "cohomkit/group_cochains.hpp"
#include "cohomkit/lie_algebra.hpp"
#include "cohomkit/matrix_group.hpp"

namespace cohomkit {

/// Numerical knobs for the integration/differentiation maps: tensor-product
/// Gauss-Legendre order per axis and the central-difference configuration.
struct QuadratureSpec {
  int order = 16;
  double fd_step = 1e-4;
  int fd_order = 4;
  bool allow_degree5 = false;
};

inline void validate_quadrature(const QuadratureSpec& spec) {
  if (spec.order < 2) throw std::invalid_argument("QuadratureSpec: order must be >= 2");
  if (spec.fd_order != 2 && spec.fd_order != 4)
    throw std::invalid_argument("QuadratureSpec: fd_order must be 2 or 4");
  if (!(spec.fd_step > 0)) throw std::invalid_argument("QuadratureSpec: fd_step must be positive");
}

/// Complex-valued form on a real space, stored as its real and imaginary
/// parts on the exact backend.
struct ComplexForm {
  AltForm<Rational> re;
  AltForm<Rational> im;

  ComplexForm(int dim, int degree) : re(dim, degree), im(dim, degree) {}
};

enum class GeneratorKind { u, u_prime, b };

/// Odd generator data: the trace form of degree 2q-1 on realified gl_n plus
/// the chosen real representative. kind u is the horizontal representative on
/// the symmetric-space side; u_prime and b live on the full complex.
struct Generator {
  int n = 0;
  int q = 0;
  GeneratorKind kind = GeneratorKind::u;
  ComplexForm phi;
  AltForm<Rational> u_basic;
};

namespace detail {

inline const LieAlgebra& cached_gl_realified(int n) {
  static std::mutex guard;
  static std::map<int, LieAlgebra> cache;
  std::lock_guard<std::mutex> lock(guard);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gl_realified(n)).first;
  return it->second;
}

/// Realified basis as exact complex matrices: index 2(kn+l) is E_kl, the
/// following index is i E_kl.
inline std::vector<Matrix<CRational>> realified_basis_matrices(int n) {
  std::vector<Matrix<CRational>> out(2 * n * n, Matrix<CRational>(n, n));
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      out[realify_index(n, k, l, false)].at(k, l) = CRational(Rational(1), Rational(0));
      out[realify_index(n, k, l, true)].at(k, l) = CRational(Rational(0), Rational(1));
    }
  return out;
}

inline int permutation_sign(const std::vector<int>& p) {
  int sign = 1;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) sign = -sign;
  return sign;
}

inline CRational trace_of_product(const std::vector<const Matrix<CRational>*>& chain) {
  Matrix<CRational> acc = *chain[0];
  for (size_t i = 1; i < chain.size(); ++i) acc = acc * (*chain[i]);
  CRational tr;
  for (int d = 0; d < acc.rows; ++d) tr += acc.at(d, d);
  return tr;
}

}  // namespace detail

/// Alternating trace form: Phi(A_1..A_m) = sum over permutations of
/// sgn * tr(A_{g(1)} ... A_{g(m)}), m = 2q-1, materialized coefficientwise
/// on the realified basis.
inline ComplexForm phi_form(int n, int q) {
  if (n < 1 || q < 1) throw std::invalid_argument("phi_form: need n >= 1 and q >= 1");
  const int m = 2 * q - 1;
  const int dim = 2 * n * n;
  auto tuples = enumerate_basis(dim, m);
  long long perms = 1;
  for (int i = 2; i <= m; ++i) perms *= i;
  if (static_cast<long long>(tuples.size()) * perms > 400000)
    throw BudgetError("phi_form: materialization budget exceeded");
  auto basis = detail::realified_basis_matrices(n);
  ComplexForm out(dim, m);
  std::vector<int> order(m);
  std::vector<const Matrix<CRational>*> chain(m);
  for (const IndexTuple& t : tuples) {
    std::iota(order.begin(), order.end(), 0);
    CRational total;
    do {
      for (int i = 0; i < m; ++i) chain[i] = &basis[t[order[i]]];
      CRational tr = detail::trace_of_product(chain);
      if (detail::permutation_sign(order) < 0) tr = -tr;
      total += tr;
    } while (std::next_permutation(order.begin(), order.end()));
    if (!(total.re == Rational(0))) out.re.add_term(t, total.re);
    if (!(total.im == Rational(0))) out.im.add_term(t, total.im);
  }
  return out;
}

/// Pullback along the projection onto the Hermitian part, M -> (M + M*)/2,
/// expressed on realified coordinates.
inline AltForm<Rational> hermitian_part_pullback(const AltForm<Rational>& f, int n) {
  const int dim = 2 * n * n;
  if (f.dim != dim) throw std::invalid_argument("hermitian_part_pullback: dimension mismatch");
  std::vector<std::vector<Rational>> cols(dim, std::vector<Rational>(dim, Rational(0)));
  const Rational half(1, 2);
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      auto& re_col = cols[realify_index(n, k, l, false)];
      re_col[realify_index(n, k, l, false)] += half;
      re_col[realify_index(n, l, k, false)] += half;
      auto& im_col = cols[realify_index(n, k, l, true)];
      im_col[realify_index(n, k, l, true)] += half;
      im_col[realify_index(n, l, k, true)] -= half;
    }
  return pullback(f, cols);
}

/// Build and verify a generator. The representative is Re respectively Im of
/// i^{q-1} Phi; kind u additionally factors through the Hermitian projection
/// and must be exactly horizontal and invariant for u(n).
inline Generator make_generator(int n, int q, GeneratorKind kind) {
  ComplexForm phi = phi_form(n, q);
  AltForm<Rational> re = phi.re;
  AltForm<Rational> im = phi.im;
  switch (((q - 1) % 4 + 4) % 4) {
    case 0:
      break;
    case 1: {
      AltForm<Rational> t = re;
      re = Rational(-1) * im;
      im = t;
      break;
    }
    case 2:
      re = Rational(-1) * re;
      im = Rational(-1) * im;
      break;
    default: {
      AltForm<Rational> t = re;
      re = im;
      im = Rational(-1) * t;
      break;
    }
  }
  AltForm<Rational> rep(2 * n * n, 2 * q - 1);
  switch (kind) {
    case GeneratorKind::u:
      rep = hermitian_part_pullback(re, n);
      break;
    case GeneratorKind::u_prime:
      rep = re;
      break;
    case GeneratorKind::b:
      rep = im;
      break;
  }
  const LieAlgebra& g = detail::cached_gl_realified(n);
  if (!ce_differential(g, rep).coeffs.empty())
    throw PreconditionError("make_generator: representative is not closed");
  if (kind == GeneratorKind::u) {
    const Matrix<Rational> ubasis = u_subalgebra_basis(n);
    std::vector<Rational> eta(ubasis.rows);
    for (int c = 0; c < ubasis.cols; ++c) {
      for (int r = 0; r < ubasis.rows; ++r) eta[r] = ubasis.at(r, c);
      if (rep.degree > 0 && !contract(rep, eta).coeffs.empty())
        throw PreconditionError("make_generator: representative is not horizontal");
      if (!lie_derivative(g, rep, eta).coeffs.empty())
        throw PreconditionError("make_generator: representative is not invariant");
    }
  }
  Generator out{n, q, kind, std::move(phi), std::move(rep)};
  return out;
}

inline Generator u_generator(int n, int q) { return make_generator(n, q, GeneratorKind::u); }

// ---------------------------------------------------------------------------
// Differentiation map.

namespace detail {

struct Stencil {
  std::vector<double> offsets;
  std::vector<double> weights;
};

inline Stencil d1_stencil(int order, double h) {
  if (order == 2) return {{h, -h}, {1.0 / (2 * h), -1.0 / (2 * h)}};
  return {{2 * h, h, -h, -2 * h},
          {-1.0 / (12 * h), 8.0 / (12 * h), -8.0 / (12 * h), 1.0 / (12 * h)}};
}

}  // namespace detail

/// Derivative of a group cochain along algebra directions:
/// sum over permutations s of sgn(s) times the mixed partial at 0 of
/// f(g_1(t), .., g_p(t)) with g_1 = exp(t_1 xi_{s(1)}) and
/// g_j = exp(-t_{j-1} xi_{s(j-1)}) exp(t_j xi_{s(j)}). The sign convention
/// is the one under which this map is a left inverse of the integration map.
inline double ve_differentiate(const GroupCochain& f,
                               const std::vector<std::vector<double>>& xis,
                               const QuadratureSpec& spec = {}) {
  validate_quadrature(spec);
  const int p = f.degree;
  if (static_cast<int>(xis.size()) != p)
    throw std::invalid_argument("ve_differentiate: direction count must equal degree");
  if (p == 0) return f.evaluator({});
  std::vector<CMat> xi(p);
  for (int i = 0; i < p; ++i) {
    xi[i] = unrealify(xis[i]);
    if (xi[i].rows() != f.group_size)
      throw std::invalid_argument("ve_differentiate: direction size does not match group");
  }
  const detail::Stencil st = detail::d1_stencil(spec.fd_order, spec.fd_step);
  const int nodes = static_cast<int>(st.offsets.size());
  std::vector<int> sigma(p);
  std::iota(sigma.begin(), sigma.end(), 0);
  double total = 0;
  do {
    const int sgn = detail::permutation_sign(sigma);
    std::vector<int> m(p, 0);
    while (true) {
      double weight = 1.0;
      for (int i = 0; i < p; ++i) weight *= st.weights[m[i]];
      std::vector<CMat> g(p);
      g[0] = mat_exp(CMat(st.offsets[m[0]] * xi[sigma[0]]));
      for (int j = 1; j < p; ++j)
        g[j] = mat_exp(CMat(-st.offsets[m[j - 1]] * xi[sigma[j - 1]])) *
               mat_exp(CMat(st.offsets[m[j]] * xi[sigma[j]]));
      total += sgn * weight * f.evaluator(g);
      int axis = 0;
      while (axis < p && ++m[axis] == nodes) m[axis++] = 0;
      if (axis == p) break;
    }
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

// ---------------------------------------------------------------------------
// Integration map.

/// Gauss-Legendre nodes and weights on [0, 1].
inline void gauss_legendre_01(int m, std::vector<double>& x, std::vector<double>& w) {
  x.assign(m, 0.0);
  w.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double dp = 0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= m; ++k) {
        double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = m * (t * p1 - p0) / (t * t - 1);
      double step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-15) break;
    }
    x[i] = (1.0 - t) / 2.0;
    w[i] = 1.0 / ((1 - t * t) * dp * dp);
  }
}

namespace detail {

/// Check that alpha is a basic representative for (gl_n, u(n)): all u(n)
/// contractions and Lie derivatives vanish exactly.
inline void require_basic(const AltForm<Rational>& alpha, int n) {
  const LieAlgebra& g = cached_gl_realified(n);
  const Matrix<Rational> ubasis = u_subalgebra_basis(n);
  std::vector<Rational> eta(ubasis.rows);
  for (int c = 0; c < ubasis.cols; ++c) {
    for (int r = 0; r < ubasis.rows; ++r) eta[r] = ubasis.at(r, c);
    if (alpha.degree > 0 && !contract(alpha, eta).coeffs.empty())
      throw PreconditionError("ve_integrate: form is not horizontal");
    if (!lie_derivative(g, alpha, eta).coeffs.empty())
      throw PreconditionError("ve_integrate: form is not invariant");
  }
}

/// Maurer-Cartan evaluation without the public precondition re-check.
inline double mc_eval(const AltForm<double>& alpha, const CMat& p,
                      const std::vector<CMat>& tangents) {
  Eigen::LLT<CMat> llt(p);
  std::vector<std::vector<double>> args;
  args.reserve(tangents.size());
  for (const CMat& v : tangents) args.push_back(realify(CMat(llt.solve(v))));
  return eval(alpha, args);
}

}  // namespace detail

/// Integration of a basic form over the simplex coordinates: the cube [0,1]^p
/// is mapped into the coset space by the staircase of geodesics
/// gamma(t) = lambda_{t_1}(A_1 . lambda_{t_2}(A_2 ... lambda_{t_p}(A_p . base))),
/// the p partial-derivative tangents come from central differences, and the
/// pullback of alpha is integrated with tensor-product Gauss-Legendre.
inline double ve_integrate(const AltForm<Rational>& alpha, const std::vector<CMat>& mats,
                           const QuadratureSpec& spec = {}) {
  validate_quadrature(spec);
  const int p = alpha.degree;
  if (static_cast<int>(mats.size()) != p)
    throw std::invalid_argument("ve_integrate: tuple length must equal form degree");
  const int n = static_cast<int>(std::lround(std::sqrt(alpha.dim / 2.0)));
  if (2 * n * n != alpha.dim)
    throw std::invalid_argument("ve_integrate: form dimension is not a realified gl_n");
  for (const CMat& a : mats)
    if (a.rows() != n || a.cols() != n)
      throw std::invalid_argument("ve_integrate: matrix size does not match form");
  detail::require_basic(alpha, n);
  const AltForm<double> alpha_f = to_float(alpha);
  if (p == 0) return eval(alpha_f, {});
  for (const CMat& a : mats) require_invertible(a);
  if (alpha_f.coeffs.empty()) return 0.0;

  auto gamma = [&](const std::vector<double>& t) {
    CosetPoint q(CMat::Identity(n, n));
    for (int j = p - 1; j >= 0; --j) q = retract(t[j], act(mats[j], q));
    return q.p;
  };

  std::vector<double> x, w;
  gauss_legendre_01(spec.order, x, w);
  const detail::Stencil st = detail::d1_stencil(spec.fd_order, spec.fd_step);

  long long node_count = 1;
  for (int i = 0; i < p; ++i) node_count *= spec.order;
  std::vector<double> contributions(static_cast<size_t>(node_count), 0.0);
  parallel_for(static_cast<int>(node_count), [&](int flat) {
    std::vector<double> t(p);
    double weight = 1.0;
    int rest = flat;
    for (int i = 0; i < p; ++i) {
      int idx = rest % spec.order;
      rest /= spec.order;
      t[i] = x[idx];
      weight *= w[idx];
    }
    CMat point = gamma(t);
    std::vector<CMat> tangents(p, CMat::Zero(n, n));
    for (int i = 0; i < p; ++i) {
      CMat acc = CMat::Zero(n, n);
      std::vector<double> shifted = t;
      for (size_t s = 0; s < st.offsets.size(); ++s) {
        shifted[i] = t[i] + st.offsets[s];
        acc += st.weights[s] * gamma(shifted);
      }
      tangents[i] = acc;
    }
    contributions[flat] = weight * detail::mc_eval(alpha_f, point, tangents);
  });
  double total = 0;
  for (double c : contributions) total += c;
  return total;
}

/// Odd group cocycles v_{2q-1} integrating the basic generators. q = 1 takes
/// the exact polar fast path tr(X); higher q wraps the quadrature.
inline GroupCochain v_generator(int n, int q, const QuadratureSpec& spec = {}) {
  validate_quadrature(spec);
  if (q < 1) throw std::invalid_argument("v_generator: q must be >= 1");
  if (2 * q - 1 > 5) throw BudgetError("v_generator: degree beyond supported budget");
  if (2 * q - 1 == 5 && !spec.allow_degree5)
    throw BudgetError("v_generator: degree-5 quadrature requires the explicit budget flag");
  GroupCochain out;
  out.degree = 2 * q - 1;
  out.group_size = n;
  out.claimed_normalized = true;
  out.claimed_invariant = true;
  if (q == 1) {
    out.evaluator = [](const std::vector<CMat>& g) { return polar(g[0]).x.trace().real(); };
    return out;
  }
  Generator gen = u_generator(n, q);
  out.evaluator = [form = std::move(gen.u_basic), spec](const std::vector<CMat>& g) {
    return ve_integrate(form, g, spec);
  };
  return out;
}

// ---------------------------------------------------------------------------
// Name registry shared with the CLI.

/// Forms: u1@N, u3@N, b1@N, b3@N, uprime1@N, uprime3@N.
inline Generator named_generator(const std::string& name) {
  auto at = name.find('@');
  if (at == std::string::npos) throw ParseError("generator name needs @size: " + name);
  const std::string head = name.substr(0, at);
  int n = 0;
  try {
    size_t used = 0;
    n = std::stoi(name.substr(at + 1), &used);
    if (used != name.size() - at - 1) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw ParseError("generator name has a bad size: " + name);
  }
  if (n < 1 || n > 6) throw ParseError("generator size out of range: " + name);
  GeneratorKind kind;
  std::string deg;
  if (head.rfind("uprime", 0) == 0) {
    kind = GeneratorKind::u_prime;
    deg = head.substr(6);
  } else if (head.rfind("u", 0) == 0) {
    kind = GeneratorKind::u;
    deg = head.substr(1);
  } else if (head.rfind("b", 0) == 0) {
    kind = GeneratorKind::b;
    deg = head.substr(1);
  } else {
    throw ParseError("unknown generator: " + name);
  }
  if (deg != "1" && deg != "3") throw ParseError("unknown generator degree: " + name);
  return make_generator(n, deg == "1" ? 1 : 2, kind);
}

/// Cochains: v1@N, v3@N, logabsdet@N, const:<value>.
inline GroupCochain builtin_cochain(const std::string& name, const QuadratureSpec& spec = {}) {
  if (name.rfind("const:", 0) == 0) {
    try {
      size_t used = 0;
      double c = std::stod(name.substr(6), &used);
      if (used != name.size() - 6) throw std::invalid_argument("");
      return constant_cochain(0, c);
    } catch (const std::exception&) {
      throw ParseError("bad constant cochain: " + name);
    }
  }
  auto at = name.find('@');
  if (at == std::string::npos) throw ParseError("cochain name needs @size: " + name);
  const std::string head = name.substr(0, at);
  int n = 0;
  try {
    size_t used = 0;
    n = std::stoi(name.substr(at + 1), &used);
    if (used != name.size() - at - 1) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw ParseError("cochain name has a bad size: " + name);
  }
  if (n < 1 || n > 6) throw ParseError("cochain size out of range: " + name);
  if (head == "v1") return v_generator(n, 1, spec);
  if (head == "v3") return v_generator(n, 2, spec);
  if (head == "logabsdet") return logabsdet_cochain(n);
  throw ParseError("unknown cochain: " + name);
}

}  // namespace cohomkit
