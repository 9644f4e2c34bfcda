#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cohomkit/cmatrix.hpp"
#include "cohomkit/exterior.hpp"
#include "cohomkit/lie_algebra.hpp"

namespace cohomkit {

/// A = exp(x) u with x Hermitian and u unitary.
struct PolarParts {
  CMat x;
  CMat u;
};

/// Point of the symmetric space GL_n(C)/U(n), represented by the unique
/// positive-definite Hermitian matrix in its coset.
struct CosetPoint {
  CMat p;

  explicit CosetPoint(CMat m) : p(std::move(m)) {
    if (!is_hermitian(p)) throw PreconditionError("CosetPoint: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMat> es((p + p.adjoint()) / 2.0);
    if (!(es.eigenvalues().minCoeff() > 0))
      throw PreconditionError("CosetPoint: matrix is not positive definite");
  }

  int size() const { return static_cast<int>(p.rows()); }
};

inline PolarParts polar(const CMat& a) {
  require_invertible(a);
  PolarParts out;
  out.x = herm_log(CMat(a * a.adjoint())) / 2.0;
  out.u = herm_exp(CMat(-out.x)) * a;
  if ((out.x - out.x.adjoint()).norm() > kStructTol * std::max(1.0, out.x.norm()))
    throw PreconditionError("polar: Hermitian part lost symmetry");
  if ((out.u * out.u.adjoint() - CMat::Identity(a.rows(), a.cols())).norm() >
      kStructTol * a.rows())
    throw PreconditionError("polar: unitary part is not unitary");
  if ((herm_exp(out.x) * out.u - a).norm() > kReconTol * std::max(1.0, a.norm()))
    throw PreconditionError("polar: reconstruction exceeded tolerance");
  return out;
}

/// Coset of A, i.e. the positive part (A A*)^{1/2} of its polar splitting.
inline CosetPoint coset(const CMat& a) {
  require_invertible(a);
  return CosetPoint(herm_sqrt(CMat(a * a.adjoint())));
}

/// Left action of GL_n on cosets: a . P = (a P^2 a*)^{1/2}.
inline CosetPoint act(const CMat& a, const CosetPoint& pt) {
  require_invertible(a);
  return CosetPoint(herm_sqrt(CMat(a * pt.p * pt.p * a.adjoint())));
}

/// Geodesic from the base point through P, evaluated at time t.
inline CosetPoint retract(double t, const CosetPoint& pt) {
  return CosetPoint(herm_pow(pt.p, t));
}

namespace detail {

inline void require_un_horizontal(const AltForm<double>& alpha, int n) {
  if (alpha.degree == 0) return;
  double scale = 1.0;
  for (const auto& [key, c] : alpha.coeffs) scale = std::max(scale, std::abs(c));
  const Matrix<Rational> basis = u_subalgebra_basis(n);
  std::vector<double> eta(basis.rows);
  for (int c = 0; c < basis.cols; ++c) {
    for (int r = 0; r < basis.rows; ++r) eta[r] = to_double(basis.at(r, c));
    for (const auto& [key, coef] : contract(alpha, eta).coeffs)
      if (std::abs(coef) > 1e-9 * scale)
        throw PreconditionError("mc_pullback: form is not u(n)-horizontal");
  }
}

}  // namespace detail

/// Pullback of a left-invariant horizontal form to the coset space:
/// tangents V_i at P are carried to the identity by P^{-1} V_i and fed to
/// alpha in realified coordinates.
inline double mc_pullback(const AltForm<double>& alpha, const CosetPoint& pt,
                          const std::vector<CMat>& tangents) {
  const int n = pt.size();
  if (alpha.dim != 2 * n * n)
    throw std::invalid_argument("mc_pullback: form dimension does not match group size");
  if (static_cast<int>(tangents.size()) != alpha.degree)
    throw std::invalid_argument("mc_pullback: tangent count must equal form degree");
  for (const CMat& v : tangents)
    if (v.rows() != n || v.cols() != n)
      throw std::invalid_argument("mc_pullback: tangent size mismatch");
  detail::require_un_horizontal(alpha, n);
  Eigen::LLT<CMat> llt(pt.p);
  std::vector<std::vector<double>> args;
  args.reserve(tangents.size());
  for (const CMat& v : tangents) args.push_back(realify(CMat(llt.solve(v))));
  return eval(alpha, args);
}

}  // namespace cohomkit
