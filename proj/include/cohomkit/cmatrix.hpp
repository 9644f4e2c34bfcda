#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <vector>

#include "cohomkit/common.hpp"

namespace cohomkit {

/// Dense complex matrices; all group elements and tangent vectors live here.
using CMat = Eigen::MatrixXcd;

/// Structural checks are relative at 1e-10, reconstructions at 1e-9.
constexpr double kStructTol = 1e-10;
constexpr double kReconTol = 1e-9;

inline bool is_hermitian(const CMat& m, double tol = kStructTol) {
  return (m - m.adjoint()).norm() <= tol * std::max(1.0, m.norm());
}

inline bool is_unitary(const CMat& m, double tol = kStructTol) {
  return (m * m.adjoint() - CMat::Identity(m.rows(), m.cols())).norm() <= tol * m.rows();
}

inline void require_invertible(const CMat& a) {
  const double scale = std::pow(std::max(1.0, a.norm()), a.rows());
  if (!(std::abs(a.determinant()) > 1e-12 * scale))
    throw PreconditionError("matrix is singular or nearly singular");
}

/// f applied to a Hermitian matrix through its unitary eigendecomposition.
template <class F>
CMat herm_apply(const CMat& x, F&& f, const char* what) {
  if (!is_hermitian(x)) throw PreconditionError(std::string(what) + ": input not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> es((x + x.adjoint()) / 2.0);
  Eigen::VectorXd lam = es.eigenvalues();
  Eigen::VectorXcd mapped(lam.size());
  for (int i = 0; i < lam.size(); ++i) mapped[i] = f(lam[i]);
  return es.eigenvectors() * mapped.asDiagonal() * es.eigenvectors().adjoint();
}

inline CMat herm_exp(const CMat& x) {
  return herm_apply(x, [](double t) { return std::exp(t); }, "herm_exp");
}

inline CMat herm_log(const CMat& p) {
  return herm_apply(
      p,
      [&](double t) {
        if (!(t > 0)) throw PreconditionError("herm_log: non-positive eigenvalue");
        return std::log(t);
      },
      "herm_log");
}

inline CMat herm_sqrt(const CMat& p) {
  return herm_apply(
      p,
      [&](double t) {
        if (!(t > 0)) throw PreconditionError("herm_sqrt: non-positive eigenvalue");
        return std::sqrt(t);
      },
      "herm_sqrt");
}

/// P^t = exp(t log P) for positive-definite Hermitian P and any real t.
inline CMat herm_pow(const CMat& p, double t) {
  return herm_apply(
      p,
      [&](double lam) {
        if (!(lam > 0)) throw PreconditionError("herm_pow: non-positive eigenvalue");
        return std::pow(lam, t);
      },
      "herm_pow");
}

/// General (non-Hermitian) matrix exponential.
inline CMat mat_exp(const CMat& a) { return a.exp(); }

// ---------------------------------------------------------------------------
// Samplers. Entries are complex standard normal (variance 1 split evenly
// between parts); invertible draws are conditioned on |det| > 0.1.

inline std::complex<double> rand_cnormal(Rng& rng) {
  const double s = 1.0 / std::sqrt(2.0);
  double re = rand_normal(rng) * s;
  double im = rand_normal(rng) * s;
  return {re, im};
}

inline CMat random_complex_matrix(Rng& rng, int n) {
  CMat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = rand_cnormal(rng);
  return a;
}

inline CMat random_gl(Rng& rng, int n) {
  while (true) {
    CMat a = random_complex_matrix(rng, n);
    if (std::abs(a.determinant()) > 0.1) return a;
  }
}

inline CMat random_gl_real(Rng& rng, int n) {
  while (true) {
    CMat a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = rand_normal(rng);
    if (std::abs(a.determinant()) > 0.1) return a;
  }
}

inline CMat random_hermitian(Rng& rng, int n) {
  CMat a = random_complex_matrix(rng, n);
  return (a + a.adjoint()) / 2.0;
}

inline CMat random_anti_hermitian(Rng& rng, int n) {
  CMat a = random_complex_matrix(rng, n);
  return (a - a.adjoint()) / 2.0;
}

/// Haar-distributed unitary via QR with the phase correction from R.
inline CMat random_unitary(Rng& rng, int n) {
  CMat a = random_complex_matrix(rng, n);
  Eigen::HouseholderQR<CMat> qr(a);
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    std::complex<double> d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

// ---------------------------------------------------------------------------
// Realification. gl_n(C) = R^{2n^2} ordered (Re E_11, Im E_11, Re E_12, ...)
// row-major; shared with the Lie algebra module's realified basis.

inline std::vector<double> realify(const CMat& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<double> v(2 * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      v[2 * (i * n + j)] = m(i, j).real();
      v[2 * (i * n + j) + 1] = m(i, j).imag();
    }
  return v;
}

inline CMat unrealify(const std::vector<double>& v) {
  int n = static_cast<int>(std::lround(std::sqrt(v.size() / 2.0)));
  if (2 * n * n != static_cast<int>(v.size()))
    throw std::invalid_argument("unrealify: length is not 2n^2");
  CMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m(i, j) = {v[2 * (i * n + j)], v[2 * (i * n + j) + 1]};
  return m;
}

}  // namespace cohomkit
