#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include "cohomkit/matrix_group.hpp"

using namespace cohomkit;

namespace {

CMat cdiag(std::complex<double> a, std::complex<double> b) {
  CMat m = CMat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

/// Re tr as a realified 1-form: picks the real part of each diagonal entry.
AltForm<double> re_trace_form(int n) {
  AltForm<double> f(2 * n * n, 1);
  for (int k = 0; k < n; ++k) f.add_term({realify_index(n, k, k, false)}, 1.0);
  return f;
}

}  // namespace

TEST_CASE("Hermitian functional calculus", "[matrixgroup]") {
  auto rng = seeded_rng(42, "mg.calculus");

  SECTION("exp of a diagonal projector") {
    CMat e = herm_exp(cdiag(1.0, 0.0));
    CHECK((e - cdiag(std::exp(1.0), 1.0)).norm() < 1e-12);
  }

  SECTION("log inverts exp on random Hermitian matrices") {
    for (int n = 1; n <= 4; ++n) {
      CMat x = random_hermitian(rng, n);
      CHECK((herm_log(herm_exp(x)) - x).norm() <= kStructTol * std::max(1.0, x.norm()));
    }
  }

  SECTION("sqrt squares back") {
    for (int trial = 0; trial < 5; ++trial) {
      CMat a = random_gl(rng, 3);
      CMat p = a * a.adjoint();
      CMat s = herm_sqrt(p);
      CHECK((s * s - p).norm() <= kStructTol * std::max(1.0, p.norm()));
    }
  }

  SECTION("pow composes exponents") {
    CMat a = random_gl(rng, 2);
    CMat p = a * a.adjoint();
    CHECK((herm_pow(herm_pow(p, 0.5), 3.0) - herm_pow(p, 1.5)).norm() < 1e-9);
  }

  SECTION("agrees with the general exponential on Hermitian input") {
    CMat x = random_hermitian(rng, 3);
    CHECK((herm_exp(x) - mat_exp(x)).norm() <= 1e-11 * std::max(1.0, herm_exp(x).norm()));
  }

  SECTION("rejects non-Hermitian and non-positive input") {
    CMat skew = CMat::Zero(2, 2);
    skew(0, 1) = 1.0;
    skew(1, 0) = -1.0;
    CHECK_THROWS_AS(herm_exp(skew), PreconditionError);
    CHECK_THROWS_AS(herm_log(cdiag(1.0, -1.0)), PreconditionError);
    CHECK_THROWS_AS(herm_sqrt(cdiag(1.0, 0.0)), PreconditionError);
    CHECK_THROWS_AS(herm_pow(cdiag(-2.0, 1.0), 0.5), PreconditionError);
  }
}

TEST_CASE("samplers produce what they claim", "[matrixgroup]") {
  auto rng = seeded_rng(42, "mg.samplers");
  for (int n = 1; n <= 3; ++n) {
    CMat g = random_gl(rng, n);
    CHECK(std::abs(g.determinant()) > 0.1);
    CHECK(is_hermitian(random_hermitian(rng, n)));
    CMat u = random_unitary(rng, n);
    CHECK(is_unitary(u));
    CMat ah = random_anti_hermitian(rng, n);
    CHECK((ah + ah.adjoint()).norm() < 1e-14 * std::max(1.0, ah.norm()));
  }
  CMat gr = random_gl_real(rng, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(gr(i, j).imag() == 0.0);
}

TEST_CASE("realify round trip matches the realified basis order", "[matrixgroup]") {
  auto rng = seeded_rng(42, "mg.realify");
  CMat m = random_complex_matrix(rng, 3);
  auto v = realify(m);
  REQUIRE(static_cast<int>(v.size()) == 18);
  CHECK(v[realify_index(3, 1, 2, false)] == m(1, 2).real());
  CHECK(v[realify_index(3, 1, 2, true)] == m(1, 2).imag());
  CHECK((unrealify(v) - m).norm() == 0.0);
  CHECK_THROWS_AS(unrealify(std::vector<double>(7)), std::invalid_argument);
}

TEST_CASE("polar splitting", "[matrixgroup]") {
  auto rng = seeded_rng(42, "mg.polar");

  SECTION("positive diagonal example") {
    PolarParts parts = polar(cdiag(std::exp(1.0), 1.0));
    CHECK((parts.x - cdiag(1.0, 0.0)).norm() < 1e-12);
    CHECK((parts.u - CMat::Identity(2, 2)).norm() < 1e-12);
  }

  SECTION("unitary input has zero Hermitian part") {
    CMat u = random_unitary(rng, 3);
    PolarParts parts = polar(u);
    CHECK(parts.x.norm() < 1e-12);
    CHECK((parts.u - u).norm() < 1e-11);
  }

  SECTION("random reconstruction") {
    for (int n = 2; n <= 3; ++n)
      for (int trial = 0; trial < 10; ++trial) {
        CMat a = random_gl(rng, n);
        PolarParts parts = polar(a);
        CHECK(is_hermitian(parts.x));
        CHECK(is_unitary(parts.u));
        CHECK((herm_exp(parts.x) * parts.u - a).norm() <= kReconTol * std::max(1.0, a.norm()));
      }
  }

  SECTION("trace of the Hermitian part is log |det|") {
    for (int trial = 0; trial < 10; ++trial) {
      CMat a = random_gl(rng, 3);
      double lhs = polar(a).x.trace().real();
      CHECK(lhs == Catch::Approx(std::log(std::abs(a.determinant()))).margin(1e-9));
    }
  }

  SECTION("Hermitian part is equivariant under u A v") {
    for (int trial = 0; trial < 5; ++trial) {
      CMat a = random_gl(rng, 2);
      CMat u = random_unitary(rng, 2);
      CMat v = random_unitary(rng, 2);
      CMat lhs = polar(CMat(u * a * v)).x;
      CMat rhs = u * polar(a).x * u.adjoint();
      CHECK((lhs - rhs).norm() <= 1e-9 * std::max(1.0, rhs.norm()));
    }
  }

  SECTION("singular input is rejected") {
    CHECK_THROWS_AS(polar(cdiag(1.0, 0.0)), PreconditionError);
  }
}

TEST_CASE("coset space operations", "[matrixgroup]") {
  auto rng = seeded_rng(42, "mg.coset");

  SECTION("coset point validation") {
    CMat bad = CMat::Zero(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(CosetPoint(bad), PreconditionError);
    CHECK_THROWS_AS(CosetPoint(cdiag(1.0, -1.0)), PreconditionError);
    CHECK_NOTHROW(CosetPoint(cdiag(2.0, 0.5)));
  }

  SECTION("retract pins time 0 and 1") {
    CMat a = random_gl(rng, 3);
    CosetPoint p = coset(a);
    CHECK((retract(0.0, p).p - CMat::Identity(3, 3)).norm() < 1e-12);
    CHECK((retract(1.0, p).p - p.p).norm() <= 1e-12 * std::max(1.0, p.p.norm()));
  }

  SECTION("acting by a matches multiplying before projecting") {
    for (int n = 2; n <= 3; ++n)
      for (int trial = 0; trial < 10; ++trial) {
        CMat a = random_gl(rng, n);
        CMat b = random_gl(rng, n);
        CMat lhs = act(a, coset(b)).p;
        CMat rhs = coset(CMat(a * b)).p;
        CHECK((lhs - rhs).norm() <= 1e-9 * std::max(1.0, rhs.norm()));
      }
  }

  SECTION("act is a left action") {
    for (int trial = 0; trial < 5; ++trial) {
      CMat a1 = random_gl(rng, 2);
      CMat a2 = random_gl(rng, 2);
      CosetPoint p = coset(random_gl(rng, 2));
      CMat lhs = act(a1, act(a2, p)).p;
      CMat rhs = act(CMat(a1 * a2), p).p;
      CHECK((lhs - rhs).norm() <= 1e-9 * std::max(1.0, rhs.norm()));
    }
  }

  SECTION("unitaries fix the base point") {
    CMat u = random_unitary(rng, 2);
    CHECK((act(u, CosetPoint(CMat::Identity(2, 2))).p - CMat::Identity(2, 2)).norm() < 1e-12);
  }
}

TEST_CASE("Maurer-Cartan pullback of horizontal forms", "[matrixgroup]") {
  auto rng = seeded_rng(42, "mg.mc");

  SECTION("trace form at the base point") {
    AltForm<double> u1 = re_trace_form(2);
    double val = mc_pullback(u1, CosetPoint(CMat::Identity(2, 2)), {cdiag(1.0, 0.0)});
    CHECK(val == Catch::Approx(1.0).margin(1e-12));
  }

  SECTION("transporting the tangent cancels the point") {
    // alpha(P^{-1} V) with V = P W depends only on W.
    AltForm<double> u1 = re_trace_form(3);
    CMat a = random_gl(rng, 3);
    CosetPoint p = coset(a);
    CMat w = random_complex_matrix(rng, 3);
    double lhs = mc_pullback(u1, p, {CMat(p.p * w)});
    double rhs = mc_pullback(u1, CosetPoint(CMat::Identity(3, 3)), {w});
    CHECK(lhs == Catch::Approx(rhs).margin(1e-9 * std::max(1.0, std::abs(rhs))));
  }

  SECTION("degree and size mismatches are rejected") {
    AltForm<double> u1 = re_trace_form(2);
    CosetPoint base{CMat::Identity(2, 2)};
    CHECK_THROWS_AS(mc_pullback(u1, base, {}), std::invalid_argument);
    CHECK_THROWS_AS(mc_pullback(u1, base, {cdiag(1, 0), cdiag(0, 1)}), std::invalid_argument);
    CHECK_THROWS_AS(mc_pullback(u1, CosetPoint(CMat::Identity(3, 3) * 2.0), {CMat::Zero(3, 3)}),
                    std::invalid_argument);
  }

  SECTION("non-horizontal forms are rejected") {
    AltForm<double> im_part(2, 1);
    im_part.add_term({realify_index(1, 0, 0, true)}, 1.0);
    CHECK_THROWS_AS(mc_pullback(im_part, CosetPoint(CMat::Identity(1, 1)), {CMat::Identity(1, 1)}),
                    PreconditionError);
  }
}
