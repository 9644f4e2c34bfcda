#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include "cohomkit/vanest.hpp"

using namespace cohomkit;

namespace {

Matrix<Rational> column_matrix(const std::vector<Rational>& v) {
  Matrix<Rational> m(static_cast<int>(v.size()), 1);
  for (size_t i = 0; i < v.size(); ++i) m.at(static_cast<int>(i), 0) = v[i];
  return m;
}

std::vector<Rational> unit_realified(int n, int k, int l, bool imag) {
  std::vector<Rational> v(2 * n * n, Rational(0));
  v[realify_index(n, k, l, imag)] = 1;
  return v;
}

/// Independent six-term trace oracle over complex doubles.
std::complex<double> phi3_oracle(const CMat& a, const CMat& b, const CMat& c) {
  const CMat* m[3] = {&a, &b, &c};
  int perm[3] = {0, 1, 2};
  std::complex<double> total = 0;
  std::sort(perm, perm + 3);
  do {
    int inv = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (perm[i] > perm[j]) ++inv;
    std::complex<double> tr = ((*m[perm[0]]) * (*m[perm[1]]) * (*m[perm[2]])).trace();
    total += (inv % 2 == 0) ? tr : -tr;
  } while (std::next_permutation(perm, perm + 3));
  return total;
}

std::vector<double> random_direction(Rng& rng, int n) {
  std::vector<double> v(2 * n * n);
  for (double& x : v) x = rand_normal(rng);
  return v;
}

GroupCochain wrap_integration(const AltForm<Rational>& form, const QuadratureSpec& spec, int n) {
  GroupCochain out;
  out.degree = form.degree;
  out.group_size = n;
  out.evaluator = [form, spec](const std::vector<CMat>& g) {
    return ve_integrate(form, g, spec);
  };
  return out;
}

}  // namespace

TEST_CASE("trace form materialization", "[vanest]") {
  SECTION("size 1 degree 1 is the trace") {
    ComplexForm phi = phi_form(1, 1);
    REQUIRE(phi.re.coeffs.size() == 1);
    REQUIRE(phi.im.coeffs.size() == 1);
    CHECK(phi.re.coeffs.at({0}) == Rational(1));
    CHECK(phi.im.coeffs.at({1}) == Rational(1));
  }

  SECTION("size 1 degree 3 vanishes") {
    ComplexForm phi = phi_form(1, 2);
    CHECK(phi.re.coeffs.empty());
    CHECK(phi.im.coeffs.empty());
  }

  SECTION("size 2 degree 3 against the trace oracle") {
    ComplexForm phi = phi_form(2, 2);
    std::vector<std::vector<Rational>> args = {
        unit_realified(2, 0, 0, false), unit_realified(2, 0, 1, false),
        unit_realified(2, 1, 0, false)};
    CHECK(eval(phi.re, args) == Rational(3));
    CHECK(eval(phi.im, args) == Rational(0));

    CMat e00 = CMat::Zero(2, 2), e01 = CMat::Zero(2, 2), e10 = CMat::Zero(2, 2);
    e00(0, 0) = 1;
    e01(0, 1) = 1;
    e10(1, 0) = 1;
    CHECK(phi3_oracle(e00, e01, e10).real() == Catch::Approx(3.0).margin(1e-12));

    auto rng = seeded_rng(42, "ve.phi3");
    AltForm<double> re_f = to_float(phi.re);
    AltForm<double> im_f = to_float(phi.im);
    for (int s = 0; s < 5; ++s) {
      CMat a = random_complex_matrix(rng, 2);
      CMat b = random_complex_matrix(rng, 2);
      CMat c = random_complex_matrix(rng, 2);
      std::complex<double> oracle = phi3_oracle(a, b, c);
      std::vector<std::vector<double>> fargs = {realify(a), realify(b), realify(c)};
      CHECK(eval(re_f, fargs) == Catch::Approx(oracle.real()).margin(1e-9 * (1 + std::abs(oracle))));
      CHECK(eval(im_f, fargs) == Catch::Approx(oracle.imag()).margin(1e-9 * (1 + std::abs(oracle))));
    }
  }

  SECTION("materialization budget") {
    CHECK_THROWS_AS(phi_form(3, 3), BudgetError);
  }
}

TEST_CASE("basic generators", "[vanest]") {
  SECTION("u1 is the real trace") {
    Generator g1 = u_generator(1, 1);
    REQUIRE(g1.u_basic.coeffs.size() == 1);
    CHECK(g1.u_basic.coeffs.at({0}) == Rational(1));

    Generator g2 = u_generator(2, 1);
    REQUIRE(g2.u_basic.coeffs.size() == 2);
    CHECK(g2.u_basic.coeffs.at({realify_index(2, 0, 0, false)}) == Rational(1));
    CHECK(g2.u_basic.coeffs.at({realify_index(2, 1, 1, false)}) == Rational(1));
  }

  SECTION("generator invariants hold exactly") {
    const LieAlgebra& g = detail::cached_gl_realified(2);
    Matrix<Rational> ub = u_subalgebra_basis(2);
    for (int q = 1; q <= 2; ++q) {
      Generator gen = u_generator(2, q);
      CHECK(ce_differential(g, gen.u_basic).coeffs.empty());
      std::vector<Rational> eta(ub.rows);
      for (int c = 0; c < ub.cols; ++c) {
        for (int r = 0; r < ub.rows; ++r) eta[r] = ub.at(r, c);
        CHECK(contract(gen.u_basic, eta).coeffs.empty());
        CHECK(lie_derivative(g, gen.u_basic, eta).coeffs.empty());
      }
    }
  }

  SECTION("u3 spans the degree-3 basic subspace") {
    Generator u3 = u_generator(2, 2);
    REQUIRE(!u3.u_basic.coeffs.empty());
    BasicSubcomplex bs = basic_subcomplex(detail::cached_gl_realified(2), u_subalgebra_basis(2));
    REQUIRE(bs.embed[3].cols == 1);
    CHECK(in_column_space(bs.embed[3], coefficient_vector(u3.u_basic)));
  }
}

TEST_CASE("full-complex generators", "[vanest]") {
  const LieAlgebra& g = detail::cached_gl_realified(2);

  SECTION("degree-1 pair") {
    Generator up = make_generator(2, 1, GeneratorKind::u_prime);
    Generator b = make_generator(2, 1, GeneratorKind::b);
    CHECK(up.u_basic.coeffs.at({realify_index(2, 0, 0, false)}) == Rational(1));
    CHECK(b.u_basic.coeffs.at({realify_index(2, 0, 0, true)}) == Rational(1));
    CHECK(b.u_basic.coeffs.at({realify_index(2, 1, 1, true)}) == Rational(1));
    Matrix<Rational> d0 = ce_matrix(g, 0);
    Matrix<Rational> aug = hconcat(hconcat(d0, column_matrix(coefficient_vector(up.u_basic))),
                                   column_matrix(coefficient_vector(b.u_basic)));
    CHECK(rank(aug) == rank(d0) + 2);
  }

  SECTION("degree-3 pair is closed and independent modulo exact forms") {
    Generator up = make_generator(2, 2, GeneratorKind::u_prime);
    Generator b = make_generator(2, 2, GeneratorKind::b);
    CHECK(ce_differential(g, up.u_basic).coeffs.empty());
    CHECK(ce_differential(g, b.u_basic).coeffs.empty());
    Matrix<Rational> d2 = ce_matrix(g, 2);
    const int r = rank(d2);
    Matrix<Rational> one = hconcat(d2, column_matrix(coefficient_vector(up.u_basic)));
    CHECK(rank(one) == r + 1);
    Matrix<Rational> two = hconcat(one, column_matrix(coefficient_vector(b.u_basic)));
    CHECK(rank(two) == r + 2);
  }

  SECTION("basic representatives avoid the exact forms") {
    Generator u3 = u_generator(2, 2);
    CHECK_FALSE(in_column_space(ce_matrix(g, 2), coefficient_vector(u3.u_basic)));
    Generator u1 = u_generator(2, 1);
    CHECK_FALSE(in_column_space(ce_matrix(g, 0), coefficient_vector(u1.u_basic)));
  }

  SECTION("size 1 generators christen the imaginary direction") {
    Generator b1 = make_generator(1, 1, GeneratorKind::b);
    REQUIRE(b1.u_basic.coeffs.size() == 1);
    CHECK(b1.u_basic.coeffs.at({1}) == Rational(1));
  }
}

TEST_CASE("differentiation map", "[vanest]") {
  auto rng = seeded_rng(42, "ve.diff");

  SECTION("quadrature spec validation") {
    QuadratureSpec bad;
    bad.fd_order = 3;
    CHECK_THROWS_AS(ve_differentiate(v_generator(2, 1), {random_direction(rng, 2)}, bad),
                    std::invalid_argument);
    bad = QuadratureSpec{};
    bad.order = 1;
    CHECK_THROWS_AS(ve_differentiate(v_generator(2, 1), {random_direction(rng, 2)}, bad),
                    std::invalid_argument);
  }

  SECTION("arity mismatch") {
    CHECK_THROWS_AS(ve_differentiate(v_generator(2, 1), {}), std::invalid_argument);
  }

  SECTION("derivative of the first cocycle is the real trace") {
    GroupCochain v1 = v_generator(2, 1);
    AltForm<double> u1 = to_float(u_generator(2, 1).u_basic);
    for (int s = 0; s < 10; ++s) {
      std::vector<double> xi = random_direction(rng, 2);
      double lhs = ve_differentiate(v1, {xi});
      CHECK(lhs == Catch::Approx(eval(u1, {xi})).margin(1e-8));
    }
  }

  SECTION("constant cochains differentiate to zero") {
    GroupCochain c;
    c.degree = 1;
    c.group_size = 2;
    c.evaluator = [](const std::vector<CMat>&) { return 7.5; };
    CHECK(std::abs(ve_differentiate(c, {random_direction(rng, 2)})) < 1e-9);
  }

  SECTION("independence of the final slot kills the derivative") {
    GroupCochain f;
    f.degree = 2;
    f.group_size = 2;
    f.evaluator = [](const std::vector<CMat>& g) {
      return g[0](0, 0).real() * g[0](1, 1).real() + g[0](0, 1).imag();
    };
    QuadratureSpec spec;
    spec.fd_step = 1e-3;
    for (int s = 0; s < 3; ++s) {
      double r = ve_differentiate(f, {random_direction(rng, 2), random_direction(rng, 2)}, spec);
      CHECK(std::abs(r) < 1e-8);
    }
  }

  SECTION("square of the first cocycle differentiates to zero") {
    GroupCochain v1 = v_generator(2, 1);
    GroupCochain vv = cup(v1, v1);
    for (int s = 0; s < 3; ++s) {
      double r = ve_differentiate(vv, {random_direction(rng, 2), random_direction(rng, 2)});
      CHECK(std::abs(r) < 1e-6);
    }
  }
}

TEST_CASE("quadrature nodes", "[vanest]") {
  std::vector<double> x, w;

  SECTION("weights sum to one") {
    gauss_legendre_01(16, x, w);
    double s = 0;
    for (double v : w) s += v;
    CHECK(s == Catch::Approx(1.0).margin(1e-14));
  }

  SECTION("polynomial exactness") {
    gauss_legendre_01(4, x, w);
    for (int k = 0; k <= 7; ++k) {
      double s = 0;
      for (size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], k);
      CHECK(s == Catch::Approx(1.0 / (k + 1)).margin(1e-13));
    }
  }

  SECTION("smooth integrand") {
    gauss_legendre_01(8, x, w);
    double s = 0;
    for (size_t i = 0; i < x.size(); ++i) s += w[i] * std::exp(x[i]);
    CHECK(s == Catch::Approx(std::exp(1.0) - 1.0).margin(1e-12));
  }
}

TEST_CASE("integration map", "[vanest]") {
  auto rng = seeded_rng(42, "ve.integrate");
  AltForm<Rational> u1 = u_generator(2, 1).u_basic;

  SECTION("diagonal example") {
    CMat a = CMat::Zero(2, 2);
    a(0, 0) = std::exp(1.0);
    a(1, 1) = 1.0;
    CHECK(ve_integrate(u1, {a}) == Catch::Approx(1.0).margin(1e-8));
  }

  SECTION("unitary arguments vanish") {
    CHECK(std::abs(ve_integrate(u1, {random_unitary(rng, 2)})) < 1e-6);
  }

  SECTION("cocycle identity in degree one") {
    for (int s = 0; s < 5; ++s) {
      CMat a = random_gl(rng, 2);
      CMat b = random_gl(rng, 2);
      double r = ve_integrate(u1, {a}) + ve_integrate(u1, {b}) - ve_integrate(u1, {CMat(a * b)});
      CHECK(std::abs(r) < 1e-8);
    }
  }

  SECTION("agreement with the determinant oracle") {
    for (int s = 0; s < 5; ++s) {
      CMat a = random_gl(rng, 2);
      CHECK(ve_integrate(u1, {a}) ==
            Catch::Approx(std::log(std::abs(a.determinant()))).margin(1e-8));
    }
  }

  SECTION("non-basic forms are rejected") {
    AltForm<Rational> imtr = make_generator(2, 1, GeneratorKind::b).u_basic;
    CHECK_THROWS_AS(ve_integrate(imtr, {random_gl(rng, 2)}), PreconditionError);
  }

  SECTION("shape mismatches are rejected") {
    CHECK_THROWS_AS(ve_integrate(u1, {}), std::invalid_argument);
    CHECK_THROWS_AS(ve_integrate(u1, {random_gl(rng, 3)}), std::invalid_argument);
  }

  SECTION("differentiation inverts integration on the generator") {
    QuadratureSpec spec;
    GroupCochain r_u1 = wrap_integration(u1, spec, 2);
    AltForm<double> u1f = to_float(u1);
    for (int s = 0; s < 5; ++s) {
      std::vector<double> xi = random_direction(rng, 2);
      CHECK(ve_differentiate(r_u1, {xi}) == Catch::Approx(eval(u1f, {xi})).margin(1e-5));
    }
  }
}

TEST_CASE("integrated cocycles", "[vanest]") {
  auto rng = seeded_rng(42, "ve.vgen");

  SECTION("first cocycle fast path") {
    GroupCochain v1 = v_generator(2, 1);
    CMat a = CMat::Zero(2, 2);
    a(0, 0) = std::exp(1.0);
    a(1, 1) = 1.0;
    CHECK(v1({a}) == Catch::Approx(1.0).margin(1e-12));
    CHECK(std::abs(v1({random_unitary(rng, 2)})) < 1e-12);
    for (int n = 2; n <= 3; ++n) {
      GroupCochain v = v_generator(n, 1);
      for (int s = 0; s < 10; ++s) {
        CMat g = random_gl(rng, n);
        CHECK(v({g}) == Catch::Approx(std::log(std::abs(g.determinant()))).margin(1e-9));
      }
    }
  }

  SECTION("first cocycle is closed and conjugation-invariant") {
    GroupCochain d = coboundary(v_generator(2, 1));
    for (int s = 0; s < 10; ++s)
      CHECK(std::abs(d({random_gl(rng, 2), random_gl(rng, 2)})) < 1e-9);
    GroupCochain v1 = v_generator(2, 1);
    CMat k = random_unitary(rng, 2);
    CMat g = random_gl(rng, 2);
    CHECK(v1({CMat(k.adjoint() * g * k)}) == Catch::Approx(v1({g})).margin(1e-10));
  }

  SECTION("budget gating") {
    CHECK_THROWS_AS(v_generator(2, 3), BudgetError);
    CHECK_THROWS_AS(v_generator(2, 4, [] {
                      QuadratureSpec s;
                      s.allow_degree5 = true;
                      return s;
                    }()),
                    BudgetError);
    QuadratureSpec allow;
    allow.allow_degree5 = true;
    CHECK_NOTHROW(v_generator(2, 3, allow));
  }

  SECTION("third cocycle closes to quadrature accuracy") {
    GroupCochain v3 = v_generator(2, 2);
    GroupCochain d = coboundary(v3);
    std::vector<CMat> tuple(4);
    for (auto& m : tuple) m = random_gl(rng, 2);
    CHECK(std::abs(d(tuple)) < 1e-4);
  }

  SECTION("third cocycle vanishes on unitary entries") {
    GroupCochain v3 = v_generator(2, 2);
    std::vector<CMat> tuple = {random_gl(rng, 2), random_unitary(rng, 2), random_gl(rng, 2)};
    CHECK(std::abs(v3(tuple)) < 1e-6);
  }
}

TEST_CASE("name registry", "[vanest]") {
  SECTION("generator names") {
    Generator u1 = named_generator("u1@2");
    CHECK(u1.n == 2);
    CHECK(u1.q == 1);
    CHECK(u1.kind == GeneratorKind::u);
    CHECK(named_generator("uprime3@2").kind == GeneratorKind::u_prime);
    CHECK(named_generator("b1@3").kind == GeneratorKind::b);
    CHECK_THROWS_AS(named_generator("u2@2"), ParseError);
    CHECK_THROWS_AS(named_generator("u1"), ParseError);
    CHECK_THROWS_AS(named_generator("u1@z"), ParseError);
    CHECK_THROWS_AS(named_generator("u1@9"), ParseError);
    CHECK_THROWS_AS(named_generator("x1@2"), ParseError);
  }

  SECTION("cochain names") {
    auto rng = seeded_rng(42, "ve.names");
    GroupCochain v1 = builtin_cochain("v1@2");
    CHECK(v1.degree == 1);
    GroupCochain lad = builtin_cochain("logabsdet@2");
    CMat g = random_gl(rng, 2);
    CHECK(v1({g}) == Catch::Approx(lad({g})).margin(1e-10));
    CHECK(builtin_cochain("const:2.5")({}) == 2.5);
    CHECK(builtin_cochain("v3@2").degree == 3);
    CHECK_THROWS_AS(builtin_cochain("v2@2"), ParseError);
    CHECK_THROWS_AS(builtin_cochain("const:x"), ParseError);
    CHECK_THROWS_AS(builtin_cochain("v1"), ParseError);
  }
}
