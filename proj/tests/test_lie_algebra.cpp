#include <catch2/catch_amalgamated.hpp>

#include "cohomkit/lie_algebra.hpp"
#include "oracles.hpp"

using namespace cohomkit;

namespace {

std::vector<Rational> unit_vector(int dim, int i) {
  std::vector<Rational> v(dim, Rational(0));
  v[i] = 1;
  return v;
}

AltForm<Rational> random_form(Rng& rng, int dim, int degree, int density = 4) {
  AltForm<Rational> f(dim, degree);
  auto basis = enumerate_basis(dim, degree);
  if (basis.empty()) return f;
  for (int t = 0; t < density; ++t)
    f.add_term(basis[rand_int(rng, 0, static_cast<int>(basis.size()) - 1)],
               Rational(rand_int(rng, -4, 4), rand_int(rng, 1, 3)));
  return f;
}

std::vector<Rational> random_vector(Rng& rng, int dim) {
  std::vector<Rational> v(dim);
  for (auto& x : v) x = Rational(rand_int(rng, -3, 3), rand_int(rng, 1, 2));
  return v;
}

// Independent route for the Lie derivative on forms at a point base:
// (L_eta f)(x_1..x_p) = -sum_i f(x_1, .., [eta, x_i], .., x_p).
Rational coadjoint_eval(const LieAlgebra& g, const AltForm<Rational>& f,
                        const std::vector<Rational>& eta,
                        const std::vector<std::vector<Rational>>& args) {
  Rational total(0);
  for (size_t i = 0; i < args.size(); ++i) {
    auto modified = args;
    modified[i] = bracket(g, eta, args[i]);
    total -= eval(f, modified);
  }
  return total;
}

std::vector<int> betti_by_oracle(const GradedComplex& cx) {
  std::vector<int> ranks(cx.dims.size(), 0);
  for (size_t p = 0; p < cx.d.size(); ++p)
    ranks[p] = oracles::bareiss_rank(oracles::to_int_rows(cx.d[p]));
  std::vector<int> b(cx.dims.size());
  for (size_t p = 0; p < cx.dims.size(); ++p)
    b[p] = cx.dims[p] - ranks[p] - (p > 0 ? ranks[p - 1] : 0);
  return b;
}

}  // namespace

TEST_CASE("construction rejects broken structure constants", "[lie]") {
  auto unit = [](int m) { return unit_vector(3, m); };
  // [e0,e1] = e1, [e0,e2] = e2, [e1,e2] = e0: the Jacobiator on (e0,e1,e2)
  // is [e1,e2] + [e0,e0] + [-e2,e1] = 2 e0.
  REQUIRE_THROWS_AS(
      make_lie_algebra(3, {}, {{0, 1, unit(1)}, {0, 2, unit(2)}, {1, 2, unit(0)}}),
      JacobiError);
  // Dropping the [e1,e2] bracket leaves a solvable algebra that is fine.
  REQUIRE_NOTHROW(make_lie_algebra(3, {}, {{0, 1, unit(1)}, {0, 2, unit(2)}}));
  REQUIRE_THROWS_AS(make_lie_algebra(3, {}, {{1, 1, unit(0)}}), JacobiError);
  REQUIRE_THROWS_AS(make_lie_algebra(3, {}, {{0, 1, unit(2)}, {1, 0, unit(2)}}), ParseError);
  REQUIRE_THROWS_AS(make_lie_algebra(2, {"a"}, {}), ParseError);
  REQUIRE_THROWS_AS(make_lie_algebra(2, {}, {{0, 3, {Rational(1), Rational(0)}}}), ParseError);
}

TEST_CASE("su2 differential of a dual basis vector", "[lie]") {
  LieAlgebra g = su2_algebra();
  auto alpha = basis_covector<Rational>(3, {0});
  auto d = ce_differential(g, alpha);
  AltForm<Rational> expected(3, 2);
  expected.add_term({1, 2}, Rational(-1));
  REQUIRE(d == expected);
}

TEST_CASE("heisenberg differential hits the center", "[lie]") {
  LieAlgebra g = heisenberg_algebra();
  auto dz = ce_differential(g, basis_covector<Rational>(3, {2}));
  AltForm<Rational> expected(3, 2);
  expected.add_term({0, 1}, Rational(-1));
  REQUIRE(dz == expected);
  REQUIRE(ce_differential(g, basis_covector<Rational>(3, {0})).is_zero());
}

TEST_CASE("differential squares to zero on random forms", "[lie]") {
  Rng rng = seeded_rng(13, "lie-d2");
  for (const LieAlgebra& g : {su2_algebra(), heisenberg_algebra(), gl_realified(2)}) {
    for (int trial = 0; trial < 8; ++trial) {
      auto f = random_form(rng, g.dim(), rand_int(rng, 1, 3));
      REQUIRE(ce_differential(g, ce_differential(g, f)).is_zero());
    }
  }
}

TEST_CASE("Lie derivative satisfies the operator identities", "[lie]") {
  Rng rng = seeded_rng(13, "lie-ops");
  for (const LieAlgebra& g : {su2_algebra(), gl_realified(1)}) {
    for (int trial = 0; trial < 10; ++trial) {
      auto f = random_form(rng, g.dim(), rand_int(rng, 1, 2));
      auto x = random_vector(rng, g.dim());
      auto y = random_vector(rng, g.dim());
      // [L_x, L_y] = L_{[x,y]}
      auto lhs = lie_derivative(g, lie_derivative(g, f, y), x) -
                 lie_derivative(g, lie_derivative(g, f, x), y);
      REQUIRE(lhs == lie_derivative(g, f, bracket(g, x, y)));
      // [L_x, i_y] = i_{[x,y]}
      auto c_lhs = lie_derivative(g, contract(f, y), x) - contract(lie_derivative(g, f, x), y);
      REQUIRE(c_lhs == contract(f, bracket(g, x, y)));
    }
  }
}

TEST_CASE("Lie derivative agrees with the coadjoint formula", "[lie]") {
  Rng rng = seeded_rng(13, "lie-coadjoint");
  for (const LieAlgebra& g : {su2_algebra(), heisenberg_algebra(), gl_realified(2)}) {
    for (int trial = 0; trial < 6; ++trial) {
      int p = rand_int(rng, 1, 2);
      auto f = random_form(rng, g.dim(), p);
      auto eta = random_vector(rng, g.dim());
      std::vector<std::vector<Rational>> args;
      for (int i = 0; i < p; ++i) args.push_back(random_vector(rng, g.dim()));
      REQUIRE(eval(lie_derivative(g, f, eta), args) == coadjoint_eval(g, f, eta, args));
    }
  }
}

TEST_CASE("differential matrices reproduce the pointwise differential", "[lie]") {
  Rng rng = seeded_rng(13, "lie-matrix");
  LieAlgebra g = gl_realified(1);
  for (int p = 1; p <= 2; ++p) {
    auto f = random_form(rng, g.dim(), p);
    auto lhs = coefficient_vector(ce_differential(g, f));
    auto rhs = mat_vec(ce_matrix(g, p), coefficient_vector(f));
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("Betti numbers of the small builtins", "[lie]") {
  // Oracle route first: fraction-free integer elimination on the same
  // differentials, plus float SVD rank as a second cross-check.
  auto check = [](const LieAlgebra& g, const std::vector<int>& expected) {
    GradedComplex cx = ce_complex(g);
    REQUIRE(betti_by_oracle(cx) == expected);
    for (const auto& d : cx.d)
      REQUIRE(oracles::numerical_rank(to_float(d)) == rank(d));
    REQUIRE(betti(cx) == expected);
  };
  check(abelian_algebra(4), {1, 4, 6, 4, 1});
  check(gl_realified(1), {1, 2, 1});
  check(su2_algebra(), {1, 0, 0, 1});
  check(heisenberg_algebra(), {1, 2, 2, 1});
}

TEST_CASE("Betti numbers of realified gl2", "[lie]") {
  // Coefficients of (1+t)^2 (1+t^3)^2: two degree-1 and two degree-3
  // exterior generators.
  GradedComplex cx = ce_complex(gl_realified(2));
  std::vector<int> expected{1, 2, 1, 2, 4, 2, 1, 2, 1};
  REQUIRE(betti_by_oracle(cx) == expected);
  REQUIRE(betti(cx) == expected);
  for (const auto& d : cx.d)
    REQUIRE(oracles::numerical_rank(to_float(d)) == rank(d));
}

TEST_CASE("basic subcomplex with trivial k is everything", "[lie]") {
  LieAlgebra g = su2_algebra();
  Matrix<Rational> none(3, 0);
  auto basic = basic_subcomplex(g, none);
  REQUIRE(basic.restricted.dims == std::vector<int>{1, 3, 3, 1});
  REQUIRE(betti(basic.restricted) == std::vector<int>{1, 0, 0, 1});
}

TEST_CASE("basic subcomplex with k = g collapses to degree zero", "[lie]") {
  LieAlgebra g = su2_algebra();
  auto basic = basic_subcomplex(g, Matrix<Rational>::identity(3));
  REQUIRE(basic.restricted.dims == std::vector<int>{1});
  Matrix<Rational> dependent(3, 2);
  dependent.at(0, 0) = 1;
  dependent.at(0, 1) = 2;
  REQUIRE_THROWS_AS(basic_subcomplex(g, dependent), std::invalid_argument);
}

TEST_CASE("embedding intertwines the restricted differential", "[lie]") {
  LieAlgebra g = gl_realified(2);
  auto basic = basic_subcomplex(g, u_subalgebra_basis(2));
  for (size_t p = 0; p + 1 < basic.restricted.dims.size(); ++p) {
    auto lhs = ce_matrix(g, static_cast<int>(p)) * basic.embed[p];
    auto rhs = basic.embed[p + 1] * basic.restricted.d[p];
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("unitary-horizontal invariant dimensions via evaluation oracle", "[lie]") {
  // Independent route: impose the horizontality and invariance conditions by
  // evaluating on basis tuples instead of composing operator matrices.
  LieAlgebra g = gl_realified(2);
  Matrix<Rational> k = u_subalgebra_basis(2);
  std::vector<int> dims_by_oracle;
  for (int p = 0; p <= 4; ++p) {
    auto basis = enumerate_basis(g.dim(), p);
    std::vector<std::vector<Rational>> rows;
    auto tuple_args = [&](const IndexTuple& T) {
      std::vector<std::vector<Rational>> args;
      for (int idx : T) args.push_back(unit_vector(g.dim(), idx));
      return args;
    };
    for (int e = 0; e < k.cols; ++e) {
      auto eta = column(k, e);
      for (const auto& T : enumerate_basis(g.dim(), p - 1)) {
        std::vector<Rational> row(basis.size());
        for (size_t c = 0; c < basis.size(); ++c) {
          auto args = tuple_args(T);
          args.insert(args.begin(), eta);
          row[c] = eval(basis_covector<Rational>(g.dim(), basis[c]), args);
        }
        rows.push_back(row);
      }
      for (const auto& T : enumerate_basis(g.dim(), p)) {
        std::vector<Rational> row(basis.size());
        for (size_t c = 0; c < basis.size(); ++c)
          row[c] = coadjoint_eval(g, basis_covector<Rational>(g.dim(), basis[c]), eta,
                                  tuple_args(T));
        rows.push_back(row);
      }
    }
    Matrix<Rational> constraints(static_cast<int>(rows.size()), static_cast<int>(basis.size()));
    for (size_t i = 0; i < rows.size(); ++i)
      for (size_t j = 0; j < rows[i].size(); ++j)
        constraints.at(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
    dims_by_oracle.push_back(static_cast<int>(basis.size()) - rank(constraints));
  }
  REQUIRE(dims_by_oracle == std::vector<int>{1, 1, 0, 1, 1});

  auto basic = basic_subcomplex(g, k, 4);
  REQUIRE(basic.restricted.dims == dims_by_oracle);
  for (const auto& d : basic.restricted.d) REQUIRE(d.is_zero());
  REQUIRE(relative_betti(g, k) == std::vector<int>{1, 1, 0, 1, 1});
  REQUIRE(relative_betti(gl_realified(1), u_subalgebra_basis(1)) == std::vector<int>{1, 1});
}

TEST_CASE("realified gl brackets match hand values", "[lie]") {
  LieAlgebra g = gl_realified(2);
  int re11 = realify_index(2, 0, 0, false);
  int re12 = realify_index(2, 0, 1, false);
  int im11 = realify_index(2, 0, 0, true);
  int im12 = realify_index(2, 0, 1, true);
  // [E11, E12] = E12
  auto b = bracket(g, unit_vector(8, re11), unit_vector(8, re12));
  REQUIRE(b[re12] == 1);
  b[re12] = 0;
  for (const auto& v : b) REQUIRE(v == 0);
  // [iE11, E12] = iE12
  b = bracket(g, unit_vector(8, im11), unit_vector(8, re12));
  REQUIRE(b[im12] == 1);
  // [iE11, iE12] = -E12
  b = bracket(g, unit_vector(8, im11), unit_vector(8, im12));
  REQUIRE(b[re12] == -1);
}

TEST_CASE("builtin registry resolves names and rejects junk", "[lie]") {
  REQUIRE(builtin_algebra("su2").dim() == 3);
  REQUIRE(builtin_algebra("heisenberg").dim() == 3);
  REQUIRE(builtin_algebra("abelian5").dim() == 5);
  REQUIRE(builtin_algebra("gl2C").dim() == 8);
  REQUIRE_THROWS_AS(builtin_algebra("gl0C"), ParseError);
  REQUIRE_THROWS_AS(builtin_algebra("nonsense"), ParseError);
  LieAlgebra g = gl_realified(2);
  REQUIRE(builtin_subalgebra("u2", g).cols == 4);
  REQUIRE_THROWS_AS(builtin_subalgebra("u3", g), ParseError);
  REQUIRE_THROWS_AS(builtin_subalgebra("x", g), ParseError);
}
