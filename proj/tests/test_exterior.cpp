#include <catch2/catch_amalgamated.hpp>

#include "cohomkit/exterior.hpp"

using namespace cohomkit;

namespace {

AltForm<Rational> random_form(Rng& rng, int dim, int degree, int density = 4) {
  AltForm<Rational> f(dim, degree);
  auto basis = enumerate_basis(dim, degree);
  for (int t = 0; t < density; ++t) {
    const IndexTuple& key = basis[rand_int(rng, 0, static_cast<int>(basis.size()) - 1)];
    f.add_term(key, Rational(rand_int(rng, -5, 5), rand_int(rng, 1, 4)));
  }
  return f;
}

std::vector<Rational> random_vector(Rng& rng, int dim) {
  std::vector<Rational> v(dim);
  for (auto& x : v) x = Rational(rand_int(rng, -4, 4), rand_int(rng, 1, 3));
  return v;
}

std::vector<Rational> unit_vector(int dim, int i) {
  std::vector<Rational> v(dim, Rational(0));
  v[i] = 1;
  return v;
}

}  // namespace

TEST_CASE("basis enumeration is lexicographic with binomial counts", "[exterior]") {
  auto b = enumerate_basis(4, 2);
  REQUIRE(b.size() == 6);
  REQUIRE(b.front() == IndexTuple{0, 1});
  REQUIRE(b.back() == IndexTuple{2, 3});
  for (size_t i = 1; i < b.size(); ++i) REQUIRE(b[i - 1] < b[i]);
  REQUIRE(enumerate_basis(5, 0) == std::vector<IndexTuple>{IndexTuple{}});
  REQUIRE(enumerate_basis(3, 4).empty());
  REQUIRE(enumerate_basis(8, 4).size() == 70);
}

TEST_CASE("evaluation is the determinant of the selected minor", "[exterior]") {
  auto f = wedge(basis_covector<Rational>(3, {0}), basis_covector<Rational>(3, {1}));
  REQUIRE(eval(f, {unit_vector(3, 0), unit_vector(3, 1)}) == Rational(1));
  REQUIRE(eval(f, {unit_vector(3, 1), unit_vector(3, 0)}) == Rational(-1));
  REQUIRE(eval(f, {unit_vector(3, 0), unit_vector(3, 0)}) == Rational(0));
  REQUIRE(eval(f, {unit_vector(3, 2), unit_vector(3, 1)}) == Rational(0));
}

TEST_CASE("evaluation is multilinear and alternating", "[exterior]") {
  Rng rng = seeded_rng(7, "exterior-eval");
  for (int trial = 0; trial < 30; ++trial) {
    int dim = rand_int(rng, 2, 6);
    int p = rand_int(rng, 1, std::min(dim, 3));
    auto f = random_form(rng, dim, p);
    std::vector<std::vector<Rational>> args;
    for (int i = 0; i < p; ++i) args.push_back(random_vector(rng, dim));
    if (p >= 2) {
      auto swapped = args;
      std::swap(swapped[0], swapped[1]);
      REQUIRE(eval(f, swapped) == -eval(f, args));
      auto degenerate = args;
      degenerate[1] = degenerate[0];
      REQUIRE(eval(f, degenerate) == Rational(0));
    }
    Rational s(rand_int(rng, -3, 3), 2);
    auto scaled = args;
    for (auto& x : scaled[0]) x *= s;
    REQUIRE(eval(f, scaled) == s * eval(f, args));
  }
}

TEST_CASE("wedge is graded-commutative and associative", "[exterior]") {
  Rng rng = seeded_rng(7, "exterior-wedge");
  for (int trial = 0; trial < 25; ++trial) {
    int dim = rand_int(rng, 3, 6);
    int p = rand_int(rng, 1, 2);
    int q = rand_int(rng, 1, 2);
    auto a = random_form(rng, dim, p);
    auto b = random_form(rng, dim, q);
    auto ab = wedge(a, b);
    auto ba = wedge(b, a);
    Rational sign = (p * q) % 2 == 0 ? Rational(1) : Rational(-1);
    REQUIRE(ab == sign * ba);
    auto c = random_form(rng, dim, 1);
    REQUIRE(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
  }
  // Odd-degree forms square to zero.
  Rng rng2 = seeded_rng(7, "exterior-square");
  auto a = random_form(rng2, 5, 1);
  REQUIRE(wedge(a, a).is_zero());
}

TEST_CASE("wedge evaluation matches the shuffle expansion on samples", "[exterior]") {
  Rng rng = seeded_rng(7, "exterior-shuffle");
  for (int trial = 0; trial < 10; ++trial) {
    int dim = rand_int(rng, 3, 5);
    auto a = random_form(rng, dim, 1);
    auto b = random_form(rng, dim, 1);
    auto v = random_vector(rng, dim);
    auto w = random_vector(rng, dim);
    Rational lhs = eval(wedge(a, b), {v, w});
    Rational rhs = eval(a, {v}) * eval(b, {w}) - eval(a, {w}) * eval(b, {v});
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("contraction slots carry alternating signs", "[exterior]") {
  auto f = wedge(basis_covector<Rational>(2, {0}), basis_covector<Rational>(2, {1}));
  auto c0 = contract(f, unit_vector(2, 0));
  REQUIRE(c0 == basis_covector<Rational>(2, {1}));
  auto c1 = contract(f, unit_vector(2, 1));
  REQUIRE(c1 == Rational(-1) * basis_covector<Rational>(2, {0}));
  REQUIRE_THROWS_AS(contract(AltForm<Rational>(2, 0), unit_vector(2, 0)), std::invalid_argument);
}

TEST_CASE("contraction satisfies the graded Leibniz rule", "[exterior]") {
  Rng rng = seeded_rng(7, "exterior-leibniz");
  for (int trial = 0; trial < 25; ++trial) {
    int dim = rand_int(rng, 3, 6);
    int p = rand_int(rng, 1, 2);
    int q = rand_int(rng, 1, 2);
    auto a = random_form(rng, dim, p);
    auto b = random_form(rng, dim, q);
    auto v = random_vector(rng, dim);
    auto lhs = contract(wedge(a, b), v);
    auto rhs = wedge(contract(a, v), b) +
               ((p % 2 == 0) ? wedge(a, contract(b, v)) : Rational(-1) * wedge(a, contract(b, v)));
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("double contraction anticommutes", "[exterior]") {
  Rng rng = seeded_rng(7, "exterior-iota2");
  for (int trial = 0; trial < 15; ++trial) {
    int dim = rand_int(rng, 3, 6);
    auto f = random_form(rng, dim, 3);
    auto v = random_vector(rng, dim);
    auto w = random_vector(rng, dim);
    REQUIRE(contract(contract(f, v), w) == Rational(-1) * contract(contract(f, w), v));
    REQUIRE(contract(contract(f, v), v).is_zero());
  }
}

TEST_CASE("contraction is dual to evaluation", "[exterior]") {
  Rng rng = seeded_rng(7, "exterior-dual");
  for (int trial = 0; trial < 15; ++trial) {
    int dim = rand_int(rng, 2, 5);
    int p = rand_int(rng, 2, 3);
    if (p > dim) continue;
    auto f = random_form(rng, dim, p);
    std::vector<std::vector<Rational>> args;
    for (int i = 0; i < p; ++i) args.push_back(random_vector(rng, dim));
    std::vector<std::vector<Rational>> rest(args.begin() + 1, args.end());
    REQUIRE(eval(f, args) == eval(contract(f, args[0]), rest));
  }
}

TEST_CASE("pullback is contravariantly functorial", "[exterior]") {
  Rng rng = seeded_rng(7, "exterior-pullback");
  for (int trial = 0; trial < 10; ++trial) {
    int da = rand_int(rng, 2, 4), db = rand_int(rng, 2, 4), dc = rand_int(rng, 2, 4);
    auto f = random_form(rng, dc, 2);
    if (f.degree > db || f.degree > da) continue;
    // L: B -> C and M: A -> B, columnwise.
    std::vector<std::vector<Rational>> L, M, LM;
    for (int j = 0; j < db; ++j) L.push_back(random_vector(rng, dc));
    for (int j = 0; j < da; ++j) M.push_back(random_vector(rng, db));
    for (int j = 0; j < da; ++j) {
      std::vector<Rational> col(dc, Rational(0));
      for (int k = 0; k < db; ++k)
        for (int r = 0; r < dc; ++r) col[r] += L[k][r] * M[j][k];
      LM.push_back(col);
    }
    REQUIRE(pullback(f, LM) == pullback(pullback(f, L), M));
  }
}

TEST_CASE("coefficient vectors round-trip and never store zeros", "[exterior]") {
  Rng rng = seeded_rng(7, "exterior-coeffs");
  AltForm<Rational> cancel(4, 1);
  cancel.add_term({2}, Rational(3, 7));
  cancel.add_term({2}, Rational(-3, 7));
  REQUIRE(cancel.is_zero());
  auto f = random_form(rng, 5, 2, 6);
  for (const auto& [k, c] : f.coeffs) REQUIRE(!(c == Rational(0)));
  auto v = coefficient_vector(f);
  REQUIRE(from_coefficient_vector(5, 2, v) == f);
  auto g = to_float(f);
  REQUIRE(g.dim == f.dim);
  REQUIRE(g.degree == f.degree);
  for (const auto& [k, c] : f.coeffs)
    REQUIRE(g.coeffs.at(k) == Catch::Approx(to_double(c)).margin(1e-15));
}
