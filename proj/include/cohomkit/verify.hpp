#pragma once

// Named self-check suites behind the `verify` command. Each suite bundles the
// library's load-bearing identities into Check entries; run_checks gives every
// check its own name-keyed rng, so results are reproducible per seed no matter
// how the checks are scheduled.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cohomkit/char_classes.hpp"
#include "cohomkit/perturbation.hpp"
#include "cohomkit/report.hpp"

namespace cohomkit {

namespace verify_detail {

inline CheckResult exact_result(bool ok, const std::string& note = "") {
  CheckResult r;
  r.passed = ok;
  r.exact = true;
  if (!ok) r.note = note;
  return r;
}

inline CheckResult residual_result(double residual, double tol) {
  CheckResult r;
  r.residual = residual;
  r.tolerance = tol;
  r.passed = residual <= tol;
  return r;
}

inline int count_or(int samples, int fallback) { return samples > 0 ? samples : fallback; }

/// Sample count for checks whose single evaluation is a multi-second
/// quadrature: the override is divided down so smoke runs stay fast.
inline int count_heavy(int samples, int fallback, int divisor) {
  return samples > 0 ? std::max(1, samples / divisor) : fallback;
}

inline Rational rand_rational(Rng& rng) {
  return Rational(rand_int(rng, -4, 4)) / Rational(1 + rand_int(rng, 0, 2));
}

inline AltForm<Rational> random_form(Rng& rng, int dim, int p) {
  AltForm<Rational> f(dim, p);
  for (const IndexTuple& key : enumerate_basis(dim, p)) f.add_term(key, rand_rational(rng));
  return f;
}

inline std::vector<Rational> random_vector(Rng& rng, int dim) {
  std::vector<Rational> v(dim);
  for (auto& c : v) c = rand_rational(rng);
  return v;
}

inline std::vector<std::vector<Rational>> random_map_cols(Rng& rng, int src, int dst) {
  std::vector<std::vector<Rational>> cols(src);
  for (auto& c : cols) c = random_vector(rng, dst);
  return cols;
}

inline std::vector<Rational> matrix_column(const Matrix<Rational>& m, int j) {
  std::vector<Rational> col(m.rows);
  for (int r = 0; r < m.rows; ++r) col[r] = m.at(r, j);
  return col;
}

inline std::vector<CMat> random_tuple(Rng& rng, int n, int count) {
  std::vector<CMat> t(count);
  for (auto& g : t) g = random_gl(rng, n);
  return t;
}

/// Product of affine functions of one matrix entry per slot; coefficients are
/// baked in at construction so the evaluator is pure.
inline GroupCochain random_poly_cochain(Rng& rng, int n, int p) {
  struct Factor {
    int r1, c1, r2, c2;
    double a, b, c;
  };
  std::vector<Factor> factors(p);
  for (auto& f : factors) {
    f.r1 = rand_int(rng, 0, n - 1);
    f.c1 = rand_int(rng, 0, n - 1);
    f.r2 = rand_int(rng, 0, n - 1);
    f.c2 = rand_int(rng, 0, n - 1);
    f.a = rand_int(rng, -3, 3);
    f.b = rand_int(rng, -3, 3);
    f.c = rand_int(rng, -2, 2);
  }
  GroupCochain out;
  out.degree = p;
  out.group_size = n;
  out.evaluator = [factors](const std::vector<CMat>& g) {
    double prod = 1.0;
    for (size_t i = 0; i < factors.size(); ++i) {
      const Factor& f = factors[i];
      prod *= f.a * g[i](f.r1, f.c1).real() + f.b * g[i](f.r2, f.c2).imag() + f.c;
    }
    return prod;
  };
  return out;
}

inline HomogeneousCochain random_poly_hom(Rng& rng, int n, int p) {
  GroupCochain base = random_poly_cochain(rng, n, p + 1);
  HomogeneousCochain out;
  out.degree = p;
  out.group_size = n;
  out.evaluator = base.evaluator;
  return out;
}

}  // namespace verify_detail

// ---------------------------------------------------------------------------
// Exterior algebra suite: exact rational identities.

inline std::vector<Check> exterior_suite() {
  using namespace verify_detail;
  std::vector<Check> checks;

  checks.push_back({"exterior.wedge_associative", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 6);
                      for (int s = 0; s < reps; ++s) {
                        auto f = random_form(rng, 5, 1);
                        auto g = random_form(rng, 5, 1);
                        auto h = random_form(rng, 5, 2);
                        if (!(wedge(wedge(f, g), h) == wedge(f, wedge(g, h))))
                          return exact_result(false, "associativity failed");
                      }
                      return exact_result(true);
                    }});

  checks.push_back({"exterior.wedge_graded_sign", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 6);
                      const int degs[3][2] = {{1, 1}, {1, 2}, {2, 2}};
                      for (int s = 0; s < reps; ++s)
                        for (const auto& d : degs) {
                          auto f = random_form(rng, 4, d[0]);
                          auto g = random_form(rng, 4, d[1]);
                          Rational sign = (d[0] * d[1]) % 2 == 0 ? Rational(1) : Rational(-1);
                          if (!(wedge(f, g) == sign * wedge(g, f)))
                            return exact_result(false, "graded sign failed");
                        }
                      return exact_result(true);
                    }});

  checks.push_back({"exterior.contraction_antiderivation", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 6);
                      for (int s = 0; s < reps; ++s) {
                        auto f = random_form(rng, 4, 1);
                        auto g = random_form(rng, 4, 2);
                        auto v = random_vector(rng, 4);
                        auto lhs = contract(wedge(f, g), v);
                        auto rhs = wedge(contract(f, v), g) - wedge(f, contract(g, v));
                        if (!(lhs == rhs)) return exact_result(false, "Leibniz rule failed");
                      }
                      return exact_result(true);
                    }});

  checks.push_back({"exterior.eval_alternating", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 6);
                      for (int s = 0; s < reps; ++s) {
                        auto f = random_form(rng, 5, 3);
                        std::vector<std::vector<Rational>> vs = {random_vector(rng, 5),
                                                                 random_vector(rng, 5),
                                                                 random_vector(rng, 5)};
                        auto swapped = vs;
                        std::swap(swapped[0], swapped[2]);
                        if (eval(f, vs) != -eval(f, swapped))
                          return exact_result(false, "swap did not flip the sign");
                        auto repeated = vs;
                        repeated[1] = repeated[0];
                        if (eval(f, repeated) != Rational(0))
                          return exact_result(false, "repeated argument not annihilated");
                      }
                      return exact_result(true);
                    }});

  checks.push_back({"exterior.pullback_composition", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 6);
                      for (int s = 0; s < reps; ++s) {
                        auto f = random_form(rng, 3, 2);
                        auto a = random_map_cols(rng, 3, 3);
                        auto b = random_map_cols(rng, 3, 3);
                        std::vector<std::vector<Rational>> ab(3, std::vector<Rational>(3));
                        for (int j = 0; j < 3; ++j)
                          for (int r = 0; r < 3; ++r) {
                            Rational acc(0);
                            for (int k = 0; k < 3; ++k) acc += a[k][r] * b[j][k];
                            ab[j][r] = acc;
                          }
                        if (!(pullback(pullback(f, a), b) == pullback(f, ab)))
                          return exact_result(false, "pullback does not compose");
                      }
                      return exact_result(true);
                    }});

  return checks;
}

// ---------------------------------------------------------------------------
// Chevalley-Eilenberg suite: differentials and Betti numbers, all exact.

inline std::vector<Check> ce_suite() {
  using namespace verify_detail;
  std::vector<Check> checks;

  checks.push_back({"ce.d_squared_zero", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 4);
                      const LieAlgebra algebras[3] = {heisenberg_algebra(), su2_algebra(),
                                                      gl_realified(2)};
                      for (const LieAlgebra& g : algebras)
                        for (int p = 1; p <= 2; ++p)
                          for (int s = 0; s < reps; ++s) {
                            auto f = random_form(rng, g.dim(), p);
                            if (!ce_differential(g, ce_differential(g, f)).is_zero())
                              return exact_result(false, "d^2 != 0");
                          }
                      return exact_result(true);
                    }});

  checks.push_back({"ce.lie_derivative_bracket", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 4);
                      const LieAlgebra algebras[2] = {su2_algebra(), heisenberg_algebra()};
                      for (const LieAlgebra& g : algebras)
                        for (int p = 1; p <= 2; ++p)
                          for (int s = 0; s < reps; ++s) {
                            auto f = random_form(rng, g.dim(), p);
                            auto x = random_vector(rng, g.dim());
                            auto y = random_vector(rng, g.dim());
                            auto commutator = lie_derivative(g, lie_derivative(g, f, y), x) -
                                              lie_derivative(g, lie_derivative(g, f, x), y);
                            if (!(commutator == lie_derivative(g, f, bracket(g, x, y))))
                              return exact_result(false, "derivative does not respect brackets");
                          }
                      return exact_result(true);
                    }});

  checks.push_back({"ce.betti_gl1", [](Rng&, int) {
                      auto b = betti(ce_complex(gl_realified(1)));
                      return exact_result(b == std::vector<int>{1, 2, 1}, "unexpected Betti numbers");
                    }});

  checks.push_back({"ce.betti_gl2", [](Rng&, int) {
                      auto b = betti(ce_complex(gl_realified(2)));
                      return exact_result(b == std::vector<int>{1, 2, 1, 2, 4, 2, 1, 2, 1},
                                          "unexpected Betti numbers");
                    }});

  checks.push_back({"ce.betti_heisenberg", [](Rng&, int) {
                      auto b = betti(ce_complex(heisenberg_algebra()));
                      return exact_result(b == std::vector<int>{1, 2, 2, 1},
                                          "unexpected Betti numbers");
                    }});

  checks.push_back({"ce.betti_su2", [](Rng&, int) {
                      auto b = betti(ce_complex(su2_algebra()));
                      return exact_result(b == std::vector<int>{1, 0, 0, 1},
                                          "unexpected Betti numbers");
                    }});

  checks.push_back({"ce.relative_gl1_u1", [](Rng&, int) {
                      auto b = relative_betti(gl_realified(1), u_subalgebra_basis(1));
                      return exact_result(b == std::vector<int>{1, 1},
                                          "unexpected relative Betti numbers");
                    }});

  checks.push_back({"ce.relative_gl2_u2", [](Rng&, int) {
                      auto sub = basic_subcomplex(gl_realified(2), u_subalgebra_basis(2));
                      for (const auto& d : sub.restricted.d)
                        for (const auto& entry : d.a)
                          if (entry != Rational(0))
                            return exact_result(false, "restricted differential is not zero");
                      auto b = betti(sub.restricted);
                      return exact_result(b == std::vector<int>{1, 1, 0, 1, 1},
                                          "unexpected relative Betti numbers");
                    }});

  return checks;
}

// ---------------------------------------------------------------------------
// Perturbation suite: synthesized double complexes, exact rational checks.

inline std::vector<Check> perturbation_suite() {
  using namespace verify_detail;
  std::vector<Check> checks;

  checks.push_back({"perturbation.perturbed_identity", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 10);
                      for (int s = 0; s < reps; ++s) {
                        auto a = synthesize_instance(rng(), 2 + rand_int(rng, 0, 2),
                                                     2 + rand_int(rng, 0, 2),
                                                     1 + rand_int(rng, 0, 3));
                        if (!perturbed_identity_holds(a, perturb_horizontal(a)))
                          return exact_result(false, "perturbed identity failed");
                      }
                      return exact_result(true);
                    }});

  checks.push_back({"perturbation.back_and_forth", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 10);
                      for (int s = 0; s < reps; ++s) {
                        auto a = synthesize_row_instance(rng(), 2 + rand_int(rng, 0, 2),
                                                         1 + rand_int(rng, 0, 3));
                        if (!back_and_forth_check(a))
                          return exact_result(false, "round trip failed");
                      }
                      return exact_result(true);
                    }});

  checks.push_back({"perturbation.conjugation_stability", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 5);
                      for (int s = 0; s < reps; ++s) {
                        auto a = synthesize_instance(rng(), 2 + rand_int(rng, 0, 2),
                                                     2 + rand_int(rng, 0, 2),
                                                     1 + rand_int(rng, 0, 3));
                        conjugate_instance(a, rng);
                        try {
                          validate_double_complex(a.D);
                          validate_augmented(a);
                        } catch (const std::exception& e) {
                          return exact_result(false, e.what());
                        }
                        if (!perturbed_identity_holds(a, perturb_horizontal(a)))
                          return exact_result(false, "perturbed identity failed after conjugation");
                      }
                      return exact_result(true);
                    }});

  checks.push_back({"perturbation.toy_model", [](Rng&, int) {
                      for (int width = 3; width <= 5; ++width) {
                        auto a = van_est_toy_instance(width);
                        if (!perturbed_identity_holds(a, perturb_horizontal(a)))
                          return exact_result(false, "perturbed identity failed");
                        if (!back_and_forth_check(a)) return exact_result(false, "round trip failed");
                      }
                      return exact_result(true);
                    }});

  return checks;
}

// ---------------------------------------------------------------------------
// Group cochain suite: floating-point identities on GL_2 samples.

inline std::vector<Check> groupchains_suite() {
  using namespace verify_detail;
  std::vector<Check> checks;

  checks.push_back({"groupchains.coboundary_squares", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 10);
                      double worst = 0.0;
                      for (int p = 0; p <= 2; ++p)
                        for (int s = 0; s < reps; ++s) {
                          GroupCochain f = random_poly_cochain(rng, 2, p);
                          GroupCochain dd = coboundary(coboundary(f));
                          auto t = random_tuple(rng, 2, p + 2);
                          worst = std::max(worst, std::abs(dd(t)));
                        }
                      return residual_result(worst, 1e-8);
                    }});

  checks.push_back({"groupchains.cup_leibniz", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 8);
                      double worst = 0.0;
                      const int degs[2][2] = {{1, 1}, {1, 2}};
                      for (const auto& d : degs)
                        for (int s = 0; s < reps; ++s) {
                          GroupCochain f = random_poly_cochain(rng, 2, d[0]);
                          GroupCochain g = random_poly_cochain(rng, 2, d[1]);
                          GroupCochain lhs = coboundary(cup(f, g));
                          GroupCochain t1 = cup(coboundary(f), g);
                          GroupCochain t2 = cup(f, coboundary(g));
                          double sign = d[0] % 2 == 0 ? 1.0 : -1.0;
                          auto t = random_tuple(rng, 2, d[0] + d[1] + 1);
                          double rhs = t1(t) + sign * t2(t);
                          worst = std::max(worst,
                                           std::abs(lhs(t) - rhs) / (1.0 + std::abs(rhs)));
                        }
                      return residual_result(worst, 1e-8);
                    }});

  checks.push_back({"groupchains.normalization", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 6);
                      double worst = 0.0;
                      for (int p = 1; p <= 2; ++p)
                        for (int s = 0; s < reps; ++s) {
                          HomogeneousCochain nf = normalize_N(random_poly_hom(rng, 2, p));
                          auto t = random_tuple(rng, 2, p + 1);
                          t[1] = t[0];
                          worst = std::max(worst, std::abs(nf(t)));
                          HomogeneousCochain twice = normalize_N(nf);
                          auto u = random_tuple(rng, 2, p + 1);
                          worst = std::max(worst, std::abs(twice(u) - nf(u)));
                        }
                      return residual_result(worst, 1e-9);
                    }});

  checks.push_back({"groupchains.homotopy_identity", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 5);
                      double worst = 0.0;
                      for (int p = 1; p <= 2; ++p)
                        for (int s = 0; s < reps; ++s) {
                          HomogeneousCochain f = random_poly_hom(rng, 2, p);
                          HomogeneousCochain t1 = eg_homotopy(hom_coboundary(f));
                          HomogeneousCochain t2 = hom_coboundary(eg_homotopy(f));
                          auto args = random_tuple(rng, 2, p + 1);
                          double want = f(args);
                          worst = std::max(worst, std::abs(t1(args) + t2(args) - want) /
                                                      (1.0 + std::abs(want)));
                        }
                      return residual_result(worst, 1e-9);
                    }});

  checks.push_back({"groupchains.averaging", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 5);
                      const std::vector<CMat> signs = {CMat::Identity(2, 2),
                                                       CMat(-CMat::Identity(2, 2))};
                      double worst = 0.0;
                      for (int s = 0; s < reps; ++s) {
                        GroupCochain f = random_poly_cochain(rng, 2, 1);
                        GroupCochain av = average_finite(f, signs);
                        GroupCochain twice = average_finite(av, signs);
                        GroupCochain dav = coboundary(av);
                        GroupCochain avd = average_finite(coboundary(f), signs);
                        CMat g = random_gl(rng, 2);
                        double base = av({g});
                        worst = std::max(worst,
                                         std::abs(av({CMat(-g)}) - base) / (1.0 + std::abs(base)));
                        worst = std::max(worst,
                                         std::abs(twice({g}) - base) / (1.0 + std::abs(base)));
                        auto pair = random_tuple(rng, 2, 2);
                        worst = std::max(worst, std::abs(dav(pair) - avd(pair)) /
                                                    (1.0 + std::abs(avd(pair))));
                      }
                      return residual_result(worst, 1e-9);
                    }});

  checks.push_back({"groupchains.transitive_roundtrip", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 5);
                      TransitiveModel model({0, 1, 2}, 2);
                      for (int p = 1; p <= 2; ++p)
                        for (int s = 0; s < reps; ++s) {
                          GroupCochain f = random_poly_cochain(rng, 2, p);
                          GroupCochain back =
                              restrict_transitive(model, ext_transitive(model, f, rng));
                          auto t = random_tuple(rng, 2, p);
                          if (back(t) != f(t))
                            return exact_result(false, "restriction does not invert extension");
                        }
                      return exact_result(true);
                    }});

  checks.push_back({"groupchains.transitive_differential", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 5);
                      TransitiveModel model({0, 1, 2}, 2);
                      double worst = 0.0;
                      for (int s = 0; s < reps; ++s) {
                        GroupCochain f = random_poly_cochain(rng, 2, 1);
                        ArrowCochain lhs = arrow_coboundary(ext_transitive(model, f, rng));
                        ArrowCochain rhs = ext_transitive(model, coboundary(f), rng);
                        auto pair = random_tuple(rng, 2, 2);
                        std::vector<Arrow> arrows = {{model.z(), pair[0], model.z()},
                                                     {model.z(), pair[1], model.z()}};
                        worst = std::max(worst, std::abs(lhs(arrows) - rhs(arrows)));
                      }
                      return residual_result(worst, 1e-12);
                    }});

  return checks;
}

// ---------------------------------------------------------------------------
// Flow differentiation/integration suite.

inline std::vector<Check> vanest_suite() {
  using namespace verify_detail;
  std::vector<Check> checks;

  checks.push_back({"vanest.generator_invariants", [](Rng&, int) {
                      const LieAlgebra g = gl_realified(2);
                      const Matrix<Rational> u_basis = u_subalgebra_basis(2);
                      for (int q = 1; q <= 2; ++q) {
                        Generator gen = u_generator(2, q);
                        if (gen.u_basic.is_zero()) return exact_result(false, "generator is zero");
                        if (!ce_differential(g, gen.u_basic).is_zero())
                          return exact_result(false, "generator is not closed");
                        for (int j = 0; j < u_basis.cols; ++j) {
                          auto col = matrix_column(u_basis, j);
                          if (!contract(gen.u_basic, col).is_zero())
                            return exact_result(false, "generator is not horizontal");
                          if (!lie_derivative(g, gen.u_basic, col).is_zero())
                            return exact_result(false, "generator is not invariant");
                        }
                      }
                      return exact_result(true);
                    }});

  checks.push_back({"vanest.quadrature_nodes", [](Rng&, int) {
                      double worst = 0.0;
                      std::vector<double> x, w;
                      gauss_legendre_01(4, x, w);
                      for (int k = 0; k <= 7; ++k) {
                        double acc = 0.0;
                        for (size_t i = 0; i < x.size(); ++i) acc += w[i] * std::pow(x[i], k);
                        worst = std::max(worst, std::abs(acc - 1.0 / (k + 1)));
                      }
                      return residual_result(worst, 1e-13);
                    }});

  checks.push_back({"vanest.v1_determinant", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 10);
                      double worst = 0.0;
                      for (int n = 2; n <= 3; ++n) {
                        GroupCochain v1 = v_generator(n, 1);
                        for (int s = 0; s < reps; ++s) {
                          CMat g = random_gl(rng, n);
                          worst = std::max(worst,
                                           std::abs(v1({g}) - std::log(std::abs(g.determinant()))));
                        }
                      }
                      return residual_result(worst, 1e-9);
                    }});

  checks.push_back({"vanest.v1_cocycle", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 10);
                      GroupCochain dv = coboundary(v_generator(2, 1));
                      double worst = 0.0;
                      for (int s = 0; s < reps; ++s)
                        worst = std::max(worst, std::abs(dv(random_tuple(rng, 2, 2))));
                      return residual_result(worst, 1e-9);
                    }});

  checks.push_back({"vanest.ve_r_roundtrip", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 8);
                      Generator gen = u_generator(2, 1);
                      AltForm<double> u_float = to_float(gen.u_basic);
                      GroupCochain r_u = v_generator(2, 1);
                      double worst = 0.0;
                      for (int s = 0; s < reps; ++s) {
                        CMat xi = CMat::NullaryExpr(2, 2, [&rng](Eigen::Index, Eigen::Index) {
                          return std::complex<double>(rand_normal(rng), rand_normal(rng));
                        });
                        std::vector<double> coords = realify(xi);
                        double want = eval(u_float, {coords});
                        double got = ve_differentiate(r_u, {coords});
                        worst = std::max(worst, std::abs(got - want));
                      }
                      return residual_result(worst, 1e-5);
                    }});

  checks.push_back({"vanest.v3_cocycle", [](Rng& rng, int samples) {
                      const int reps = count_heavy(samples, 1, 8);
                      GroupCochain dv = coboundary(v_generator(2, 2));
                      double worst = 0.0;
                      for (int s = 0; s < reps; ++s)
                        worst = std::max(worst, std::abs(dv(random_tuple(rng, 2, 4))));
                      return residual_result(worst, 1e-4);
                    }});

  checks.push_back({"vanest.v3_normalized", [](Rng& rng, int samples) {
                      const int reps = count_heavy(samples, 1, 8);
                      GroupCochain v3 = v_generator(2, 2);
                      double worst = 0.0;
                      for (int s = 0; s < reps; ++s) {
                        auto t = random_tuple(rng, 2, 3);
                        t[rand_int(rng, 0, 2)] = random_unitary(rng, 2);
                        worst = std::max(worst, std::abs(v3(t)));
                      }
                      return residual_result(worst, 1e-6);
                    }});

  return checks;
}

// ---------------------------------------------------------------------------
// Characteristic class suite.

inline std::vector<Check> classes_suite() {
  using namespace verify_detail;
  std::vector<Check> checks;

  checks.push_back({"classes.algebra_pullback", [](Rng&, int) {
                      for (int q = 1; q <= 2; ++q) {
                        auto cls = algebra_class(identity_algebra_rep(2), q);
                        if (!(cls == u_generator(2, q).u_basic))
                          return exact_result(false, "identity pullback moved the generator");
                      }
                      AlgebraRep trivial{abelian_algebra(2), 2, Matrix<Rational>(8, 2)};
                      if (!algebra_class(trivial, 1).is_zero())
                        return exact_result(false, "zero map gave a nonzero class");
                      return exact_result(true);
                    }});

  checks.push_back({"classes.sum_law", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 5);
                      double worst = sum_law_residual(identity_rep(2), det_rep(2), 1, rng, reps);
                      worst = std::max(worst,
                                       sum_law_residual(identity_rep(1), power_rep(2), 1, rng, reps));
                      return residual_result(worst, 1e-6);
                    }});

  checks.push_back({"classes.tensor_law", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 5);
                      double worst = tensor_law_residual(identity_rep(2), det_rep(2), 1, rng, reps);
                      worst = std::max(
                          worst, tensor_law_residual(identity_rep(1), power_rep(2), 1, rng, reps));
                      return residual_result(worst, 1e-6);
                    }});

  checks.push_back({"classes.dual_law", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 5);
                      return residual_result(dual_law_residual(identity_rep(2), 1, rng, reps), 1e-6);
                    }});

  checks.push_back({"classes.real_vanishing", [](Rng& rng, int samples) {
                      const int reps = count_heavy(samples, 2, 4);
                      return residual_result(real_vanishing_check(real_identity_rep(2), 2, rng, reps),
                                             1e-3);
                    }});

  checks.push_back({"classes.ve_compatibility", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 3);
                      return residual_result(ve_compatibility_check(identity_rep(2), 1, rng, reps),
                                             1e-5);
                    }});

  checks.push_back({"classes.metric_independence", [](Rng& rng, int samples) {
                      const int reps = count_or(samples, 5);
                      CMat s(2, 2);
                      s << 1.0, std::complex<double>(1.0, 1.0), 0.0, 2.0;
                      return residual_result(metric_independence_residual(2, s, rng, reps), 1e-6);
                    }});

  return checks;
}

// ---------------------------------------------------------------------------
// Suite registry.

inline std::vector<std::string> suite_names() {
  return {"exterior", "ce", "perturbation", "groupchains", "vanest", "classes", "all"};
}

inline std::vector<Check> suite_checks(const std::string& suite) {
  if (suite == "exterior") return exterior_suite();
  if (suite == "ce") return ce_suite();
  if (suite == "perturbation") return perturbation_suite();
  if (suite == "groupchains") return groupchains_suite();
  if (suite == "vanest") return vanest_suite();
  if (suite == "classes") return classes_suite();
  if (suite == "all") {
    std::vector<Check> all;
    for (const std::string& name : suite_names()) {
      if (name == "all") continue;
      auto part = suite_checks(name);
      all.insert(all.end(), std::make_move_iterator(part.begin()),
                 std::make_move_iterator(part.end()));
    }
    return all;
  }
  throw ParseError("unknown suite: " + suite + " (expected exterior|ce|perturbation|groupchains|"
                   "vanest|classes|all)");
}

}  // namespace cohomkit
