// cohomkit: cohomology tables, verification suites, cochain evaluation and
// characteristic-class checks from one binary. Output is byte-stable for a
// fixed seed and flag set; --json renders the same report as a structured
// document with a versioned schema.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "cohomkit/io.hpp"
#include "cohomkit/verify.hpp"

namespace {

using namespace cohomkit;

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  std::string out = buf;
  if (out.find_first_of(".eni") == std::string::npos) out += ".0";
  return out;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(v[i]);
  }
  return out;
}

/// Command-level fields (Betti lists, evaluated values) that sit between the
/// report header and the check records in both output formats.
struct Extra {
  std::string key;
  Json value;
  std::string text;
};

int emit(const Report& report, const std::vector<Extra>& extras, bool as_json) {
  if (as_json) {
    Json doc = report_to_json(report);
    Json out;
    out["schema"] = doc["schema"];
    out["command"] = doc["command"];
    out["seed"] = doc["seed"];
    for (const auto& e : extras) out[e.key] = e.value;
    out["checks"] = doc["checks"];
    out["summary"] = doc["summary"];
    std::cout << out.dump(2) << "\n";
  } else {
    std::string text = report_to_text(report);
    size_t nl = text.find('\n');
    std::cout << text.substr(0, nl + 1);
    for (const auto& e : extras) std::cout << e.key << ": " << e.text << "\n";
    std::cout << text.substr(nl + 1);
  }
  return all_passed(report) ? 0 : 1;
}

/// The echoed command omits --json so that the text and JSON renderings of
/// one invocation carry identical content.
std::string command_echo(int argc, char** argv) {
  std::string out;
  for (int i = 1; i < argc; ++i) {
    std::string tok = argv[i];
    if (tok == "--json") continue;
    if (!out.empty()) out += " ";
    out += tok;
  }
  return out;
}

// ---------------------------------------------------------------------------
// cohomology

/// Full Chevalley-Eilenberg complexes grow as 2^dim and exact ranks much
/// faster; refuse sizes that cannot finish at desk scale.
void check_complex_budget(int dim, int max_degree) {
  const long long limit = 20000;
  const int top = max_degree < 0 ? dim : std::min(max_degree, dim);
  long long binom = 1, total = 0;
  for (int p = 0; p <= top; ++p) {
    total += binom;
    if (total > limit)
      throw BudgetError("cohomology: complex on " + std::to_string(dim) +
                        " generators exceeds the basis budget; truncate with --max-degree");
    binom = std::min(binom * (dim - p) / (p + 1), limit + 1);
  }
}

Matrix<Rational> subalgebra_from_arg(const std::string& arg, const LieAlgebra& g) {
  std::ifstream probe(arg);
  if (probe) return rational_matrix_from_json(load_json_file(arg));
  return builtin_subalgebra(arg, g);
}

bool composes_to_zero(const GradedComplex& cx) {
  for (size_t p = 0; p + 1 < cx.d.size(); ++p) {
    const Matrix<Rational>& a = cx.d[p + 1];
    const Matrix<Rational>& b = cx.d[p];
    if (a.cols != b.rows) continue;
    for (int r = 0; r < a.rows; ++r)
      for (int c = 0; c < b.cols; ++c) {
        Rational acc(0);
        for (int k = 0; k < a.cols; ++k) acc += a.at(r, k) * b.at(k, c);
        if (acc != Rational(0)) return false;
      }
  }
  return true;
}

int run_cohomology(const std::string& echo, std::uint64_t seed, bool as_json, bool timings,
                   const std::string& algebra_file, const std::string& builtin_name,
                   const std::string& relative_arg, int max_degree) {
  if (algebra_file.empty() == builtin_name.empty())
    throw ParseError("cohomology: give exactly one of --algebra or --builtin");
  LieAlgebra g = algebra_file.empty() ? builtin_algebra(builtin_name)
                                      : algebra_from_json(load_json_file(algebra_file));
  check_complex_budget(g.dim(), max_degree);

  GradedComplex cx = ce_complex(g, max_degree);
  std::vector<int> b = betti(cx);

  std::vector<Extra> extras;
  extras.push_back({"betti", Json(b), join_ints(b)});

  std::vector<Check> checks;
  checks.push_back({"cohomology.complex", [cx](Rng&, int) {
                      return verify_detail::exact_result(composes_to_zero(cx),
                                                         "differential does not square to zero");
                    }});
  checks.push_back({"cohomology.betti", [cx, b](Rng&, int) {
                      long long chi_dims = 0, chi_betti = 0;
                      for (size_t p = 0; p < cx.dims.size(); ++p) {
                        long long sign = p % 2 == 0 ? 1 : -1;
                        chi_dims += sign * cx.dims[p];
                        chi_betti += sign * b[p];
                      }
                      CheckResult r = verify_detail::exact_result(
                          chi_dims == chi_betti, "Euler characteristic mismatch");
                      if (r.passed) r.note = "betti = " + join_ints(b);
                      return r;
                    }});

  if (!relative_arg.empty()) {
    Matrix<Rational> k = subalgebra_from_arg(relative_arg, g);
    BasicSubcomplex sub = basic_subcomplex(g, k, max_degree);
    std::vector<int> rb = betti(sub.restricted);
    extras.push_back({"relative_betti", Json(rb), join_ints(rb)});
    checks.push_back({"cohomology.relative", [sub, rb](Rng&, int) {
                        CheckResult r = verify_detail::exact_result(
                            composes_to_zero(sub.restricted),
                            "restricted differential does not square to zero");
                        if (r.passed) r.note = "relative betti = " + join_ints(rb);
                        return r;
                      }});
  }

  return emit(run_checks(echo, seed, 0, std::move(checks), timings), extras, as_json);
}

// ---------------------------------------------------------------------------
// verify

int run_verify(const std::string& echo, std::uint64_t seed, bool as_json, bool timings,
               const std::string& suite, int samples) {
  return emit(run_checks(echo, seed, samples, suite_checks(suite), timings), {}, as_json);
}

// ---------------------------------------------------------------------------
// eval

int run_eval(const std::string& echo, std::uint64_t seed, bool as_json, bool timings,
             const std::string& cochain_name, const std::string& tuple_arg, int quad) {
  QuadratureSpec spec;
  spec.order = quad;
  GroupCochain f = builtin_cochain(cochain_name, spec);
  std::vector<CMat> t = tuple_from_arg(tuple_arg);
  if (static_cast<int>(t.size()) != f.degree)
    throw ParseError("eval: cochain " + cochain_name + " has degree " +
                     std::to_string(f.degree) + " but the tuple has " +
                     std::to_string(t.size()) + " entries");
  for (const CMat& m : t)
    if (m.rows() != f.group_size || m.cols() != f.group_size)
      throw ParseError("eval: cochain " + cochain_name + " expects " +
                       std::to_string(f.group_size) + "x" + std::to_string(f.group_size) +
                       " matrices");

  const double value = f(t);

  std::vector<Extra> extras;
  extras.push_back({"value", format_value(value), format_value(value)});

  std::vector<Check> checks;
  checks.push_back({"eval.value_finite", [value](Rng&, int) {
                      CheckResult r = verify_detail::exact_result(std::isfinite(value),
                                                                  "value is not finite");
                      if (r.passed) r.note = "value = " + format_value(value);
                      return r;
                    }});

  // The degree-1 generator has two independent routes: the closed form
  // tr(X) from the polar factor, and the flow quadrature. Report both.
  if (cochain_name.rfind("v1@", 0) == 0) {
    const int n = f.group_size;
    checks.push_back({"eval.exact_path", [t, value](Rng&, int) {
                        double tr_x = polar(t[0]).x.trace().real();
                        CheckResult r;
                        r.residual = std::abs(value - tr_x);
                        r.tolerance = 1e-12;
                        r.passed = r.residual <= r.tolerance;
                        r.note = "tr(X) = " + format_value(tr_x);
                        return r;
                      }});
    checks.push_back({"eval.quadrature_path", [t, n, value, spec](Rng&, int) {
                        double integ = ve_integrate(u_generator(n, 1).u_basic, t, spec);
                        CheckResult r;
                        r.residual = std::abs(value - integ);
                        r.tolerance = 1e-8;
                        r.passed = r.residual <= r.tolerance;
                        return r;
                      }});
  }

  return emit(run_checks(echo, seed, 0, std::move(checks), timings), extras, as_json);
}

// ---------------------------------------------------------------------------
// class

int run_class(const std::string& echo, std::uint64_t seed, bool as_json, bool timings,
              const std::string& rep_file, int q, const std::string& law, int quad,
              int samples) {
  if (q < 1) throw ParseError("class: --q must be >= 1");
  Json doc = load_json_file(rep_file);
  GroupRep rep = rep_from_json(doc);
  QuadratureSpec spec;
  spec.order = quad;
  GroupCochain cls = group_class(rep, q, spec);

  const double loose = q == 1 ? 1e-6 : 1e-3;
  const int quick = samples > 0 ? samples : (q == 1 ? 5 : 2);

  std::vector<Check> checks;
  checks.push_back({"class.values_finite", [rep, cls, quick](Rng& rng, int) {
                      double first = 0.0;
                      for (int s = 0; s < quick; ++s) {
                        auto t = detail::sample_tuple(rep, rng, cls.degree);
                        double v = cls(t);
                        if (!std::isfinite(v))
                          return verify_detail::exact_result(false, "value is not finite");
                        if (s == 0) first = v;
                      }
                      CheckResult r = verify_detail::exact_result(true);
                      r.note = "sample value = " + format_value(first);
                      return r;
                    }});

  checks.push_back({"class.cocycle", [rep, cls, q, quick](Rng& rng, int) {
                      GroupCochain dc = coboundary(cls);
                      const int reps = q == 1 ? quick : 1;
                      double worst = 0.0;
                      for (int s = 0; s < reps; ++s)
                        worst = std::max(worst,
                                         std::abs(dc(detail::sample_tuple(rep, rng, dc.degree))));
                      return verify_detail::residual_result(worst, q == 1 ? 1e-8 : 1e-4);
                    }});

  if (law == "sum") {
    checks.push_back({"class.sum_law", [rep, q, quick, loose, spec](Rng& rng, int) {
                        return verify_detail::residual_result(
                            sum_law_residual(rep, rep, q, rng, quick, spec), loose);
                      }});
  } else if (law == "tensor") {
    // A kron file names its two factors; anything else is paired with the
    // one-dimensional identity, which tensors without changing the class.
    GroupRep v = rep, w = identity_rep(1);
    if (doc.is_object() && doc.value("kind", "") == "kron" && doc.contains("parts") &&
        doc["parts"].is_array() && doc["parts"].size() == 2) {
      v = rep_from_json(doc["parts"][0]);
      w = rep_from_json(doc["parts"][1]);
    }
    checks.push_back({"class.tensor_law", [v, w, q, quick, loose, spec](Rng& rng, int) {
                        return verify_detail::residual_result(
                            tensor_law_residual(v, w, q, rng, quick, spec), loose);
                      }});
  } else if (law == "dual") {
    checks.push_back({"class.dual_law", [rep, q, quick, loose, spec](Rng& rng, int) {
                        return verify_detail::residual_result(
                            dual_law_residual(rep, q, rng, quick, spec), loose);
                      }});
  } else if (law == "ve") {
    checks.push_back({"class.ve_compatibility", [rep, q, quick, spec](Rng& rng, int) {
                        return verify_detail::residual_result(
                            ve_compatibility_check(rep, q, rng, quick, spec), 1e-5);
                      }});
  } else if (law == "real") {
    if (q % 2 != 0)
      throw ParseError("class: --check real needs an even --q (the odd classes do not vanish)");
    checks.push_back({"class.real_vanishing", [rep, q, quick, spec](Rng& rng, int) {
                        return verify_detail::residual_result(
                            real_vanishing_check(rep, q, rng, quick, spec), 1e-3);
                      }});
  } else if (!law.empty()) {
    throw ParseError("class: unknown --check " + law + " (expected sum|tensor|dual|ve|real)");
  }

  return emit(run_checks(echo, seed, samples, std::move(checks), timings), {}, as_json);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cohomology toolkit: complexes, verification suites, cochains, classes"};
  app.require_subcommand(1);
  // global flags may trail the subcommand, as in `verify --suite ce --seed 1`
  app.fallthrough();

  std::uint64_t seed = 42;
  bool as_json = false;
  bool timings = false;
  app.add_option("--seed", seed, "seed for all randomized checks")->capture_default_str();
  app.add_flag("--json", as_json, "emit the report as a structured document");
  app.add_flag("--timings", timings, "include per-check runtimes in the report");

  auto* cohomology =
      app.add_subcommand("cohomology", "Betti numbers of a Lie algebra, optionally relative");
  std::string algebra_file, builtin_name, relative_arg;
  int max_degree = -1;
  cohomology->add_option("--algebra", algebra_file, "algebra description file");
  cohomology->add_option("--builtin", builtin_name, "builtin algebra name (abelianN, heisenberg, su2, glNC)");
  cohomology->add_option("--relative", relative_arg, "subalgebra basis file or builtin name (uN)");
  cohomology->add_option("--max-degree", max_degree, "truncate the complex at this degree");

  auto* verify = app.add_subcommand("verify", "run a named invariant suite");
  std::string suite;
  int verify_samples = 0;
  verify->add_option("--suite", suite,
                     "exterior|ce|perturbation|groupchains|vanest|classes|all")
      ->required();
  verify->add_option("--samples", verify_samples, "per-check sample count override");

  auto* eval_cmd = app.add_subcommand("eval", "evaluate a builtin cochain on a tuple");
  std::string cochain_name, tuple_arg;
  int eval_quad = 16;
  eval_cmd->add_option("--cochain", cochain_name, "cochain name (v1@n, v3@n, logabsdet@n, const:c)")
      ->required();
  eval_cmd->add_option("--tuple", tuple_arg, "tuple file or inline diag(...) list")->required();
  eval_cmd->add_option("--quad", eval_quad, "quadrature order")->capture_default_str();

  auto* class_cmd = app.add_subcommand("class", "characteristic class of a representation");
  std::string rep_file, law;
  int q = 1;
  int class_quad = 16;
  int class_samples = 0;
  class_cmd->add_option("--rep", rep_file, "representation description file")->required();
  class_cmd->add_option("--q", q, "class index: the degree 2q-1 generator")->required();
  class_cmd->add_option("--check", law, "law to verify: sum|tensor|dual|ve|real");
  class_cmd->add_option("--quad", class_quad, "quadrature order")->capture_default_str();
  class_cmd->add_option("--samples", class_samples, "per-check sample count override");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string echo = command_echo(argc, argv);

  try {
    if (cohomology->parsed())
      return run_cohomology(echo, seed, as_json, timings, algebra_file, builtin_name,
                            relative_arg, max_degree);
    if (verify->parsed()) return run_verify(echo, seed, as_json, timings, suite, verify_samples);
    if (eval_cmd->parsed())
      return run_eval(echo, seed, as_json, timings, cochain_name, tuple_arg, eval_quad);
    if (class_cmd->parsed())
      return run_class(echo, seed, as_json, timings, rep_file, q, law, class_quad,
                       class_samples);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const JacobiError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
