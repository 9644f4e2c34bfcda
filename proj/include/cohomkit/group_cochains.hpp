#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cohomkit/cmatrix.hpp"
#include "cohomkit/exterior.hpp"

namespace cohomkit {

/// Smooth p-cochain on GL_n in inhomogeneous coordinates: a pure evaluator
/// on p-tuples of group elements. Flags are caller-supplied metadata.
struct GroupCochain {
  int degree = 0;
  int group_size = 0;
  std::function<double(const std::vector<CMat>&)> evaluator;
  bool claimed_normalized = false;
  bool claimed_invariant = false;

  double operator()(const std::vector<CMat>& args) const {
    if (static_cast<int>(args.size()) != degree)
      throw std::invalid_argument("GroupCochain: tuple length must equal degree");
    return evaluator(args);
  }
};

/// Same data in homogeneous coordinates: evaluator on (p+1)-tuples.
struct HomogeneousCochain {
  int degree = 0;
  int group_size = 0;
  std::function<double(const std::vector<CMat>&)> evaluator;

  double operator()(const std::vector<CMat>& args) const {
    if (static_cast<int>(args.size()) != degree + 1)
      throw std::invalid_argument("HomogeneousCochain: tuple length must be degree + 1");
    return evaluator(args);
  }
};

inline GroupCochain constant_cochain(int n, double c) {
  GroupCochain f;
  f.degree = 0;
  f.group_size = n;
  f.evaluator = [c](const std::vector<CMat>&) { return c; };
  return f;
}

inline GroupCochain logabsdet_cochain(int n) {
  GroupCochain f;
  f.degree = 1;
  f.group_size = n;
  f.claimed_invariant = true;
  f.evaluator = [](const std::vector<CMat>& g) {
    require_invertible(g[0]);
    return std::log(std::abs(g[0].determinant()));
  };
  return f;
}

/// Simplicial differential in inhomogeneous coordinates:
/// (df)(g_1..g_{p+1}) = f(g_2..) + sum_i (-1)^i f(.., g_i g_{i+1}, ..)
///                    + (-1)^{p+1} f(g_1..g_p).
inline GroupCochain coboundary(const GroupCochain& f) {
  GroupCochain out;
  out.degree = f.degree + 1;
  out.group_size = f.group_size;
  out.evaluator = [ev = f.evaluator, p = f.degree](const std::vector<CMat>& g) {
    double total = ev(std::vector<CMat>(g.begin() + 1, g.end()));
    int sign = -1;
    for (int i = 1; i <= p; ++i, sign = -sign) {
      std::vector<CMat> t;
      t.reserve(p);
      for (int j = 0; j < i - 1; ++j) t.push_back(g[j]);
      t.push_back(g[i - 1] * g[i]);
      for (int j = i + 1; j <= p; ++j) t.push_back(g[j]);
      total += sign * ev(t);
    }
    total += sign * ev(std::vector<CMat>(g.begin(), g.end() - 1));
    return total;
  };
  return out;
}

inline GroupCochain cup(const GroupCochain& f, const GroupCochain& g) {
  if (f.group_size != g.group_size)
    throw std::invalid_argument("cup: cochains live on different groups");
  GroupCochain out;
  out.degree = f.degree + g.degree;
  out.group_size = f.group_size;
  out.evaluator = [fe = f.evaluator, ge = g.evaluator, p = f.degree](const std::vector<CMat>& a) {
    return fe(std::vector<CMat>(a.begin(), a.begin() + p)) *
           ge(std::vector<CMat>(a.begin() + p, a.end()));
  };
  return out;
}

/// Simplicial differential in homogeneous coordinates: alternating sum over
/// dropped entries.
inline HomogeneousCochain hom_coboundary(const HomogeneousCochain& f) {
  HomogeneousCochain out;
  out.degree = f.degree + 1;
  out.group_size = f.group_size;
  out.evaluator = [ev = f.evaluator, p = f.degree](const std::vector<CMat>& h) {
    double total = 0;
    int sign = 1;
    for (int i = 0; i <= p + 1; ++i, sign = -sign) {
      std::vector<CMat> t;
      t.reserve(p + 1);
      for (int j = 0; j <= p + 1; ++j)
        if (j != i) t.push_back(h[j]);
      total += sign * ev(t);
    }
    return total;
  };
  return out;
}

namespace detail {

/// Bitwise canonical key of a tuple; used to group terms so that
/// cancellations between syntactically equal tuples are exact.
inline std::string tuple_key(const std::vector<CMat>& t) {
  std::string key;
  for (const CMat& m : t)
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j) {
        double re = m(i, j).real();
        double im = m(i, j).imag();
        key.append(reinterpret_cast<const char*>(&re), sizeof(double));
        key.append(reinterpret_cast<const char*>(&im), sizeof(double));
      }
  return key;
}

}  // namespace detail

/// Projection onto normalized cochains: the 2^p-term signed sum
/// N(f)(g_0..g_p) = sum_eps (-1)^|eps| f(g_0, x_1..x_p) with x_i = g_{i-1}
/// when eps_i is set, g_i otherwise. Terms are grouped by tuple bytes with
/// integer multiplicities, so the output vanishes exactly on tuples with a
/// repeated consecutive entry.
inline HomogeneousCochain normalize_N(const HomogeneousCochain& f) {
  HomogeneousCochain out = f;
  out.evaluator = [ev = f.evaluator, p = f.degree](const std::vector<CMat>& g) {
    std::map<std::string, std::pair<std::vector<CMat>, long>> groups;
    for (unsigned mask = 0; mask < (1u << p); ++mask) {
      std::vector<CMat> t(p + 1);
      t[0] = g[0];
      int sign = 1;
      for (int i = 1; i <= p; ++i) {
        if ((mask >> (i - 1)) & 1u) {
          t[i] = g[i - 1];
          sign = -sign;
        } else {
          t[i] = g[i];
        }
      }
      auto& slot = groups[detail::tuple_key(t)];
      if (slot.first.empty()) slot.first = t;
      slot.second += sign;
    }
    double total = 0;
    for (const auto& [key, grp] : groups)
      if (grp.second != 0) total += static_cast<double>(grp.second) * ev(grp.first);
    return total;
  };
  return out;
}

/// Change of coordinates to inhomogeneous cochains. Requires F to be
/// right-invariant, F(h_0 a, .., h_p a) = F(h_0, .., h_p); spot-checked on
/// random samples before the conversion is returned.
inline GroupCochain hom_to_inhom(const HomogeneousCochain& f, Rng& rng, int samples = 5) {
  const int p = f.degree;
  const int n = f.group_size;
  for (int s = 0; s < samples; ++s) {
    std::vector<CMat> h(p + 1), ha(p + 1);
    CMat a = random_gl(rng, n);
    for (int i = 0; i <= p; ++i) {
      h[i] = random_gl(rng, n);
      ha[i] = h[i] * a;
    }
    double lhs = f.evaluator(ha);
    double rhs = f.evaluator(h);
    if (std::abs(lhs - rhs) > 1e-9 * (1.0 + std::abs(rhs)))
      throw PreconditionError("hom_to_inhom: cochain is not right-invariant");
  }
  GroupCochain out;
  out.degree = p;
  out.group_size = n;
  out.evaluator = [ev = f.evaluator, p, n](const std::vector<CMat>& g) {
    std::vector<CMat> h(p + 1);
    h[p] = CMat::Identity(n, n);
    for (int i = p - 1; i >= 0; --i) h[i] = g[i] * h[i + 1];
    return ev(h);
  };
  return out;
}

inline HomogeneousCochain inhom_to_hom(const GroupCochain& f) {
  HomogeneousCochain out;
  out.degree = f.degree;
  out.group_size = f.group_size;
  out.evaluator = [ev = f.evaluator, p = f.degree](const std::vector<CMat>& h) {
    std::vector<CMat> g(p);
    for (int i = 0; i < p; ++i) {
      require_invertible(h[i + 1]);
      g[i] = h[i] * h[i + 1].inverse();
    }
    return ev(g);
  };
  return out;
}

/// Contracting homotopy of the homogeneous complex: append the unit,
/// (hF)(h_0..h_{p-1}) = (-1)^p F(h_0, .., h_{p-1}, I). Together with
/// evaluation at (I) in degree 0 it satisfies [h, d] = 1 - i p.
inline HomogeneousCochain eg_homotopy(const HomogeneousCochain& f) {
  if (f.degree == 0) throw std::invalid_argument("eg_homotopy: needs degree >= 1");
  HomogeneousCochain out;
  out.degree = f.degree - 1;
  out.group_size = f.group_size;
  out.evaluator = [ev = f.evaluator, p = f.degree, n = f.group_size](const std::vector<CMat>& h) {
    std::vector<CMat> t = h;
    t.push_back(CMat::Identity(n, n));
    return (p % 2 == 0 ? 1.0 : -1.0) * ev(t);
  };
  return out;
}

namespace detail {

inline void require_finite_subgroup(const std::vector<CMat>& k) {
  if (k.empty()) throw PreconditionError("average_finite: subgroup sample is empty");
  const int n = static_cast<int>(k[0].rows());
  double scale = 1.0;
  for (const CMat& a : k) scale = std::max(scale, a.norm());
  auto member = [&](const CMat& m) {
    for (const CMat& c : k)
      if ((m - c).norm() <= 1e-10 * scale) return true;
    return false;
  };
  if (!member(CMat::Identity(n, n)))
    throw PreconditionError("average_finite: unit is missing");
  for (const CMat& a : k) {
    require_invertible(a);
    if (!member(a.inverse()))
      throw PreconditionError("average_finite: not closed under inverse");
    for (const CMat& b : k)
      if (!member(a * b))
        throw PreconditionError("average_finite: not closed under product");
  }
}

}  // namespace detail

/// Total averaging over K^{p+1}: each group entry is conjugated across a pair
/// of subgroup elements, g_i -> a_{i-1}^{-1} g_i a_i, and the result is the
/// mean over all index tuples. The image is K-invariant and the operator
/// fixes cochains that already are.
inline GroupCochain average_finite(const GroupCochain& f, const std::vector<CMat>& k) {
  detail::require_finite_subgroup(k);
  std::vector<CMat> kinv;
  kinv.reserve(k.size());
  for (const CMat& a : k) kinv.push_back(a.inverse());
  GroupCochain out = f;
  out.claimed_invariant = true;
  out.evaluator = [ev = f.evaluator, k, kinv, p = f.degree](const std::vector<CMat>& g) {
    const int m = static_cast<int>(k.size());
    std::vector<int> idx(p + 1, 0);
    double total = 0;
    long count = 0;
    while (true) {
      std::vector<CMat> t(p);
      for (int i = 0; i < p; ++i) t[i] = kinv[idx[i]] * g[i] * k[idx[i + 1]];
      total += ev(t);
      ++count;
      int j = 0;
      while (j <= p && ++idx[j] == m) idx[j++] = 0;
      if (j > p) break;
    }
    return total / static_cast<double>(count);
  };
  return out;
}

// ---------------------------------------------------------------------------
// Transitive groupoid model over a finite sample of base points.

struct Arrow {
  int target = 0;
  CMat mat;
  int source = 0;
};

inline Arrow compose(const Arrow& x, const Arrow& y) {
  if (x.source != y.target) throw std::invalid_argument("compose: arrows are not composable");
  return {x.target, x.mat * y.mat, y.source};
}

/// Trivial-bundle transitive groupoid: base points are opaque ids, every
/// arrow carries a GL_n matrix, and the distinguished basepoint z is
/// base_points[0] with unit lifts (m, I, z). isotropy_witnesses is a finite
/// sample of the isotropy subgroup used for invariance spot-checks.
struct TransitiveModel {
  std::vector<int> base_points;
  int iso_size = 0;
  std::vector<CMat> isotropy_witnesses;

  TransitiveModel(std::vector<int> pts, int n) : base_points(std::move(pts)), iso_size(n) {
    if (base_points.empty())
      throw std::invalid_argument("TransitiveModel: need at least one base point");
    isotropy_witnesses.push_back(CMat::Identity(n, n));
  }

  int z() const { return base_points[0]; }

  Arrow unit(int m) const { return {m, CMat::Identity(iso_size, iso_size), m}; }
};

struct ArrowCochain {
  int degree = 0;
  int group_size = 0;
  std::function<double(const std::vector<Arrow>&)> evaluator;

  double operator()(const std::vector<Arrow>& args) const {
    if (static_cast<int>(args.size()) != degree)
      throw std::invalid_argument("ArrowCochain: tuple length must equal degree");
    return evaluator(args);
  }
};

inline ArrowCochain arrow_coboundary(const ArrowCochain& f) {
  ArrowCochain out;
  out.degree = f.degree + 1;
  out.group_size = f.group_size;
  out.evaluator = [ev = f.evaluator, p = f.degree](const std::vector<Arrow>& g) {
    double total = ev(std::vector<Arrow>(g.begin() + 1, g.end()));
    int sign = -1;
    for (int i = 1; i <= p; ++i, sign = -sign) {
      std::vector<Arrow> t;
      t.reserve(p);
      for (int j = 0; j < i - 1; ++j) t.push_back(g[j]);
      t.push_back(compose(g[i - 1], g[i]));
      for (int j = i + 1; j <= p; ++j) t.push_back(g[j]);
      total += sign * ev(t);
    }
    total += sign * ev(std::vector<Arrow>(g.begin(), g.end() - 1));
    return total;
  };
  return out;
}

inline ArrowCochain arrow_cup(const ArrowCochain& f, const ArrowCochain& g) {
  if (f.group_size != g.group_size)
    throw std::invalid_argument("arrow_cup: cochains live on different models");
  ArrowCochain out;
  out.degree = f.degree + g.degree;
  out.group_size = f.group_size;
  out.evaluator = [fe = f.evaluator, ge = g.evaluator, p = f.degree](const std::vector<Arrow>& a) {
    return fe(std::vector<Arrow>(a.begin(), a.begin() + p)) *
           ge(std::vector<Arrow>(a.begin() + p, a.end()));
  };
  return out;
}

/// Extension of an isotropy cochain at z to the whole groupoid through the
/// unit lifts: an arrow tuple is sandwiched between lifts, which reduces to
/// reading off the carried matrices. Requires f to be invariant under the
/// model's isotropy witnesses.
inline ArrowCochain ext_transitive(const TransitiveModel& model, const GroupCochain& f, Rng& rng,
                                   int samples = 5) {
  if (f.group_size != model.iso_size)
    throw std::invalid_argument("ext_transitive: cochain group size does not match model");
  const int p = f.degree;
  if (p > 0 && model.isotropy_witnesses.size() > 1) {
    for (int s = 0; s < samples; ++s) {
      std::vector<CMat> g(p), conj(p);
      std::vector<CMat> ks(p + 1);
      for (auto& kk : ks) {
        int pick = rand_int(rng, 0, static_cast<int>(model.isotropy_witnesses.size()) - 1);
        kk = model.isotropy_witnesses[pick];
      }
      for (int i = 0; i < p; ++i) {
        g[i] = random_gl(rng, model.iso_size);
        conj[i] = ks[i].inverse() * g[i] * ks[i + 1];
      }
      double lhs = f.evaluator(conj);
      double rhs = f.evaluator(g);
      if (std::abs(lhs - rhs) > 1e-9 * (1.0 + std::abs(rhs)))
        throw PreconditionError("ext_transitive: cochain is not isotropy-invariant");
    }
  }
  ArrowCochain out;
  out.degree = p;
  out.group_size = model.iso_size;
  out.evaluator = [ev = f.evaluator, p](const std::vector<Arrow>& arrows) {
    for (int i = 0; i + 1 < p; ++i)
      if (arrows[i].source != arrows[i + 1].target)
        throw std::invalid_argument("ext_transitive: arrow tuple is not composable");
    std::vector<CMat> g(p);
    for (int i = 0; i < p; ++i) g[i] = arrows[i].mat;
    return ev(g);
  };
  return out;
}

/// Restriction to the isotropy at z: evaluate on loops (z, A_i, z).
inline GroupCochain restrict_transitive(const TransitiveModel& model, const ArrowCochain& f) {
  GroupCochain out;
  out.degree = f.degree;
  out.group_size = model.iso_size;
  out.evaluator = [ev = f.evaluator, p = f.degree, z = model.z()](const std::vector<CMat>& g) {
    std::vector<Arrow> arrows(p);
    for (int i = 0; i < p; ++i) arrows[i] = {z, g[i], z};
    return ev(arrows);
  };
  return out;
}

/// Infinitesimal counterpart of ext: a form on the isotropy algebra at z is
/// carried to every base point with the same coefficients (conjugation by
/// unit lifts is the identity).
struct AlgebroidSection {
  std::map<int, AltForm<Rational>> at;
};

inline AlgebroidSection ext_algebroid(const TransitiveModel& model,
                                      const AltForm<Rational>& alpha_z) {
  AlgebroidSection s;
  for (int m : model.base_points) s.at.emplace(m, alpha_z);
  return s;
}

inline AltForm<Rational> restrict_algebroid(const TransitiveModel& model,
                                            const AlgebroidSection& s) {
  auto it = s.at.find(model.z());
  if (it == s.at.end())
    throw std::invalid_argument("restrict_algebroid: section is missing the basepoint");
  return it->second;
}

}  // namespace cohomkit
