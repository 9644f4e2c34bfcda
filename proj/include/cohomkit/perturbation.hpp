#pragma once

#include <string>
#include <vector>

#include "cohomkit/complex.hpp"
#include "cohomkit/matrix.hpp"

namespace cohomkit {

/// Bounded first-quadrant double complex. Column index p < width, row index
/// q < height. d_vert[p][q]: (p,q) -> (p,q+1); d_horiz[p][q]: (p,q) -> (p+1,q).
/// The two differentials anticommute in storage, so d + delta squares to zero
/// with no auxiliary signs.
///
/// Boundary maps whose target leaves the grid are stored with zero rows. When
/// `truncated` is set, columns >= width exist mathematically but are not
/// stored, and the boundary d_horiz entries are placeholders: validation and
/// identity checks then skip any bidegree whose identity would need them. The
/// vertical direction is always complete.
struct DoubleComplex {
  int width = 0;
  int height = 0;
  std::vector<std::vector<int>> dims;
  std::vector<std::vector<Matrix<Rational>>> d_vert;
  std::vector<std::vector<Matrix<Rational>>> d_horiz;
  bool truncated = false;

  int dim(int p, int q) const {
    if (p < 0 || p >= width || q < 0 || q >= height) return 0;
    return dims[p][q];
  }
};

/// Grid of zero-dimensional cells with correctly-shaped zero maps.
inline DoubleComplex make_grid(int width, int height, bool truncated = false) {
  DoubleComplex D;
  D.width = width;
  D.height = height;
  D.truncated = truncated;
  D.dims.assign(width, std::vector<int>(height, 0));
  D.d_vert.assign(width, std::vector<Matrix<Rational>>(height));
  D.d_horiz.assign(width, std::vector<Matrix<Rational>>(height));
  return D;
}

/// Reshape all stored maps to match dims (all zero). Call after editing dims.
inline void reshape_maps(DoubleComplex& D) {
  for (int p = 0; p < D.width; ++p)
    for (int q = 0; q < D.height; ++q) {
      D.d_vert[p][q] = Matrix<Rational>(D.dim(p, q + 1), D.dim(p, q));
      D.d_horiz[p][q] = Matrix<Rational>(D.dim(p + 1, q), D.dim(p, q));
    }
}

inline void validate_double_complex(const DoubleComplex& D) {
  auto fail = [](const std::string& what) { throw PreconditionError("double complex: " + what); };
  if (static_cast<int>(D.dims.size()) != D.width) fail("dims grid width mismatch");
  for (int p = 0; p < D.width; ++p) {
    if (static_cast<int>(D.dims[p].size()) != D.height) fail("dims grid height mismatch");
    for (int q = 0; q < D.height; ++q) {
      if (D.dims[p][q] < 0) fail("negative fiber dimension");
      const Matrix<Rational>& dv = D.d_vert[p][q];
      if (dv.rows != D.dim(p, q + 1) || dv.cols != D.dim(p, q)) fail("d_vert shape");
      const Matrix<Rational>& dh = D.d_horiz[p][q];
      if (dh.cols != D.dim(p, q)) fail("d_horiz shape");
      if (!D.truncated && dh.rows != D.dim(p + 1, q)) fail("d_horiz shape");
      if (D.truncated && p + 1 < D.width && dh.rows != D.dim(p + 1, q)) fail("d_horiz shape");
    }
  }
  // In-grid composability bounds; on truncated grids identities that would
  // read a placeholder boundary map are skipped.
  const int last = D.width - 1;
  for (int p = 0; p < D.width; ++p)
    for (int q = 0; q < D.height; ++q) {
      if (q + 1 < D.height && !(D.d_vert[p][q + 1] * D.d_vert[p][q]).is_zero())
        fail("d_vert does not square to zero");
      if (p + (D.truncated ? 2 : 0) <= last && p + 1 < D.width &&
          !(D.d_horiz[p + 1][q] * D.d_horiz[p][q]).is_zero())
        fail("d_horiz does not square to zero");
      if ((!D.truncated || p + 1 <= last) && q + 1 < D.height && p + 1 < D.width) {
        Matrix<Rational> anti =
            D.d_horiz[p][q + 1] * D.d_vert[p][q] + D.d_vert[p + 1][q] * D.d_horiz[p][q];
        if (!anti.is_zero()) fail("differentials do not anticommute");
      }
    }
}

/// Double complex with augmentations: i embeds the column complex X into
/// column 0 with h a horizontal contraction onto its image, j embeds the row
/// complex Y into row 0, optionally with a vertical contraction k onto it.
/// h[p][q]: (p,q) -> (p-1,q); k[p][q]: (p,q) -> (p,q-1); maps leaving the
/// grid downward have zero rows.
struct AugmentedData {
  DoubleComplex D;
  GradedComplex X;                          // X.dims.size() == D.height
  std::vector<Matrix<Rational>> i_map;      // i_map[q]: X^q -> D^{0,q}
  std::vector<Matrix<Rational>> p_map;      // p_map[q]: D^{0,q} -> X^q
  std::vector<std::vector<Matrix<Rational>>> h;
  GradedComplex Y;                          // Y.dims.size() == D.width
  std::vector<Matrix<Rational>> j_map;      // j_map[p]: Y^p -> D^{p,0}
  bool has_vertical = false;
  std::vector<std::vector<Matrix<Rational>>> k;
  std::vector<Matrix<Rational>> q_map;      // q_map[p]: D^{p,0} -> Y^p
};

/// Exact verification of every augmentation invariant:
///   p.i = 1, delta.i = 0, i and p_map chain maps for the vertical d,
///   [h,delta] = 1 - i.p blockwise, d.j = 0, delta.j = j.delta_Y,
/// and when the vertical side is present q.j = 1 and [d,k] = 1 - j.q.
inline void validate_augmented(const AugmentedData& a) {
  validate_double_complex(a.D);
  auto fail = [](const std::string& what) { throw PreconditionError("augmented data: " + what); };
  const DoubleComplex& D = a.D;
  const int W = D.width, H = D.height;
  if (static_cast<int>(a.X.dims.size()) != H) fail("X degree count != grid height");
  if (static_cast<int>(a.Y.dims.size()) != W) fail("Y degree count != grid width");
  if (static_cast<int>(a.i_map.size()) != H || static_cast<int>(a.p_map.size()) != H)
    fail("i/p_map length");
  if (static_cast<int>(a.j_map.size()) != W) fail("j_map length");
  auto xdim = [&](int s) { return (s >= 0 && s < H) ? a.X.dims[s] : 0; };
  for (int q = 0; q < H; ++q) {
    if (a.i_map[q].rows != D.dim(0, q) || a.i_map[q].cols != a.X.dims[q]) fail("i_map shape");
    if (a.p_map[q].rows != a.X.dims[q] || a.p_map[q].cols != D.dim(0, q)) fail("p_map shape");
    if (!(a.p_map[q] * a.i_map[q] == Matrix<Rational>::identity(a.X.dims[q])))
      fail("p.i is not the identity");
    if (!D.truncated || W >= 2)
      if (W >= 1 && !(D.d_horiz[0][q] * a.i_map[q]).is_zero()) fail("delta.i != 0");
    if (q + 1 < H) {
      Matrix<Rational> xd = a.X.d[q];
      if (xd.rows != xdim(q + 1) || xd.cols != xdim(q)) fail("X differential shape");
      if (!(D.d_vert[0][q] * a.i_map[q] == a.i_map[q + 1] * xd)) fail("i is not a chain map");
      if (!(xd * a.p_map[q] == a.p_map[q + 1] * D.d_vert[0][q])) fail("p_map is not a chain map");
    } else if (q + 1 == H) {
      // top vertical map leaves the grid; nothing to intertwine
      if (!(D.d_vert[0][q] * a.i_map[q]).is_zero()) fail("i is not a chain map");
    }
  }
  for (int p = 0; p < W; ++p)
    for (int q = 0; q < H; ++q) {
      const Matrix<Rational>& hp = a.h[p][q];
      if (hp.rows != D.dim(p - 1, q) || hp.cols != D.dim(p, q)) fail("h shape");
    }
  // [h, delta] = 1 - i.p on column 0 and = 1 elsewhere, where computable.
  for (int p = 0; p < W; ++p) {
    if (D.truncated && p + 1 >= W) continue;
    for (int q = 0; q < H; ++q) {
      Matrix<Rational> lhs(D.dim(p, q), D.dim(p, q));
      if (p + 1 < W) lhs = lhs + a.h[p + 1][q] * D.d_horiz[p][q];
      if (p >= 1) lhs = lhs + D.d_horiz[p - 1][q] * a.h[p][q];
      Matrix<Rational> rhs = Matrix<Rational>::identity(D.dim(p, q));
      if (p == 0) rhs = rhs - a.i_map[q] * a.p_map[q];
      if (!(lhs == rhs)) fail("[h,delta] != 1 - i.p at (" + std::to_string(p) + "," +
                              std::to_string(q) + ")");
    }
  }
  for (int p = 0; p < W; ++p) {
    if (a.j_map[p].rows != D.dim(p, 0) || a.j_map[p].cols != a.Y.dims[p]) fail("j_map shape");
    if (!(D.d_vert[p][0] * a.j_map[p]).is_zero()) fail("d.j != 0");
    if (p + 1 < W) {
      Matrix<Rational> yd = a.Y.d[p];
      if (yd.rows != a.Y.dims[p + 1] || yd.cols != a.Y.dims[p]) fail("Y differential shape");
      if (!(D.d_horiz[p][0] * a.j_map[p] == a.j_map[p + 1] * yd)) fail("j is not a chain map");
    } else if (!D.truncated) {
      if (!(D.d_horiz[p][0] * a.j_map[p]).is_zero()) fail("j is not a chain map");
    }
  }
  if (a.has_vertical) {
    if (static_cast<int>(a.q_map.size()) != W) fail("q_map length");
    for (int p = 0; p < W; ++p)
      for (int q = 0; q < H; ++q) {
        const Matrix<Rational>& kp = a.k[p][q];
        if (kp.rows != D.dim(p, q - 1) || kp.cols != D.dim(p, q)) fail("k shape");
      }
    for (int p = 0; p < W; ++p) {
      if (a.q_map[p].rows != a.Y.dims[p] || a.q_map[p].cols != D.dim(p, 0)) fail("q_map shape");
      if (!(a.q_map[p] * a.j_map[p] == Matrix<Rational>::identity(a.Y.dims[p])))
        fail("q.j is not the identity");
      for (int q = 0; q < H; ++q) {
        Matrix<Rational> lhs(D.dim(p, q), D.dim(p, q));
        if (q + 1 < H) lhs = lhs + a.k[p][q + 1] * D.d_vert[p][q];
        if (q >= 1) lhs = lhs + D.d_vert[p][q - 1] * a.k[p][q];
        Matrix<Rational> rhs = Matrix<Rational>::identity(D.dim(p, q));
        if (q == 0) rhs = rhs - a.j_map[p] * a.q_map[p];
        if (!(lhs == rhs)) fail("[d,k] != 1 - j.q at (" + std::to_string(p) + "," +
                                std::to_string(q) + ")");
      }
    }
  }
}

/// h' = h(1 + dh)^{-1} and p' = p(1 + dh)^{-1}, expanded as terminating
/// alternating series. h' is block-structured: from (p,q) the k-th term
/// h(dh)^k lands in (p-1-k, q+k); p' from (p,q) has the single component
/// (-1)^p p.(dh)^p into X^{p+q}.
struct PerturbedMaps {
  // h_prime[p][q][k]: the signed block (-1)^k h(dh)^k from (p,q); entries
  // beyond the stored count vanished by leaving the grid.
  std::vector<std::vector<std::vector<Matrix<Rational>>>> h_prime;
  std::vector<std::vector<Matrix<Rational>>> p_prime;  // (p,q) -> X^{p+q} (or 0 rows)
};

inline PerturbedMaps perturb_horizontal(const AugmentedData& a) {
  validate_augmented(a);
  const DoubleComplex& D = a.D;
  PerturbedMaps m;
  m.h_prime.assign(D.width, std::vector<std::vector<Matrix<Rational>>>(D.height));
  m.p_prime.assign(D.width, std::vector<Matrix<Rational>>(D.height));
  for (int p = 0; p < D.width; ++p)
    for (int q = 0; q < D.height; ++q) {
      // walk = (dh)^k from (p,q), currently at (p-k, q+k)
      Matrix<Rational> walk = Matrix<Rational>::identity(D.dim(p, q));
      int sign = 1;
      for (int k = 0; k <= p; ++k) {
        int cp = p - k, cq = q + k;
        if (cq >= D.height) break;
        if (cp >= 1) {
          Matrix<Rational> term = a.h[cp][cq] * walk;
          m.h_prime[p][q].push_back(sign > 0 ? term : Rational(-1) * term);
        }
        if (cp == 0) {
          int s = p + q;
          Matrix<Rational> comp = a.p_map[cq] * walk;
          m.p_prime[p][q] = (p % 2 == 0) ? comp : Rational(-1) * comp;
          if (s >= D.height) m.p_prime[p][q] = Matrix<Rational>(0, D.dim(p, q));
          break;
        }
        if (cq + 1 >= D.height) break;
        walk = D.d_vert[cp - 1][cq] * (a.h[cp][cq] * walk);
        sign = -sign;
      }
      if (m.p_prime[p][q].cols != D.dim(p, q) || (p + q >= D.height && m.p_prime[p][q].rows != 0))
        m.p_prime[p][q] = Matrix<Rational>(p + q < D.height ? a.X.dims[p + q] : 0, D.dim(p, q));
    }
  return m;
}

namespace detail {
inline Matrix<Rational> hprime_block(const AugmentedData& a, const PerturbedMaps& m, int p,
                                     int q, int k) {
  const DoubleComplex& D = a.D;
  if (p >= 0 && p < D.width && q >= 0 && q < D.height && k >= 0 &&
      k < static_cast<int>(m.h_prime[p][q].size()))
    return m.h_prime[p][q][k];
  return Matrix<Rational>(D.dim(p - 1 - k, q + k), D.dim(p, q));
}
}  // namespace detail

/// Exact blockwise verification of [h', d+delta] = 1 - i.p' on the total
/// complex. On truncated grids the last stored column is skipped (its
/// horizontal differential is not stored).
inline bool perturbed_identity_holds(const AugmentedData& a, const PerturbedMaps& m) {
  const DoubleComplex& D = a.D;
  for (int p = 0; p < D.width; ++p) {
    if (D.truncated && p + 1 >= D.width) continue;
    for (int q = 0; q < D.height; ++q) {
      for (int k = 0; k <= p; ++k) {
        int tp = p - k, tq = q + k;  // target bidegree of this block row
        if (tq >= D.height) break;
        Matrix<Rational> lhs(D.dim(tp, tq), D.dim(p, q));
        if (k >= 1) {
          if (q + 1 < D.height)
            lhs = lhs + detail::hprime_block(a, m, p, q + 1, k - 1) * D.d_vert[p][q];
          if (tq >= 1)
            lhs = lhs + D.d_vert[tp][tq - 1] * detail::hprime_block(a, m, p, q, k - 1);
        }
        if (p + 1 < D.width)
          lhs = lhs + detail::hprime_block(a, m, p + 1, q, k) * D.d_horiz[p][q];
        if (tp >= 1) lhs = lhs + D.d_horiz[tp - 1][tq] * detail::hprime_block(a, m, p, q, k);
        Matrix<Rational> rhs(D.dim(tp, tq), D.dim(p, q));
        if (k == 0) rhs = Matrix<Rational>::identity(D.dim(p, q));
        if (tp == 0 && p + q < D.height)
          rhs = rhs - a.i_map[p + q] * m.p_prime[p][q];
        if (!(lhs == rhs)) return false;
      }
    }
  }
  return true;
}

/// The cochain map Y -> X: degree t component (-1)^t p.(dh)^t.j.
/// Entry t has zero rows when X^t lies outside the grid height.
inline std::vector<Matrix<Rational>> xy_map(const AugmentedData& a) {
  const DoubleComplex& D = a.D;
  std::vector<Matrix<Rational>> out;
  for (int t = 0; t < D.width; ++t) {
    Matrix<Rational> walk = a.j_map[t];  // into (t, 0), climbing to (0, t)
    bool alive = true;
    for (int k = 0; k < t && alive; ++k) {
      int cp = t - k, cq = k;
      if (cq + 1 >= D.height) {
        alive = false;
        break;
      }
      walk = D.d_vert[cp - 1][cq] * (a.h[cp][cq] * walk);
    }
    if (!alive || t >= D.height) {
      out.push_back(Matrix<Rational>(0, a.Y.dims[t]));
      continue;
    }
    Matrix<Rational> comp = a.p_map[t] * walk;
    out.push_back(t % 2 == 0 ? comp : Rational(-1) * comp);
  }
  return out;
}

/// The cochain map X -> Y: degree t component (-1)^t q.(delta k)^t.i.
/// Requires the vertical homotopy. Entry t has zero rows when Y^t lies
/// outside the stored grid width.
inline std::vector<Matrix<Rational>> yx_map(const AugmentedData& a) {
  if (!a.has_vertical)
    throw PreconditionError("yx_map: vertical homotopy and projection are absent");
  const DoubleComplex& D = a.D;
  std::vector<Matrix<Rational>> out;
  for (int t = 0; t < D.height; ++t) {
    if (t >= D.width) {
      if (D.truncated)
        throw PreconditionError("yx_map: truncated grid narrower than X degree range");
      out.push_back(Matrix<Rational>(0, a.X.dims[t]));
      continue;
    }
    Matrix<Rational> walk = a.i_map[t];  // into (0, t), descending to (t, 0)
    for (int k = 0; k < t; ++k) {
      int cp = k, cq = t - k;
      walk = D.d_horiz[cp][cq - 1] * (a.k[cp][cq] * walk);
    }
    Matrix<Rational> comp = a.q_map[t] * walk;
    out.push_back(t % 2 == 0 ? comp : Rational(-1) * comp);
  }
  return out;
}

/// Exact check that a degreewise map f: A -> B commutes with differentials.
/// An entry whose row count disagrees with the B dimension is a placeholder
/// for a degree outside B's stored range and ends the scan.
inline bool is_chain_map(const GradedComplex& A, const GradedComplex& B,
                         const std::vector<Matrix<Rational>>& f) {
  for (size_t t = 0; t + 1 < f.size() && t + 1 < A.dims.size(); ++t) {
    if (t + 1 >= B.dims.size()) break;
    if (f[t].rows != B.dims[t] || f[t + 1].rows != B.dims[t + 1]) break;
    if (t >= A.d.size() || t >= B.d.size()) break;
    if (!(f[t + 1] * A.d[t] == B.d[t] * f[t])) return false;
  }
  return true;
}

/// Lemma hypotheses h.k = 0 and p.k = 0, then the exact round trip:
/// xy_map . yx_map must be the identity on every checkable X degree.
/// Hypothesis failure throws (a precondition, not a refutation).
inline bool back_and_forth_check(const AugmentedData& a) {
  if (!a.has_vertical)
    throw PreconditionError("back_and_forth: vertical homotopy and projection are absent");
  const DoubleComplex& D = a.D;
  for (int p = 0; p < D.width; ++p)
    for (int q = 1; q < D.height; ++q) {
      if (p >= 1 && !(a.h[p][q - 1] * a.k[p][q]).is_zero())
        throw PreconditionError("back_and_forth: h.k != 0");
      if (p == 0 && !(a.p_map[q - 1] * a.k[0][q]).is_zero())
        throw PreconditionError("back_and_forth: p.k != 0");
    }
  std::vector<Matrix<Rational>> xy = xy_map(a), yx = yx_map(a);
  const int top = D.truncated ? std::min(D.width, D.height) : D.height;
  for (int t = 0; t < top; ++t) {
    if (t >= static_cast<int>(xy.size())) break;
    if (!(xy[t] * yx[t] == Matrix<Rational>::identity(a.X.dims[t]))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Synthesizers.

/// Change basis in every cell and edge complex by random unimodular maps.
/// Every augmentation identity is conjugation-invariant, so validity is
/// preserved while all block structure is scrambled.
inline void conjugate_instance(AugmentedData& a, Rng& rng) {
  DoubleComplex& D = a.D;
  std::vector<std::vector<Matrix<Rational>>> U(D.width), Uinv(D.width);
  for (int p = 0; p < D.width; ++p)
    for (int q = 0; q < D.height; ++q) {
      Matrix<Rational> u = random_unimodular(rng, D.dim(p, q));
      U[p].push_back(u);
      Uinv[p].push_back(inverse(u));
    }
  std::vector<Matrix<Rational>> V, Vinv, T, Tinv;
  for (int q = 0; q < D.height; ++q) {
    Matrix<Rational> v = random_unimodular(rng, a.X.dims[q]);
    V.push_back(v);
    Vinv.push_back(inverse(v));
  }
  for (int p = 0; p < D.width; ++p) {
    Matrix<Rational> t = random_unimodular(rng, a.Y.dims[p]);
    T.push_back(t);
    Tinv.push_back(inverse(t));
  }
  for (int p = 0; p < D.width; ++p)
    for (int q = 0; q < D.height; ++q) {
      if (q + 1 < D.height) D.d_vert[p][q] = U[p][q + 1] * D.d_vert[p][q] * Uinv[p][q];
      if (p + 1 < D.width) D.d_horiz[p][q] = U[p + 1][q] * D.d_horiz[p][q] * Uinv[p][q];
      if (p >= 1) a.h[p][q] = U[p - 1][q] * a.h[p][q] * Uinv[p][q];
      if (a.has_vertical && q >= 1) a.k[p][q] = U[p][q - 1] * a.k[p][q] * Uinv[p][q];
    }
  for (int q = 0; q < D.height; ++q) {
    a.i_map[q] = U[0][q] * a.i_map[q] * Vinv[q];
    a.p_map[q] = V[q] * a.p_map[q] * Uinv[0][q];
    if (q + 1 < D.height) a.X.d[q] = V[q + 1] * a.X.d[q] * Vinv[q];
  }
  for (int p = 0; p < D.width; ++p) {
    a.j_map[p] = U[p][0] * a.j_map[p] * Tinv[p];
    if (a.has_vertical) a.q_map[p] = T[p] * a.q_map[p] * Uinv[p][0];
    if (p + 1 < D.width) a.Y.d[p] = T[p + 1] * a.Y.d[p] * Tinv[p];
  }
}

namespace detail {

// Bookkeeping for assembling a double complex as a direct sum of summands
// placed into cells.
struct CellLayout {
  std::vector<std::vector<int>> offset_taken;  // running dimension per cell
};

}  // namespace detail

/// Random valid instance: D = i(random X) + cone pairs. A cone pair places a
/// complex W in two adjacent columns with the identity as the horizontal
/// differential between them and h its inverse; vertical differentials carry
/// the (-1)^p column sign, making anticommutation automatic. Cone pairs
/// concentrated in row 0 are flat for d and assemble the row edge Y. The
/// result is scrambled by a random change of basis. No vertical homotopy.
inline AugmentedData synthesize_instance(std::uint64_t seed, int width, int height,
                                         int max_dim) {
  if (width < 1 || height < 1 || max_dim < 1)
    throw PreconditionError("synthesize_instance: sizes must be positive");
  Rng rng = seeded_rng(seed, "synth-horizontal");
  AugmentedData a;
  a.D = make_grid(width, height);
  a.X = random_graded_complex(rng, height, max_dim);

  struct Cone {
    int col = 0;             // occupies columns col and col+1
    GradedComplex W;
    bool flat = false;       // concentrated in row 0
    std::vector<int> a_off;  // offset of the source copy in (col, q)
    std::vector<int> b_off;  // offset of the target copy in (col+1, q)
  };
  std::vector<Cone> cones;
  const int n_cones = rand_int(rng, 0, 2);
  for (int c = 0; c < n_cones && width >= 2; ++c) {
    Cone cone;
    cone.col = rand_int(rng, 0, width - 2);
    cone.W = random_graded_complex(rng, height, std::max(1, max_dim / 2));
    cones.push_back(cone);
  }
  if (width >= 2) {
    // At least one flat pair so the row edge Y is nontrivial.
    Cone cone;
    cone.col = rand_int(rng, 0, width - 2);
    cone.W.dims.assign(height, 0);
    cone.W.dims[0] = rand_int(rng, 1, std::max(1, max_dim / 2));
    for (int q = 0; q + 1 < height; ++q)
      cone.W.d.push_back(Matrix<Rational>(cone.W.dims[q + 1], cone.W.dims[q]));
    cone.flat = true;
    cones.push_back(cone);
  }

  // Cell dimensions and summand offsets: X first in column 0, then the cone
  // copies in declaration order.
  std::vector<std::vector<int>> used(width, std::vector<int>(height, 0));
  for (int q = 0; q < height; ++q) used[0][q] = a.X.dims[q];
  for (Cone& cone : cones) {
    cone.a_off.resize(height);
    cone.b_off.resize(height);
    for (int q = 0; q < height; ++q) {
      cone.a_off[q] = used[cone.col][q];
      used[cone.col][q] += cone.W.dims[q];
      cone.b_off[q] = used[cone.col + 1][q];
      used[cone.col + 1][q] += cone.W.dims[q];
    }
  }
  a.D.dims = used;
  reshape_maps(a.D);

  auto put_block = [](Matrix<Rational>& m, int r0, int c0, const Matrix<Rational>& b,
                      const Rational& s) {
    for (int i = 0; i < b.rows; ++i)
      for (int j = 0; j < b.cols; ++j)
        if (!(b.at(i, j) == 0)) m.at(r0 + i, c0 + j) = s * b.at(i, j);
  };
  auto put_identity = [](Matrix<Rational>& m, int r0, int c0, int n, const Rational& s) {
    for (int i = 0; i < n; ++i) m.at(r0 + i, c0 + i) = s;
  };

  // Vertical differentials: (-1)^p times each summand's own differential.
  for (int q = 0; q + 1 < height; ++q) {
    put_block(a.D.d_vert[0][q], 0, 0, a.X.d[q], Rational(1));
    for (const Cone& cone : cones) {
      Rational sa = (cone.col % 2 == 0) ? 1 : -1;
      put_block(a.D.d_vert[cone.col][q], cone.a_off[q + 1], cone.a_off[q], cone.W.d[q], sa);
      put_block(a.D.d_vert[cone.col + 1][q], cone.b_off[q + 1], cone.b_off[q], cone.W.d[q],
                Rational(-1) * sa);
    }
  }
  // Horizontal differential and homotopy: identity across each pair.
  a.h.assign(width, std::vector<Matrix<Rational>>(height));
  for (int p = 0; p < width; ++p)
    for (int q = 0; q < height; ++q)
      a.h[p][q] = Matrix<Rational>(a.D.dim(p - 1, q), a.D.dim(p, q));
  for (const Cone& cone : cones)
    for (int q = 0; q < height; ++q) {
      put_identity(a.D.d_horiz[cone.col][q], cone.b_off[q], cone.a_off[q], cone.W.dims[q],
                   Rational(1));
      put_identity(a.h[cone.col + 1][q], cone.a_off[q], cone.b_off[q], cone.W.dims[q],
                   Rational(1));
    }
  // Column edge.
  for (int q = 0; q < height; ++q) {
    Matrix<Rational> i(a.D.dim(0, q), a.X.dims[q]);
    put_identity(i, 0, 0, a.X.dims[q], Rational(1));
    a.i_map.push_back(i);
    a.p_map.push_back(transpose(i));
  }
  // Row edge from the flat pairs.
  a.Y.dims.assign(width, 0);
  std::vector<std::vector<std::pair<int, int>>> y_blocks(width);  // (cell offset, size)
  for (const Cone& cone : cones) {
    if (!cone.flat) continue;
    y_blocks[cone.col].push_back({cone.a_off[0], cone.W.dims[0]});
    y_blocks[cone.col + 1].push_back({cone.b_off[0], cone.W.dims[0]});
    a.Y.dims[cone.col] += cone.W.dims[0];
    a.Y.dims[cone.col + 1] += cone.W.dims[0];
  }
  for (int p = 0; p < width; ++p) {
    Matrix<Rational> j(a.D.dim(p, 0), a.Y.dims[p]);
    int pos = 0;
    for (auto [off, size] : y_blocks[p]) {
      put_identity(j, off, pos, size, Rational(1));
      pos += size;
    }
    a.j_map.push_back(j);
  }
  for (int p = 0; p + 1 < width; ++p) {
    // delta maps the source copy of a flat pair at column p to the target
    // copy at p+1; in Y coordinates this is again an identity block.
    Matrix<Rational> yd(a.Y.dims[p + 1], a.Y.dims[p]);
    int src_pos = 0;
    for (const Cone& cone : cones) {
      if (!cone.flat) continue;
      if (cone.col == p) {
        // locate target copy position within Y^{p+1}
        int tgt_pos = 0;
        for (auto [off, size] : y_blocks[p + 1]) {
          if (off == cone.b_off[0]) break;
          tgt_pos += size;
        }
        put_identity(yd, tgt_pos, src_pos, cone.W.dims[0], Rational(1));
        src_pos += cone.W.dims[0];
      } else if (cone.col + 1 == p || cone.col == p) {
        src_pos += cone.W.dims[0];
      }
    }
    a.Y.d.push_back(yd);
  }
  conjugate_instance(a, rng);
  validate_augmented(a);
  return a;
}

/// Single-row instance (height 1) carrying both edges: Y is the row itself
/// with j = q = identity and k = 0, so h.k = 0 and p.k = 0 hold trivially
/// and the back-and-forth battery applies.
inline AugmentedData synthesize_row_instance(std::uint64_t seed, int width, int max_dim) {
  AugmentedData a = synthesize_instance(seed, width, 1, max_dim);
  Rng rng = seeded_rng(seed, "synth-row");
  a.has_vertical = true;
  a.Y.dims.assign(width, 0);
  a.Y.d.clear();
  a.j_map.clear();
  a.q_map.clear();
  a.k.assign(width, std::vector<Matrix<Rational>>(1));
  for (int p = 0; p < width; ++p) {
    a.Y.dims[p] = a.D.dim(p, 0);
    a.j_map.push_back(Matrix<Rational>::identity(a.Y.dims[p]));
    a.q_map.push_back(Matrix<Rational>::identity(a.Y.dims[p]));
    a.k[p][0] = Matrix<Rational>(0, a.D.dim(p, 0));
    if (p + 1 < width) a.Y.d.push_back(a.D.d_horiz[p][0]);
  }
  // Re-scramble the Y coordinates so j and q are not visibly identities.
  std::vector<Matrix<Rational>> T, Tinv;
  for (int p = 0; p < width; ++p) {
    Matrix<Rational> t = random_unimodular(rng, a.Y.dims[p]);
    T.push_back(t);
    Tinv.push_back(inverse(t));
  }
  for (int p = 0; p < width; ++p) {
    a.j_map[p] = a.j_map[p] * Tinv[p];
    a.q_map[p] = T[p] * a.q_map[p];
    if (p + 1 < width) a.Y.d[p] = T[p + 1] * a.Y.d[p] * Tinv[p];
  }
  validate_augmented(a);
  return a;
}

/// Explicit two-row model of a van Est double complex for the two-element
/// group acting on the two-vertex, one-edge line by swapping endpoints.
/// Cells: (p,0) = functions of p group slots and a vertex, (p,1) = functions
/// of p group slots on the edge. All six structure maps are written out from
/// the geometric formulas; both homotopies exist and satisfy h.k = 0 and
/// p.k = 0 exactly. The group direction is unbounded, so the grid is stored
/// truncated at the requested width.
inline AugmentedData van_est_toy_instance(int width) {
  if (width < 2) throw PreconditionError("van_est_toy_instance: width must be >= 2");
  AugmentedData a;
  a.D = make_grid(width, 2, /*truncated=*/true);
  for (int p = 0; p < width; ++p) {
    a.D.dims[p][0] = 2 << p;  // (u, v): p group bits and a vertex bit
    a.D.dims[p][1] = 1 << p;  // (u): p group bits
  }
  reshape_maps(a.D);
  // Index conventions: u is a p-bit mask with slot i (1-based) at bit i-1;
  // a row-0 basis vector is (u << 1) | v.
  auto idx0 = [](int u, int v) { return (u << 1) | v; };
  const Rational half(1, 2);
  for (int p = 0; p < width; ++p) {
    const int n = 1 << p;
    // d = (-1)^p (value at vertex 1 minus value at vertex 0).
    for (int u = 0; u < n; ++u) {
      a.D.d_vert[p][0].at(u, idx0(u, 1)) = (p % 2 == 0) ? 1 : -1;
      a.D.d_vert[p][0].at(u, idx0(u, 0)) = (p % 2 == 0) ? -1 : 1;
    }
    if (p + 1 >= width) continue;
    // Simplicial differential with p+1 slots; the last face translates the
    // vertex by the dropped slot (row 0) or twists by its sign (row 1).
    for (int w = 0; w < (1 << (p + 1)); ++w) {
      auto slot = [&](int i) { return (w >> (i - 1)) & 1; };  // 1-based slot
      auto drop = [&](int i) {  // remove slot i, keeping the order of the rest
        int lo = w & ((1 << (i - 1)) - 1);
        int hi = w >> i;
        return lo | (hi << (i - 1));
      };
      auto merge = [&](int i) {  // add slots i and i+1 into one slot
        int lo = w & ((1 << (i - 1)) - 1);
        int mid = slot(i) ^ slot(i + 1);
        int hi = w >> (i + 1);
        return lo | (mid << (i - 1)) | (hi << i);
      };
      for (int v = 0; v < 2; ++v) {
        Matrix<Rational>& dh = a.D.d_horiz[p][0];
        dh.at(idx0(w, v), idx0(drop(1), v)) += 1;
        for (int i = 1; i <= p; ++i) {
          Rational s = (i % 2 == 0) ? 1 : -1;
          dh.at(idx0(w, v), idx0(merge(i), v)) += s;
        }
        Rational last = ((p + 1) % 2 == 0) ? 1 : -1;
        dh.at(idx0(w, v), idx0(drop(p + 1), v ^ slot(p + 1))) += last;
      }
      Matrix<Rational>& dh1 = a.D.d_horiz[p][1];
      dh1.at(w, drop(1)) += 1;
      for (int i = 1; i <= p; ++i) dh1.at(w, merge(i)) += (i % 2 == 0) ? 1 : -1;
      Rational last = ((p + 1) % 2 == 0) ? 1 : -1;
      if (slot(p + 1) == 1) last = -last;
      dh1.at(w, drop(p + 1)) += last;
    }
  }
  a.h.assign(width, std::vector<Matrix<Rational>>(2));
  a.k.assign(width, std::vector<Matrix<Rational>>(2));
  for (int p = 0; p < width; ++p) {
    a.h[p][0] = Matrix<Rational>(a.D.dim(p - 1, 0), a.D.dim(p, 0));
    a.h[p][1] = Matrix<Rational>(a.D.dim(p - 1, 1), a.D.dim(p, 1));
    a.k[p][0] = Matrix<Rational>(0, a.D.dim(p, 0));
    a.k[p][1] = Matrix<Rational>(a.D.dim(p, 0), a.D.dim(p, 1));
    const int n = 1 << p;
    Rational sign = (p % 2 == 0) ? 1 : -1;
    if (p >= 1) {
      // h appends the target vertex as a group slot and evaluates at the
      // base vertex (row 0), or takes the signed slot average (row 1).
      for (int u = 0; u < n / 2; ++u)
        for (int y = 0; y < 2; ++y)
          a.h[p][0].at(idx0(u, y), idx0(u | (y << (p - 1)), 0)) = sign;
      for (int u = 0; u < n / 2; ++u) {
        a.h[p][1].at(u, u) = sign * half;
        a.h[p][1].at(u, u | (1 << (p - 1))) = Rational(-1) * sign * half;
      }
    }
    // k integrates the edge value up from the base vertex.
    for (int u = 0; u < n; ++u) a.k[p][1].at(idx0(u, 1), u) = sign;
  }
  a.X.dims = {1, 0};
  a.X.d.push_back(Matrix<Rational>(0, 1));
  Matrix<Rational> i(2, 1);
  i.at(0, 0) = 1;
  i.at(1, 0) = 1;
  a.i_map = {i, Matrix<Rational>(1, 0)};
  Matrix<Rational> pm(1, 2);
  pm.at(0, 0) = 1;
  a.p_map = {pm, Matrix<Rational>(0, 1)};
  a.has_vertical = true;
  for (int p = 0; p < width; ++p) {
    const int n = 1 << p;
    a.Y.dims.push_back(n);
    Matrix<Rational> j(2 * n, n);
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < 2; ++v) j.at(idx0(u, v), u) = 1;
    a.j_map.push_back(j);
    Matrix<Rational> qm(n, 2 * n);
    for (int u = 0; u < n; ++u) qm.at(u, idx0(u, 0)) = 1;
    a.q_map.push_back(qm);
  }
  for (int p = 0; p + 1 < width; ++p) {
    // Untwisted simplicial differential on the row edge.
    const int np = 1 << (p + 1);
    Matrix<Rational> yd(np, 1 << p);
    for (int w = 0; w < np; ++w) {
      auto slot = [&](int i) { return (w >> (i - 1)) & 1; };
      auto drop = [&](int i) {
        int lo = w & ((1 << (i - 1)) - 1);
        int hi = w >> i;
        return lo | (hi << (i - 1));
      };
      auto merge = [&](int i) {
        int lo = w & ((1 << (i - 1)) - 1);
        int mid = slot(i) ^ slot(i + 1);
        int hi = w >> (i + 1);
        return lo | (mid << (i - 1)) | (hi << i);
      };
      yd.at(w, drop(1)) += 1;
      for (int i = 1; i <= p; ++i) yd.at(w, merge(i)) += (i % 2 == 0) ? 1 : -1;
      yd.at(w, drop(p + 1)) += ((p + 1) % 2 == 0) ? 1 : -1;
    }
    a.Y.d.push_back(yd);
  }
  validate_augmented(a);
  return a;
}

/// Blockwise direct sum; both instances must share grid shape and presence
/// of the vertical side.
inline AugmentedData direct_sum(const AugmentedData& a, const AugmentedData& b) {
  if (a.D.width != b.D.width || a.D.height != b.D.height || a.D.truncated != b.D.truncated ||
      a.has_vertical != b.has_vertical)
    throw PreconditionError("direct_sum: incompatible instance shapes");
  AugmentedData s;
  s.D = make_grid(a.D.width, a.D.height, a.D.truncated);
  for (int p = 0; p < s.D.width; ++p)
    for (int q = 0; q < s.D.height; ++q) s.D.dims[p][q] = a.D.dims[p][q] + b.D.dims[p][q];
  s.h.assign(s.D.width, std::vector<Matrix<Rational>>(s.D.height));
  if (a.has_vertical) s.k.assign(s.D.width, std::vector<Matrix<Rational>>(s.D.height));
  for (int p = 0; p < s.D.width; ++p)
    for (int q = 0; q < s.D.height; ++q) {
      s.D.d_vert[p][q] = blockdiag(a.D.d_vert[p][q], b.D.d_vert[p][q]);
      s.D.d_horiz[p][q] = blockdiag(a.D.d_horiz[p][q], b.D.d_horiz[p][q]);
      s.h[p][q] = blockdiag(a.h[p][q], b.h[p][q]);
      if (a.has_vertical) s.k[p][q] = blockdiag(a.k[p][q], b.k[p][q]);
    }
  s.has_vertical = a.has_vertical;
  for (int q = 0; q < s.D.height; ++q) {
    s.X.dims.push_back(a.X.dims[q] + b.X.dims[q]);
    s.i_map.push_back(blockdiag(a.i_map[q], b.i_map[q]));
    s.p_map.push_back(blockdiag(a.p_map[q], b.p_map[q]));
    if (q + 1 < s.D.height) s.X.d.push_back(blockdiag(a.X.d[q], b.X.d[q]));
  }
  for (int p = 0; p < s.D.width; ++p) {
    s.Y.dims.push_back(a.Y.dims[p] + b.Y.dims[p]);
    s.j_map.push_back(blockdiag(a.j_map[p], b.j_map[p]));
    if (a.has_vertical) s.q_map.push_back(blockdiag(a.q_map[p], b.q_map[p]));
    if (p + 1 < s.D.width) s.Y.d.push_back(blockdiag(a.Y.d[p], b.Y.d[p]));
  }
  return s;
}

}  // namespace cohomkit
