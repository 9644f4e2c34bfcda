#pragma once

#include <stdexcept>
#include <vector>

#include "cohomkit/matrix.hpp"

namespace cohomkit {

/// Cochain complex in fixed bases: dims[p] spaces for p = 0..top and
/// exact differential matrices d[p] : p -> p+1 for p = 0..top-1.
struct GradedComplex {
  std::vector<int> dims;
  std::vector<Matrix<Rational>> d;

  int top() const { return static_cast<int>(dims.size()) - 1; }
};

/// Exact Betti numbers b_p = dims[p] - rank d_p - rank d_{p-1}.
/// Verifies d.d = 0 exactly before trusting the ranks.
inline std::vector<int> betti(const GradedComplex& cx) {
  for (size_t p = 0; p + 1 < cx.d.size(); ++p)
    if (!(cx.d[p + 1] * cx.d[p]).is_zero())
      throw std::logic_error("betti: differential does not square to zero");
  std::vector<int> ranks(cx.dims.size(), 0);
  for (size_t p = 0; p < cx.d.size(); ++p) ranks[p] = rank(cx.d[p]);
  std::vector<int> b(cx.dims.size(), 0);
  for (size_t p = 0; p < cx.dims.size(); ++p)
    b[p] = cx.dims[p] - ranks[p] - (p > 0 ? ranks[p - 1] : 0);
  return b;
}

/// Random bounded complex with exact d.d = 0, assembled from free generators
/// plus identity cones spanning adjacent degrees. Structured (not conjugated);
/// callers wanting opaque instances apply their own change of basis.
inline GradedComplex random_graded_complex(Rng& rng, int degrees, int max_dim) {
  std::vector<int> free_n(degrees, 0), cone_n(degrees, 0);
  for (int q = 0; q < degrees; ++q) {
    int used = (q > 0) ? cone_n[q - 1] : 0;
    if (q + 1 < degrees) cone_n[q] = rand_int(rng, 0, std::max(0, std::min(2, max_dim - used)));
    free_n[q] = rand_int(rng, 0, std::max(0, max_dim - used - cone_n[q]));
  }
  GradedComplex cx;
  for (int q = 0; q < degrees; ++q)
    cx.dims.push_back(free_n[q] + cone_n[q] + (q > 0 ? cone_n[q - 1] : 0));
  // Basis order per degree: [free | cone sources | cone targets from below].
  for (int q = 0; q + 1 < degrees; ++q) {
    Matrix<Rational> d(cx.dims[q + 1], cx.dims[q]);
    for (int t = 0; t < cone_n[q]; ++t)
      d.at(free_n[q + 1] + cone_n[q + 1] + t, free_n[q] + t) = 1;
    cx.d.push_back(d);
  }
  return cx;
}

}  // namespace cohomkit
