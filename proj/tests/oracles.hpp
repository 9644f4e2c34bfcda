#pragma once

// Test-only reference implementations, deliberately independent of the
// library's code paths so expected values are produced by a second route.

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cohomkit/matrix.hpp"

namespace oracles {

/// Fraction-free (Bareiss) elimination rank over int64. Only safe for small
/// matrices with small entries; guarded against overflow so misuse is loud.
inline int bareiss_rank(std::vector<std::vector<long long>> m) {
  if (m.empty()) return 0;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  const long long guard = 1ll << 40;
  long long prev = 1;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pivot = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[pivot], m[r]);
    for (int i = r + 1; i < rows; ++i) {
      for (int j = c + 1; j < cols; ++j) {
        long long num = m[i][j] * m[r][c] - m[i][c] * m[r][j];
        if (num / prev * prev != num) throw std::overflow_error("bareiss: inexact division");
        m[i][j] = num / prev;
        if (std::llabs(m[i][j]) > guard) throw std::overflow_error("bareiss: entry overflow");
      }
      m[i][c] = 0;
    }
    prev = m[r][c];
    ++r;
  }
  return r;
}

inline std::vector<std::vector<long long>> to_int_rows(const cohomkit::Matrix<cohomkit::Rational>& m) {
  std::vector<std::vector<long long>> rows(m.rows, std::vector<long long>(m.cols, 0));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      const cohomkit::Rational& v = m.at(i, j);
      if (boost::multiprecision::denominator(v) != 1)
        throw std::invalid_argument("to_int_rows: non-integer entry");
      rows[i][j] = boost::multiprecision::numerator(v).template convert_to<long long>();
    }
  return rows;
}

/// Float rank with the 1e-9 * sigma_max threshold; cross-check route only.
inline int numerical_rank(const cohomkit::Matrix<double>& m) {
  if (m.rows == 0 || m.cols == 0) return 0;
  Eigen::MatrixXd e(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) e(i, j) = m.at(i, j);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(e);
  const auto& s = svd.singularValues();
  if (s.size() == 0) return 0;
  double thresh = 1e-9 * s(0);
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > thresh) ++r;
  return r;
}

inline void permutation_signs(int n, std::vector<std::vector<int>>& perms, std::vector<int>& signs) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  do {
    int sgn = 1;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (p[i] > p[j]) sgn = -sgn;
    perms.push_back(p);
    signs.push_back(sgn);
  } while (std::next_permutation(p.begin(), p.end()));
}

}  // namespace oracles
