#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "qhc/rational.hpp"

namespace qhc::linalg {

template <typename T>
using Mat = std::vector<std::vector<T>>;

/// Reduced row echelon form in place; returns pivot columns.
inline std::vector<size_t> rref(Mat<Rational>& m) {
  std::vector<size_t> pivots;
  if (m.empty()) return pivots;
  const size_t rows = m.size(), cols = m[0].size();
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t p = row;
    while (p < rows && m[p][col].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[row]);
    const Rational inv = Rational(1) / m[row][col];
    for (auto& v : m[row]) v *= inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == row || m[r][col].is_zero()) continue;
      const Rational f = m[r][col];
      for (size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline size_t rank(Mat<Rational> m) { return rref(m).size(); }

/// Basis of {v : m v = 0}; cols gives the width when m has no rows.
inline std::vector<std::vector<Rational>> kernel(Mat<Rational> m, size_t cols) {
  std::vector<size_t> pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (size_t p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Rational>> basis;
  for (size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[free] = 1;
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Some x with m x = b, or nullopt when b is outside the column span.
inline std::optional<std::vector<Rational>> solve(const Mat<Rational>& m, const std::vector<Rational>& b) {
  const size_t cols = m.empty() ? 0 : m[0].size();
  Mat<Rational> aug = m;
  for (size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b[r]);
  if (aug.empty()) return std::vector<Rational>(cols, Rational(0));
  std::vector<size_t> pivots = rref(aug);
  std::vector<Rational> x(cols, Rational(0));
  for (size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == cols) return std::nullopt;
    x[pivots[r]] = aug[r][cols];
  }
  return x;
}

/// Rank by partial pivoting; pivots below rel_tol times the largest entry count as zero.
inline size_t rank(Mat<double> m, double rel_tol = 1e-9) {
  if (m.empty()) return 0;
  const size_t rows = m.size(), cols = m[0].size();
  double scale = 0.0;
  for (const auto& row : m)
    for (double v : row) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0;
  const double thresh = rel_tol * scale;
  size_t row = 0;
  for (size_t col = 0; col < cols && row < rows; ++col) {
    size_t best = row;
    for (size_t r = row + 1; r < rows; ++r)
      if (std::abs(m[r][col]) > std::abs(m[best][col])) best = r;
    if (std::abs(m[best][col]) <= thresh) continue;
    std::swap(m[best], m[row]);
    for (size_t r = row + 1; r < rows; ++r) {
      const double f = m[r][col] / m[row][col];
      for (size_t c = col; c < cols; ++c) m[r][c] -= f * m[row][c];
    }
    ++row;
  }
  return row;
}

}  // namespace qhc::linalg
