#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "qmasa/rational.hpp"

namespace qmasa {

using RatVector = std::vector<Rational>;
using RatMatrix = std::vector<RatVector>;  // row-major

// In-place reduced row echelon form over the rationals.  Returns the rank and
// fills pivot_cols (one column index per pivot row) when requested.
inline int rref(RatMatrix& m, std::vector<int>* pivot_cols = nullptr) {
  if (pivot_cols) pivot_cols->clear();
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t lead = 0;
  int rank = 0;
  for (std::size_t r = 0; r < rows && lead < cols; ++r) {
    std::size_t piv = r;
    while (piv < rows && m[piv][lead] == 0) ++piv;
    if (piv == rows) {
      --r;  // stay on this row, advance the column
      ++lead;
      continue;
    }
    std::swap(m[piv], m[r]);
    Rational inv = 1 / m[r][lead];
    for (std::size_t j = lead; j < cols; ++j)
      if (m[r][j] != 0) m[r][j] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][lead] == 0) continue;
      Rational f = m[i][lead];
      for (std::size_t j = lead; j < cols; ++j)
        if (m[r][j] != 0) m[i][j] -= f * m[r][j];
    }
    if (pivot_cols) pivot_cols->push_back(static_cast<int>(lead));
    ++rank;
    ++lead;
  }
  return rank;
}

inline int rank(RatMatrix m) { return rref(m); }

// Basis of {x : Mx = 0}, one vector per free column, deterministic order.
inline std::vector<RatVector> kernel_basis(RatMatrix m) {
  if (m.empty()) return {};
  const std::size_t cols = m[0].size();
  std::vector<int> pivots;
  rref(m, &pivots);
  std::vector<bool> is_pivot(cols, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<RatVector> basis;
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    RatVector v(cols, Rational(0));
    v[free_col] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = -m[r][free_col];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solve Ax = b exactly.  Throws if the system is singular/inconsistent.
inline RatVector solve(RatMatrix a, RatVector b) {
  const std::size_t n = a.size();
  if (n == 0) return {};
  if (a[0].size() != n || b.size() != n)
    throw std::invalid_argument("solve: need a square system");
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col] == 0) ++piv;
    if (piv == n) throw std::runtime_error("solve: singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    Rational inv = 1 / a[col][col];
    for (std::size_t j = col; j < n; ++j) a[col][j] *= inv;
    b[col] *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a[i][col] == 0) continue;
      Rational f = a[i][col];
      for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
      b[i] -= f * b[col];
    }
  }
  return b;
}

// Exact LDL^T test for positive definiteness of a symmetric matrix.
inline bool positive_definite(RatMatrix m) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i)
    if (m[i].size() != n) throw std::invalid_argument("positive_definite: not square");
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] <= 0) return false;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      Rational f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j)
        if (m[k][j] != 0) m[i][j] -= f * m[k][j];
    }
  }
  return true;
}

inline bool positive_semidefinite(RatMatrix m) {
  const std::size_t n = m.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (m[k][k] < 0) return false;
    if (m[k][k] == 0) {
      // A zero pivot is fine only if its whole row/column of the remaining
      // Schur complement vanishes.  Entries with j < k belong to the
      // already-factored rows and must not be consulted here.
      for (std::size_t j = k + 1; j < n; ++j)
        if (m[k][j] != 0 || m[j][k] != 0) return false;
      continue;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k] == 0) continue;
      Rational f = m[i][k] / m[k][k];
      for (std::size_t j = k; j < n; ++j)
        if (m[k][j] != 0) m[i][j] -= f * m[k][j];
    }
  }
  return true;
}

inline Rational dot(const RatVector& a, const RatVector& b) {
  Rational acc(0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0 && b[i] != 0) acc += a[i] * b[i];
  return acc;
}

// Gram-Schmidt without normalization, so everything stays rational.
// Zero vectors produced along the way are dropped.
inline std::vector<RatVector> gram_schmidt(const std::vector<RatVector>& rows) {
  std::vector<RatVector> out;
  for (RatVector v : rows) {
    for (const RatVector& u : out) {
      Rational c = dot(v, u) / dot(u, u);
      if (c == 0) continue;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (u[i] != 0) v[i] -= c * u[i];
    }
    bool nonzero = false;
    for (const auto& x : v)
      if (x != 0) {
        nonzero = true;
        break;
      }
    if (nonzero) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace qmasa
