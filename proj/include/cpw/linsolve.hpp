#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "cpw/rational.hpp"

namespace cpw {

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;

struct LinearSolution {
  bool solvable = false;
  Vector particular;  // free variables set to zero; empty when unsolvable
  std::vector<Vector> kernel;
  std::size_t rank = 0;
};

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> rref(Matrix& m, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < ncols && row < m.size(); ++col) {
    std::size_t p = row;
    while (p < m.size() && m[p][col] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[row]);
    const Rational inv = 1 / m[row][col];
    for (auto& x : m[row]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t c = col; c < m[r].size(); ++c)
        if (m[row][c] != 0) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

inline LinearSolution linear_solve_exact(const Matrix& a, const Vector& b) {
  const std::size_t rows = a.size();
  if (b.size() != rows) throw std::invalid_argument("linear_solve_exact: rhs length mismatch");
  const std::size_t cols = rows ? a[0].size() : 0;
  Matrix m;
  m.reserve(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    if (a[i].size() != cols) throw std::invalid_argument("linear_solve_exact: ragged matrix");
    Vector r = a[i];
    r.push_back(b[i]);
    m.push_back(std::move(r));
  }
  const auto pivots = rref(m, cols);

  LinearSolution out;
  out.rank = pivots.size();
  out.solvable = true;
  for (std::size_t r = pivots.size(); r < rows; ++r)
    if (m[r][cols] != 0) out.solvable = false;
  if (out.solvable) {
    out.particular.assign(cols, 0);
    for (std::size_t k = 0; k < pivots.size(); ++k) out.particular[pivots[k]] = m[k][cols];
  }
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vector v(cols, 0);
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -m[k][f];
    out.kernel.push_back(std::move(v));
  }
  return out;
}

/// Null space of a matrix with `cols` columns (rows may be empty).
inline std::vector<Vector> kernel_basis(const Matrix& a, std::size_t cols) {
  if (a.empty()) {
    std::vector<Vector> out;
    for (std::size_t f = 0; f < cols; ++f) {
      Vector v(cols, 0);
      v[f] = 1;
      out.push_back(std::move(v));
    }
    return out;
  }
  if (a[0].size() != cols) throw std::invalid_argument("kernel_basis: column count mismatch");
  return linear_solve_exact(a, Vector(a.size(), 0)).kernel;
}

inline Vector mat_vec(const Matrix& a, const Vector& x) {
  Vector y(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != x.size()) throw std::invalid_argument("mat_vec: dimension mismatch");
    for (std::size_t j = 0; j < x.size(); ++j)
      if (a[i][j] != 0 && x[j] != 0) y[i] += a[i][j] * x[j];
  }
  return y;
}

}  // namespace cpw
