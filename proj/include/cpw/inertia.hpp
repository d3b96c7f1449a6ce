#pragma once

#include <cstddef>
#include <vector>

#include "cpw/errors.hpp"
#include "cpw/linsolve.hpp"

namespace cpw {

struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
  friend bool operator==(const Inertia&, const Inertia&) = default;
};

inline bool is_symmetric(const Matrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != a.size()) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (a[i][j] != a[j][i]) return false;
  }
  return true;
}

/// Sylvester inertia by symmetric elimination. A nonzero diagonal entry is
/// used as a 1x1 pivot; otherwise a nonzero off-diagonal a_ij (with zero
/// a_ii, a_jj) gives a 2x2 pivot of signature (1, 1).
inline Inertia exact_inertia(Matrix a) {
  if (!is_symmetric(a)) throw ConsistencyError("exact_inertia: matrix is not symmetric");
  const std::size_t n = a.size();
  std::vector<bool> alive(n, true);
  std::size_t remaining = n;
  Inertia out;
  while (remaining > 0) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n && piv == n; ++i)
      if (alive[i] && a[i][i] != 0) piv = i;
    if (piv != n) {
      const Rational d = a[piv][piv];
      (d > 0 ? out.positive : out.negative) += 1;
      alive[piv] = false;
      --remaining;
      for (std::size_t j = 0; j < n; ++j) {
        if (!alive[j] || a[j][piv] == 0) continue;
        const Rational f = a[j][piv] / d;
        for (std::size_t k = 0; k < n; ++k)
          if (alive[k] && a[piv][k] != 0) a[j][k] -= f * a[piv][k];
      }
      continue;
    }
    std::size_t pi = n, pj = n;
    for (std::size_t i = 0; i < n && pi == n; ++i) {
      if (!alive[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j)
        if (alive[j] && a[i][j] != 0) {
          pi = i;
          pj = j;
          break;
        }
    }
    if (pi == n) {
      out.zero += remaining;
      break;
    }
    // Pivot block [[0, b], [b, 0]] with inverse [[0, 1/b], [1/b, 0]].
    const Rational b = a[pi][pj];
    out.positive += 1;
    out.negative += 1;
    alive[pi] = alive[pj] = false;
    remaining -= 2;
    std::vector<std::size_t> rest;
    for (std::size_t k = 0; k < n; ++k)
      if (alive[k]) rest.push_back(k);
    Matrix upd(rest.size(), Vector(rest.size()));
    for (std::size_t x = 0; x < rest.size(); ++x)
      for (std::size_t y = 0; y < rest.size(); ++y) {
        const std::size_t k = rest[x], l = rest[y];
        upd[x][y] = (a[k][pi] * a[pj][l] + a[k][pj] * a[pi][l]) / b;
      }
    for (std::size_t x = 0; x < rest.size(); ++x)
      for (std::size_t y = 0; y < rest.size(); ++y) a[rest[x]][rest[y]] -= upd[x][y];
  }
  return out;
}

}  // namespace cpw
