#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <utility>

#include "cpw/chiral_waves.hpp"
#include "cpw/errors.hpp"
#include "cpw/laurent.hpp"
#include "cpw/multipoly.hpp"
#include "cpw/special.hpp"

namespace cpw {

enum class ChiralKind { E, D };

/// (p, q) -> coefficient of d_1^p d_2^q.
using OpTable = std::map<std::pair<int, int>, Rational>;

struct ChiralIntertwiner {
  int h = 0;
  Rational d1, d2;
  ChiralKind kind = ChiralKind::E;
  OpTable coeffs;

  /// The operator as a polynomial in the derivative symbols D1, D2.
  MultiPoly as_poly() const {
    MultiPoly p({"D1", "D2"});
    for (const auto& [pq, c] : coeffs) p.add_term({pq.first, pq.second}, c);
    return p;
  }
};

inline OpTable op_table_from_poly(const MultiPoly& p) {
  if (p.vars() != std::vector<std::string>{"D1", "D2"}) throw std::invalid_argument("expected variables D1, D2");
  OpTable t;
  for (const auto& [e, c] : p.terms()) t[{e[0], e[1]}] = c;
  return t;
}

/// E_h with coefficients (q-d1+d2)_p (p+d1-d2)_q / (p! q!) on d_1^p (-d_2)^q.
inline ChiralIntertwiner chiral_E(int h, const Rational& d1, const Rational& d2) {
  if (h < 0) throw DomainError("chiral_E: h must be non-negative");
  ChiralIntertwiner op{h, d1, d2, ChiralKind::E, {}};
  const Rational bd = d1 - d2;
  for (int p = 0; p <= h; ++p) {
    const int q = h - p;
    Rational c = pochhammer(q - bd, p) * pochhammer(p + bd, q) / (factorial(p) * factorial(q));
    if (q % 2) c = -c;
    if (c != 0) op.coeffs[{p, q}] = c;
  }
  return op;
}

/// D_h = 1/(h-1)! sum_{p+q=h-1} d_1^p (-d_2)^q / (p!^2 q!^2).
inline ChiralIntertwiner chiral_D(int h) {
  if (h < 1) throw DomainError("chiral_D: h must be at least 1");
  ChiralIntertwiner op{h, 0, 0, ChiralKind::D, {}};
  for (int p = 0; p <= h - 1; ++p) {
    const int q = h - 1 - p;
    Rational c = 1 / (factorial(h - 1) * factorial(p) * factorial(p) * factorial(q) * factorial(q));
    if (q % 2) c = -c;
    op.coeffs[{p, q}] = c;
  }
  return op;
}

/// (nabla_1 - nabla_2) P, nabla_i differentiating with respect to the symbol D_i.
inline MultiPoly nabla_difference(const MultiPoly& p) { return p.differentiate("D1") - p.differentiate("D2"); }

/// Residual of (D1 nabla_1^2 + D2 nabla_2^2 + (d1-d2)(nabla_1 - nabla_2)) E.
inline MultiPoly chiral_pde_residual(const MultiPoly& e, const Rational& d1, const Rational& d2, int h) {
  for (const auto& [ex, c] : e.terms())
    if (ex[0] + ex[1] != h) throw std::invalid_argument("operator is not homogeneous of degree h");
  const std::vector<std::string> v{"D1", "D2"};
  const MultiPoly D1 = MultiPoly::variable(v, "D1"), D2 = MultiPoly::variable(v, "D2");
  return D1 * e.differentiate("D1").differentiate("D1") + D2 * e.differentiate("D2").differentiate("D2") +
         nabla_difference(e) * Rational(d1 - d2);
}

inline MultiPoly verify_intertwining_pde(const ChiralIntertwiner& op) {
  if (op.kind != ChiralKind::E) throw std::invalid_argument("the chiral intertwining condition applies to E_h");
  return chiral_pde_residual(op.as_poly(), op.d1, op.d2, op.h);
}

namespace detail {

// iota applied after the operator sum_{p,q} t(p,q) d_elim^p d_keep^q: set
// x_elim = x_keep + eps, expand in eps, and keep the eps^0 part.
inline LaurentSum reduce_pair(const LaurentSum& target, int elim, int keep, const OpTable& t) {
  int order = 0;
  for (const auto& [pq, c] : t) order = std::max(order, pq.first + pq.second);
  const PointPair pq{std::min(elim, keep), std::max(elim, keep)};
  const int eps_sign = pq.first == elim ? 1 : -1;

  std::vector<LaurentSum> G(order + 1);
  for (const auto& [powers, c] : target.terms()) {
    Rational e0 = 0;
    if (auto it = powers.find(pq); it != powers.end()) e0 = it->second;
    if (!is_integer(e0) || e0 < 0)
      throw DomainError("singular diagonal: x_" + std::to_string(pq.first) + std::to_string(pq.second) +
                        " carries exponent " + to_string(e0));
    const long n0 = to_long(e0);
    if (n0 > order) continue;
    const int room = order - static_cast<int>(n0);
    PairPowers base;
    std::vector<std::pair<PointPair, Rational>> moving;  // factors touching elim
    for (const auto& [pair, e] : powers) {
      if (pair == pq) continue;
      if (pair.first == elim || pair.second == elim)
        moving.emplace_back(pair, e);
      else
        base.emplace(pair, e);
    }
    std::vector<LaurentSum> part(room + 1);
    part[0] = LaurentSum::monomial(base, (n0 % 2 && eps_sign < 0) ? Rational(-c) : c);
    for (const auto& [pair, f] : moving) {
      const int k = pair.first == elim ? pair.second : pair.first;
      // x_{elim,k} = x_{keep,k} + eps, x_{k,elim} = x_{k,keep} - eps.
      const PointPair y{std::min(k, keep), std::max(k, keep)};
      const int s = pair.first == elim ? 1 : -1;
      std::vector<LaurentSum> next(room + 1);
      for (int m = 0; m <= room; ++m) {
        if (part[m].structurally_zero()) continue;
        for (int j = 0; m + j <= room; ++j) {
          Rational b = binomial(f, j);
          if (b == 0) break;
          if (s < 0 && j % 2) b = -b;
          next[m + j] += part[m] * LaurentSum::monomial({{y, f - j}}, b);
        }
      }
      part = std::move(next);
    }
    for (int m = 0; m <= room; ++m) G[n0 + m] += part[m];
  }

  std::map<std::pair<int, int>, LaurentSum> dcache;  // (m, r) -> D^r G_m
  std::function<const LaurentSum&(int, int)> deriv = [&](int m, int r) -> const LaurentSum& {
    auto key = std::make_pair(m, r);
    auto it = dcache.find(key);
    if (it != dcache.end()) return it->second;
    LaurentSum v = r == 0 ? G[m] : deriv(m, r - 1).differentiate(keep);
    return dcache.emplace(key, std::move(v)).first->second;
  };
  // d_keep = D_keep - d_eps with D_keep the derivative at fixed eps.
  LaurentSum out;
  for (const auto& [pqk, c] : t) {
    const int p = pqk.first, q = pqk.second;
    for (int r = 0; r <= q; ++r) {
      Rational w = c * binomial(q, r) * factorial(p + q - r);
      if ((q - r) % 2) w = -w;
      out += deriv(p + q - r, r) * w;
    }
  }
  return out;
}

}  // namespace detail

/// iota o op o x_{first,second}^{premultiply}: op acts with its first symbol
/// on `first`; both points collapse onto `keep` (one of the pair).
inline LaurentSum apply_chiral_reduction(const LaurentSum& target, int first, int second, int keep,
                                         const ChiralIntertwiner& op, const Rational& premultiply) {
  if (std::abs(first - second) != 1) throw DomainError("reduction pair must be adjacent");
  if (keep != first && keep != second) throw std::invalid_argument("collapsed point must belong to the pair");
  const int elim = keep == first ? second : first;
  OpTable t;
  for (const auto& [pq, c] : op.coeffs) t[keep == second ? pq : std::make_pair(pq.second, pq.first)] = c;
  LaurentSum pre = target;
  if (premultiply != 0) pre = target * LaurentSum::monomial({{{std::min(first, second), std::max(first, second)}, premultiply}});
  return detail::reduce_pair(pre, elim, keep, t);
}

/// Default premultiplication: d1 + d2 for E_h, d1 + d2 - 1 for D_h.
inline Rational default_premultiply(const ChiralIntertwiner& op, const Rational& d1, const Rational& d2) {
  return op.kind == ChiralKind::E ? Rational(d1 + d2) : Rational(d1 + d2 - 1);
}

enum class WaveChannel { Front, Back };

struct WaveReduction {
  LaurentSum result;                  // reduced wave, exact in the kept variables through exactCap
  std::optional<ChiralWave> expected; // (n-1)-point wave when the projection matches h
  std::optional<Rational> ratio;      // result = ratio * expected
  int exactCap = 0;
};

/// Reduce a wave in the pair (1,2) (Front) or (n-1,n) (Back) with E_h.
inline WaveReduction reduce_wave(const ChiralWave& w, WaveChannel ch, int h) {
  const auto& s = w.spec;
  if (s.n < 3) throw std::invalid_argument("wave needs at least 3 points");
  const int m = s.n - 3;
  const int exact = w.series.cap() - h;
  if (exact < 0) throw DomainError("series cap too small for the requested h");
  const bool front = ch == WaveChannel::Front;
  const int first = front ? 1 : s.n - 1, second = front ? 2 : s.n, keep = front ? 2 : s.n - 1;
  const auto op = chiral_E(h, s.d(first), s.d(second));

  // Only series terms whose spectator orders are within the exact range.
  ChiralWave trimmed = w;
  trimmed.series = Series(w.series.vars(), w.series.cap());
  for (const auto& [ell, c] : w.series.terms()) {
    int spectators = 0;
    for (int k = 0; k < m; ++k)
      if (k != (front ? 0 : m - 1)) spectators += ell[k];
    if (spectators <= exact) trimmed.series.add_term(ell, c);
  }
  WaveReduction out;
  out.exactCap = exact;
  out.result = apply_chiral_reduction(to_laurent(trimmed), first, second, keep, op,
                                      default_premultiply(op, s.d(first), s.d(second)));

  const Rational a_adj = front ? s.a(2) : s.a(s.n - 2);
  if (a_adj != h) return out;
  std::vector<Rational> dims, proj;
  if (front) {
    dims.push_back(Rational(h));
    dims.insert(dims.end(), s.dims.begin() + 2, s.dims.end());
    proj.assign(s.proj.begin() + 1, s.proj.end());
  } else {
    dims.assign(s.dims.begin(), s.dims.end() - 2);
    dims.push_back(Rational(h));
    proj.assign(s.proj.begin(), s.proj.end() - 1);
  }
  WaveSpec rs{s.n - 1, dims, proj};
  rs.validate();
  ChiralWave ref = prop1_series(rs, std::max(0, exact));
  LaurentSum ref_l = to_laurent(ref);
  if (front) {
    std::map<int, int> shift;
    for (int i = 1; i <= rs.n; ++i) shift[i] = i + 1;
    ref_l = ref_l.relabel(shift);
  }
  out.expected = std::move(ref);
  out.ratio = compare_up_to_constant(out.result, ref_l);
  return out;
}

}  // namespace cpw
