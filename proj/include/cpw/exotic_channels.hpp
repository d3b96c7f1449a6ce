#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cpw/errors.hpp"
#include "cpw/exotic_gseries.hpp"
#include "cpw/exotic_structures.hpp"
#include "cpw/inertia.hpp"
#include "cpw/laurent.hpp"
#include "cpw/linsolve.hpp"
#include "cpw/multipoly.hpp"
#include "cpw/rational.hpp"
#include "cpw/series.hpp"
#include "cpw/special.hpp"

namespace cpw {

/// c_{a,h} = (h)_a (1-h)_a / a!^2; zero for a >= h.
inline Rational c_coeff(int a, int h) {
  if (h < 1) throw DomainError("chiral weight must be at least 1");
  if (a < 0) return 0;
  const Rational fa = factorial(a);
  return pochhammer(h, a) * pochhammer(1 - h, a) / (fa * fa);
}

/// F(z) = sum_a c_{a,h} z^a.
inline MultiPoly F_poly(int h, const std::string& var = "z") {
  MultiPoly f({var});
  for (int a = 0; a < h; ++a) f.add_term({a}, c_coeff(a, h));
  return f;
}

/// G_b(1) with G_b(z) = F(z) - 2b z^{-b} int_0^z t^{b-1} F(t) dt.
inline Rational G_at_one(int h, int b) {
  if (b < 1) throw DomainError("G_b needs b >= 1");
  Rational integral = 0, f1 = 0;
  for (int a = 0; a < h; ++a) {
    f1 += c_coeff(a, h);
    integral += c_coeff(a, h) / Rational(a + b);
  }
  return f1 - 2 * b * integral;
}

enum class Weighting { B, H };

inline Weighting parse_weighting(const std::string& s) {
  if (s == "B") return Weighting::B;
  if (s == "H") return Weighting::H;
  throw std::invalid_argument("unknown weighting: " + s);
}

// One channel turns u^a / (x13 x24) into (-1)^{h-1} c_{a,h} times the
// reference factor (operator rescaled by ((h-1)!)^2).
inline Rational channel_factor(int a, int h) {
  const Rational c = c_coeff(a, h);
  return (h - 1) % 2 ? Rational(-c) : c;
}

/// Direct finite double sum over (a, b) != (0, 0).
inline Rational channel_coefficient_direct(int hp, int hm, Weighting w) {
  if (hp < 1 || hm < 1) throw DomainError("chiral weights must be at least 1");
  Rational s = 0;
  for (int a = 0; a < hp; ++a)
    for (int b = 0; b < hm; ++b) {
      if (a + b == 0) continue;
      const Rational wt = w == Weighting::B ? Rational(1) : make_rational(a - b, a + b);
      s += wt * channel_factor(a, hp) * channel_factor(b, hm);
    }
  return s;
}

/// C_B or C_H. B resums via F(1); H via G_b(1). Cross-checked against the
/// direct double sum.
inline Rational channel_coefficient(int hp, int hm, Weighting w) {
  if (hp < 1 || hm < 1) throw DomainError("chiral weights must be at least 1");
  const Rational sign = (hp + hm) % 2 ? Rational(-1) : Rational(1);
  Rational fp1 = 0, fm1 = 0;
  for (int a = 0; a < hp; ++a) fp1 += c_coeff(a, hp);
  for (int b = 0; b < hm; ++b) fm1 += c_coeff(b, hm);
  Rational c;
  if (w == Weighting::B) {
    c = sign * (fp1 * fm1 - 1);
  } else {
    // b = 0 terms carry weight 1; b >= 1 resum over a into G_b(1).
    Rational s = fp1 - 1;
    for (int b = 1; b < hm; ++b) s += c_coeff(b, hm) * G_at_one(hp, b);
    c = sign * s;
  }
  if (c != channel_coefficient_direct(hp, hm, w)) throw ConsistencyError("channel resummation mismatch");
  return c;
}

// ---------------------------------------------------------------------------

enum class ExoticKind { B, H, E };

inline ExoticKind parse_exotic_kind(const std::string& s) {
  if (s == "B") return ExoticKind::B;
  if (s == "H") return ExoticKind::H;
  if (s == "E") return ExoticKind::E;
  throw std::invalid_argument("unknown structure: " + s);
}

inline std::string to_string(ExoticKind k) { return k == ExoticKind::B ? "B" : k == ExoticKind::H ? "H" : "E"; }

/// Series form over {up, um, vp, vm}. B from its restricted monomials; H as
/// (B - E/2) g g'; E is the twist-2 part of E, 2(B - H).
inline Series sixpoint_series(ExoticKind k, int cap) {
  const Series b = series_form(restrict_2d(build_structure(StructureName::B)), cap);
  if (k == ExoticKind::B) return b;
  const Structure2D bhe = restrict_2d(build_structure(StructureName::BminusHalfE));
  const LaurentSum closed = closed_form_2d(StructureName::BminusHalfE);
  if (!(bhe.exact - closed).is_zero()) throw ConsistencyError("B - E/2 differs from its closed 2D form");
  const Series lead = series_form(Structure2D{StructureName::BminusHalfE, closed, bhe.prefactor}, cap);
  const auto vars = sixpoint_series_vars();
  const GSeries g = g_series(cap, GMethod::Closed);
  Series gu(vars, cap), gv(vars, cap);
  for (const auto& [e, c] : g.terms()) {
    gu.add_term({e[0], e[1], 0, 0}, c);
    gv.add_term({0, 0, e[0], e[1]}, c);
  }
  const Series h = lead * gu * gv;
  if (k == ExoticKind::H) return h;
  return (b - h) * Rational(2);
}

/// W_{h+,h-;h'+,h'-} with x = point 2, x' = point 5.
inline LaurentSum W_function(int hp, int hm, int hpp, int hmp) {
  LaurentSum w = LaurentSum::constant(1);
  const std::array<std::pair<int, int>, 2> hs = {std::make_pair(hp, hpp), std::make_pair(hm, hmp)};
  for (int f = 0; f < 2; ++f) {
    const auto [h, hpr] = hs[f];
    auto pt = [&](int i) { return family_point(i, f); };
    w = w * LaurentSum::monomial({{{pt(3), pt(4)}, h + hpr - 3},
                                  {{pt(2), pt(3)}, -h},
                                  {{pt(2), pt(4)}, -h},
                                  {{pt(3), pt(5)}, -hpr},
                                  {{pt(4), pt(5)}, -hpr}});
  }
  return w;
}

struct SixPointReduction {
  Rational coefficient;
  LaurentSum reference;
};

/// Term-by-term reduction of a series form in the 1-2 and 5-6 channels.
inline SixPointReduction reduce_sixpoint(const Series& s, int hp, int hm, int hpp, int hmp) {
  for (int h : {hp, hm, hpp, hmp})
    if (h < 1) throw DomainError("chiral weights must be at least 1");
  if (s.vars() != sixpoint_series_vars()) throw std::invalid_argument("reduce_sixpoint: expected {up, um, vp, vm}");
  if (s.cap() < hp + hm + hpp + hmp - 4) throw DomainError("reduce_sixpoint: series cap too small for these weights");
  Rational c = 0;
  for (const auto& [e, v] : s.terms()) {
    if (e[0] >= hp || e[1] >= hm || e[2] >= hpp || e[3] >= hmp) continue;
    c += v * channel_factor(e[0], hp) * channel_factor(e[1], hm) * channel_factor(e[2], hpp) *
         channel_factor(e[3], hmp);
  }
  return {c, W_function(hp, hm, hpp, hmp)};
}

/// Coefficient from the factorized channel coefficients.
inline Rational sixpoint_coefficient(ExoticKind k, int hp, int hm, int hpp, int hmp) {
  const Rational bb = channel_coefficient(hp, hm, Weighting::B) * channel_coefficient(hpp, hmp, Weighting::B);
  const Rational hh = channel_coefficient(hp, hm, Weighting::H) * channel_coefficient(hpp, hmp, Weighting::H);
  switch (k) {
    case ExoticKind::B: return bb;
    case ExoticKind::H: return hh;
    case ExoticKind::E: return 2 * (bb - hh);
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct AmplitudeMatrix {
  int h, hPrime, cap;
  std::map<Rational, Rational> entries;  // k = 3/2 + n
  std::vector<Rational> residual;         // orders 0..cap
  bool residual_zero() const {
    for (const auto& r : residual)
      if (r != 0) return false;
    return true;
  }
};

/// 1 = sum_n B^{3/2+n} u^n 2F1(n+h, n+h'; 2n+3; u), solved order by order.
inline AmplitudeMatrix pw4_expand(int h, int hPrime, int capN) {
  if (capN < 0) throw DomainError("pw4_expand: negative cap");
  if (h < 1 || hPrime < 1) throw DomainError("chiral weights must be at least 1");
  std::vector<Rational> b(capN + 1);
  auto f = [&](int n, int l) { return gauss2f1_coeff(n + h, n + hPrime, 2 * n + 3, l); };
  for (int m = 0; m <= capN; ++m) {
    Rational s = m == 0 ? Rational(1) : Rational(0);
    for (int n = 0; n < m; ++n) s -= b[n] * f(n, m - n);
    b[m] = s / f(m, 0);
  }
  AmplitudeMatrix out{h, hPrime, capN, {}, std::vector<Rational>(capN + 1)};
  for (int n = 0; n <= capN; ++n) out.entries[Rational(3, 2) + n] = b[n];
  for (int m = 0; m <= capN; ++m) {
    Rational r = m == 0 ? Rational(-1) : Rational(0);
    for (int n = 0; n <= m; ++n) r += b[n] * f(n, m - n);
    out.residual[m] = r;
  }
  return out;
}

// ---------------------------------------------------------------------------

enum class Projection { Odd, Plus, Minus };

inline std::string to_string(Projection p) {
  return p == Projection::Odd ? "odd" : p == Projection::Plus ? "plus" : "minus";
}

using HelicityPair = std::pair<int, int>;

inline std::vector<HelicityPair> helicity_rows(int hmax, Projection p) {
  std::vector<HelicityPair> rows;
  for (int hp = 1; hp <= hmax; ++hp)
    for (int hm = 1; hm <= hmax; ++hm) {
      if ((hp - hm) % 2 == 0) continue;
      if (p == Projection::Plus && hp < hm) continue;
      if (p == Projection::Minus && hp > hm) continue;
      rows.emplace_back(hp, hm);
    }
  return rows;
}

struct PositivityBlock {
  Rational kPlus, kMinus;
  Projection projection;
  std::vector<HelicityPair> rows;
  Matrix matrix;
  Inertia inertia;
};

struct PositivityReport {
  ExoticKind structure;
  int hmax, kmax;
  std::vector<PositivityBlock> blocks;
};

inline PositivityReport positivity_report(ExoticKind k, int hmax, int kmax) {
  if (hmax < 2) throw DomainError("positivity_report: Hmax must be at least 2");
  if (kmax < 0) throw DomainError("positivity_report: Kmax must be non-negative");
  // amp[h][h'][n]
  std::map<std::pair<int, int>, AmplitudeMatrix> amp;
  for (int h = 1; h <= hmax; ++h)
    for (int hp = 1; hp <= hmax; ++hp) amp.emplace(std::make_pair(h, hp), pw4_expand(h, hp, kmax));
  auto bk = [&](int h, int hp, int n) { return amp.at({h, hp}).entries.at(Rational(3, 2) + n); };

  PositivityReport rep{k, hmax, kmax, {}};
  for (int np = 0; np <= kmax; ++np)
    for (int nm = 0; nm <= kmax; ++nm)
      for (Projection p : {Projection::Odd, Projection::Plus, Projection::Minus}) {
        PositivityBlock blk{Rational(3, 2) + np, Rational(3, 2) + nm, p, helicity_rows(hmax, p), {}, {}};
        const std::size_t dim = blk.rows.size();
        blk.matrix.assign(dim, Vector(dim));
        for (std::size_t i = 0; i < dim; ++i)
          for (std::size_t j = 0; j < dim; ++j) {
            const auto [hp, hm] = blk.rows[i];
            const auto [hpp, hmp] = blk.rows[j];
            blk.matrix[i][j] = sixpoint_coefficient(k, hp, hm, hpp, hmp) * bk(hp, hpp, np) * bk(hm, hmp, nm);
          }
        if (!is_symmetric(blk.matrix)) throw ConsistencyError("asymmetric positivity block");
        blk.inertia = exact_inertia(blk.matrix);
        rep.blocks.push_back(std::move(blk));
      }
  return rep;
}

}  // namespace cpw
