#pragma once

#include <array>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cpw/errors.hpp"
#include "cpw/laurent.hpp"
#include "cpw/rational.hpp"
#include "cpw/series.hpp"
#include "cpw/special.hpp"

namespace cpw {

/// Signed Laurent monomials in the squared distances X_ij (i < j), treated as
/// independent symbols.
class XSum {
 public:
  using Monomial = std::map<PointPair, int>;
  using TermMap = std::map<Monomial, Rational>;

  static XSum monomial(const Monomial& m, const Rational& c = 1) {
    XSum s;
    s.add_term(m, c);
    return s;
  }

  void add_term(Monomial m, const Rational& c) {
    if (c == 0) return;
    for (auto it = m.begin(); it != m.end();) {
      if (it->first.first >= it->first.second) throw std::invalid_argument("X pair keys must satisfy i < j");
      it = it->second == 0 ? m.erase(it) : std::next(it);
    }
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  XSum& operator+=(const XSum& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  friend XSum operator+(XSum a, const XSum& b) { return a += b; }
  friend XSum operator-(XSum a, const XSum& b) { return a += b * Rational(-1); }
  friend XSum operator*(const XSum& a, const Rational& s) {
    XSum r;
    for (const auto& [m, c] : a.terms_) r.add_term(m, c * s);
    return r;
  }
  friend XSum operator*(const XSum& a, const XSum& b) {
    XSum r;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = ma;
        for (const auto& [p, e] : mb) m[p] += e;
        r.add_term(std::move(m), ca * cb);
      }
    return r;
  }
  friend bool operator==(const XSum& a, const XSum& b) { return a.terms_ == b.terms_; }

  /// Exchange the labels i and j. X is symmetric, so no signs appear.
  XSum swap_points(int i, int j) const {
    auto img = [&](int k) { return k == i ? j : k == j ? i : k; };
    XSum r;
    for (const auto& [m, c] : terms_) {
      Monomial n;
      for (const auto& [p, e] : m) {
        int a = img(p.first), b = img(p.second);
        n[{std::min(a, b), std::max(a, b)}] += e;
      }
      r.add_term(std::move(n), c);
    }
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + cpw::to_string(c) + ")";
      for (const auto& [p, e] : m)
        out += "*X" + std::to_string(p.first) + std::to_string(p.second) + "^" + std::to_string(e);
    }
    return out;
  }

 private:
  TermMap terms_;
};

inline XSum X(int i, int j, int e = 1) {
  if (i == j) throw std::invalid_argument("X: coincident points");
  return XSum::monomial({{{std::min(i, j), std::max(i, j)}, e}});
}

/// f - f(k <-> l), unnormalized.
inline XSum antisymmetrize(const XSum& f, int k, int l) { return f - f.swap_points(k, l); }

enum class StructureName { E6, B, BminusHalfE };

inline std::string to_string(StructureName n) {
  switch (n) {
    case StructureName::E6: return "E6";
    case StructureName::B: return "B";
    case StructureName::BminusHalfE: return "BminusHalfE";
  }
  return "?";
}

inline StructureName parse_structure_name(const std::string& s) {
  if (s == "E6") return StructureName::E6;
  if (s == "B") return StructureName::B;
  if (s == "BminusHalfE") return StructureName::BminusHalfE;
  throw std::invalid_argument("unknown structure: " + s);
}

struct SixPointStructure {
  StructureName name;
  XSum terms;
  // Signed monomials produced by the antisymmetrizations before collecting.
  std::size_t rawTerms = 0;
  int d = 3, dPrime = 3;
};

namespace detail {

inline XSum e6_numerator_base() {
  return X(1, 5) * X(2, 6) * X(3, 4) - X(1, 5) * X(2, 3) * X(4, 6) * Rational(2) -
         X(1, 5) * X(2, 4) * X(3, 6) * Rational(2);
}

inline XSum e6_denominator_inverse() {
  return X(1, 2, -2) * X(1, 3, -1) * X(1, 4, -1) * X(2, 3, -1) * X(2, 4, -1) * X(3, 5, -1) * X(4, 5, -1) *
         X(3, 6, -1) * X(4, 6, -1) * X(5, 6, -2);
}

}  // namespace detail

inline SixPointStructure build_structure(StructureName name) {
  SixPointStructure s{name, {}, 0};
  if (name == StructureName::E6 || name == StructureName::BminusHalfE) {
    const XSum base = detail::e6_numerator_base();
    const XSum num = antisymmetrize(antisymmetrize(base, 1, 2), 5, 6);
    s.rawTerms = base.size() * 4;
    s.terms = num * detail::e6_denominator_inverse();
  }
  if (name == StructureName::B || name == StructureName::BminusHalfE) {
    const XSum left = antisymmetrize(X(1, 4, -1) * X(2, 3, -1), 1, 2);
    const XSum right = antisymmetrize(X(3, 6, -1) * X(4, 5, -1), 5, 6);
    const XSum b = X(1, 2, -2) * left * X(3, 4, -1) * right * X(5, 6, -2);
    if (name == StructureName::B) {
      s.terms = b;
      s.rawTerms = 4;
    } else {
      s.terms = b - s.terms * Rational(1, 2);
      s.rawTerms += 4;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// 2D restriction. The + family uses points 1..6, the - family 11..16.

inline constexpr int kMinusOffset = 10;

inline int family_point(int i, int family) { return family == 0 ? i : i + kMinusOffset; }

/// Common prefactor 1/(X12^2 X13 X24 X34 X35 X46 X56^2), per family.
inline PairPowers sixpoint_prefactor_family(int family) {
  const std::vector<std::pair<PointPair, int>> base = {{{1, 2}, -2}, {{1, 3}, -1}, {{2, 4}, -1}, {{3, 4}, -1},
                                                       {{3, 5}, -1}, {{4, 6}, -1}, {{5, 6}, -2}};
  PairPowers p;
  for (const auto& [pair, e] : base) p[{family_point(pair.first, family), family_point(pair.second, family)}] = e;
  return p;
}

inline PairPowers sixpoint_prefactor() {
  return LaurentSum::multiply_powers(sixpoint_prefactor_family(0), sixpoint_prefactor_family(1));
}

struct Structure2D {
  StructureName name;
  LaurentSum exact;    // both families, chiral pair powers
  PairPowers prefactor;
};

namespace detail {

// Scaling weight of each point: sum of exponents of pairs touching it.
inline std::map<int, Rational> point_weights(const PairPowers& p) {
  std::map<int, Rational> w;
  for (const auto& [pair, e] : p) {
    w[pair.first] += e;
    w[pair.second] += e;
  }
  for (auto it = w.begin(); it != w.end();) it = it->second == 0 ? w.erase(it) : std::next(it);
  return w;
}

}  // namespace detail

/// X_ij -> x_ij,+ x_ij,-. Every term must carry the conformal weights of the
/// common prefactor in both families.
inline Structure2D restrict_2d(const SixPointStructure& s) {
  Structure2D out{s.name, {}, sixpoint_prefactor()};
  const auto target = detail::point_weights(out.prefactor);
  for (const auto& [m, c] : s.terms.terms()) {
    PairPowers p;
    for (const auto& [pair, e] : m)
      for (int f = 0; f < 2; ++f) p[{family_point(pair.first, f), family_point(pair.second, f)}] = e;
    if (detail::point_weights(p) != target) throw ConsistencyError("non-factorizable remainder");
    out.exact.add_term(std::move(p), c);
  }
  return out;
}

/// u^alpha (1-u)^beta u'^alpha' (1-u')^beta' in one family, with
/// u = x12 x34/(x13 x24), 1-u = x14 x23/(x13 x24),
/// u' = x34 x56/(x35 x46), 1-u' = x36 x45/(x35 x46).
inline PairPowers cross_ratio_monomial(int family, const std::array<int, 4>& ex) {
  const auto [a, b, ap, bp] = ex;
  const std::vector<std::pair<PointPair, int>> e = {
      {{1, 2}, a},           {{3, 4}, a + ap},      {{1, 3}, -a - b},      {{2, 4}, -a - b},
      {{1, 4}, b},           {{2, 3}, b},           {{5, 6}, ap},          {{3, 5}, -ap - bp},
      {{4, 6}, -ap - bp},    {{3, 6}, bp},          {{4, 5}, bp}};
  PairPowers p;
  for (const auto& [pair, k] : e)
    if (k != 0) p[{family_point(pair.first, family), family_point(pair.second, family)}] = k;
  return p;
}

/// Inverse of cross_ratio_monomial; throws if the ratio is not of that form.
inline std::array<int, 4> factor_cross_ratios(const PairPowers& ratio, int family) {
  auto get = [&](int i, int j) -> long {
    auto it = ratio.find({family_point(i, family), family_point(j, family)});
    return it == ratio.end() ? 0 : to_long(it->second);
  };
  std::array<int, 4> ex = {int(get(1, 2)), int(get(1, 4)), int(get(5, 6)), int(get(3, 6))};
  PairPowers mine;
  for (const auto& [pair, e] : ratio) {
    const bool inFamily = family == 0 ? pair.second <= 6 : pair.first > kMinusOffset;
    if (inFamily) mine[pair] = e;
  }
  if (cross_ratio_monomial(family, ex) != mine) throw ConsistencyError("non-factorizable remainder");
  return ex;
}

/// Per-term factorization of exact / prefactor into chiral cross ratios.
struct CrossRatioTerm {
  Rational coeff;
  std::array<int, 4> plus, minus;
};

inline std::vector<CrossRatioTerm> factor_terms(const Structure2D& s) {
  std::vector<CrossRatioTerm> out;
  PairPowers inv;
  for (const auto& [pair, e] : s.prefactor) inv[pair] = -e;
  for (const auto& [p, c] : s.exact.terms()) {
    const PairPowers r = LaurentSum::multiply_powers(p, inv);
    for (const auto& [pair, e] : r)
      if (!is_integer(e)) throw ConsistencyError("non-factorizable remainder");
    out.push_back({c, factor_cross_ratios(r, 0), factor_cross_ratios(r, 1)});
  }
  return out;
}

/// Series variables: u+, u-, u'+, u'-.
inline std::vector<std::string> sixpoint_series_vars() { return {"up", "um", "vp", "vm"}; }

/// prefactor^{-1} * exact as a power series in the cross ratios.
inline Series series_form(const Structure2D& s, int cap) {
  const auto vars = sixpoint_series_vars();
  // (1-u)^beta, one variable at slot i.
  auto one_minus = [&](std::size_t i, int beta) {
    Series r(vars, cap);
    for (int k = 0; k <= cap; ++k) {
      Exponents e(4, 0);
      e[i] = k;
      Rational c = binomial(beta, k);
      if (k % 2) c = -c;
      r.add_term(e, c);
    }
    return r;
  };
  Series total(vars, cap);
  for (const auto& t : factor_terms(s)) {
    Exponents lead = {t.plus[0], t.minus[0], t.plus[2], t.minus[2]};
    for (int a : lead)
      if (a < 0) throw ConsistencyError("non-factorizable remainder: negative cross-ratio power");
    Series term = Series::one(vars, cap).shift(0, lead[0]).shift(1, lead[1]).shift(2, lead[2]).shift(3, lead[3]);
    term = term * one_minus(0, t.plus[1]) * one_minus(1, t.minus[1]) * one_minus(2, t.plus[3]) *
           one_minus(3, t.minus[3]);
    total += term * t.coeff;
  }
  return total;
}

namespace detail {

inline LaurentSum cr(int family, const std::array<int, 4>& ex) {
  return LaurentSum::monomial(cross_ratio_monomial(family, ex));
}

// (u+ - u-)/((1-u+)(1-u-)), primed or not.
inline LaurentSum antisym_factor(bool primed) {
  auto m = [&](int family, int a, int b) {
    return cr(family, primed ? std::array<int, 4>{0, 0, a, b} : std::array<int, 4>{a, b, 0, 0});
  };
  return m(0, 1, -1) * m(1, 0, -1) - m(0, 0, -1) * m(1, 1, -1);
}

// 1/((1-u+)(1-u-)) - 1.
inline LaurentSum sum_factor(bool primed) {
  auto m = [&](int family, int b) {
    return cr(family, primed ? std::array<int, 4>{0, 0, 0, b} : std::array<int, 4>{0, b, 0, 0});
  };
  return m(0, -1) * m(1, -1) - LaurentSum::constant(1);
}

}  // namespace detail

/// The closed 2D forms: prefactor * antisym * antisym' for B - E/2 and
/// prefactor * sum * sum' for B.
inline LaurentSum closed_form_2d(StructureName n) {
  const LaurentSum pre = LaurentSum::monomial(sixpoint_prefactor());
  if (n == StructureName::BminusHalfE) return pre * detail::antisym_factor(false) * detail::antisym_factor(true);
  if (n == StructureName::B) return pre * detail::sum_factor(false) * detail::sum_factor(true);
  throw DomainError("no closed 2D form for " + to_string(n));
}

/// Sum_{a+b>0} w(a, b) u+^a u-^b times the same in the primed variables.
template <class W>
Series double_sum_series(W w, int cap) {
  const auto vars = sixpoint_series_vars();
  Series s(vars, cap);
  for (int a = 0; a <= cap; ++a)
    for (int b = 0; a + b <= cap; ++b)
      for (int ap = 0; a + b + ap <= cap; ++ap)
        for (int bp = 0; a + b + ap + bp <= cap; ++bp) {
          if (a + b == 0 || ap + bp == 0) continue;
          s.add_term({a, b, ap, bp}, w(a, b) * w(ap, bp));
        }
  return s;
}

}  // namespace cpw
