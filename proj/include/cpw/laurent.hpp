#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cpw/errors.hpp"
#include "cpw/multipoly.hpp"
#include "cpw/rational.hpp"
#include "cpw/special.hpp"

namespace cpw {

using PointPair = std::pair<int, int>;  // always first < second
using PairPowers = std::map<PointPair, Rational>;

/// Finite sum of coefficient * prod_{i<j} x_ij^{e_ij} with x_ij = x_i - x_j and
/// rational exponents. Integer exponents may be negative; non-integer
/// exponents are carried symbolically.
class LaurentSum {
 public:
  using TermMap = std::map<PairPowers, Rational>;

  LaurentSum() = default;

  static LaurentSum constant(const Rational& c) {
    LaurentSum s;
    s.add_term({}, c);
    return s;
  }

  static LaurentSum monomial(const PairPowers& powers, const Rational& c = 1) {
    LaurentSum s;
    s.add_term(powers, c);
    return s;
  }

  /// x_ij^e for any ordering of i, j; x_ji = -x_ij is folded into the sign.
  static LaurentSum pair_power(int i, int j, const Rational& e) {
    if (i == j) throw std::invalid_argument("pair_power: coincident points");
    Rational c = 1;
    if (i > j) {
      std::swap(i, j);
      if (!is_integer(e)) throw DomainError("cannot reorder a pair carrying a non-integer exponent");
      if (to_long(e) % 2 != 0) c = -1;
    }
    return monomial({{{i, j}, e}}, c);
  }

  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool structurally_zero() const { return terms_.empty(); }

  void add_term(PairPowers powers, const Rational& c) {
    if (c == 0) return;
    for (auto it = powers.begin(); it != powers.end();) {
      if (it->first.first >= it->first.second) throw std::invalid_argument("pair keys must satisfy i < j");
      if (it->second == 0)
        it = powers.erase(it);
      else
        ++it;
    }
    auto [it, inserted] = terms_.try_emplace(std::move(powers), c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  LaurentSum& operator+=(const LaurentSum& o) {
    for (const auto& [p, c] : o.terms_) add_term(p, c);
    return *this;
  }
  LaurentSum& operator-=(const LaurentSum& o) {
    for (const auto& [p, c] : o.terms_) add_term(p, -c);
    return *this;
  }
  friend LaurentSum operator+(LaurentSum a, const LaurentSum& b) { return a += b; }
  friend LaurentSum operator-(LaurentSum a, const LaurentSum& b) { return a -= b; }
  friend LaurentSum operator*(const LaurentSum& a, const Rational& s) {
    LaurentSum r;
    for (const auto& [p, c] : a.terms_) r.add_term(p, c * s);
    return r;
  }
  friend LaurentSum operator*(const Rational& s, const LaurentSum& a) { return a * s; }
  LaurentSum operator-() const { return *this * Rational(-1); }

  friend LaurentSum operator*(const LaurentSum& a, const LaurentSum& b) {
    LaurentSum r;
    for (const auto& [pa, ca] : a.terms_)
      for (const auto& [pb, cb] : b.terms_) r.add_term(multiply_powers(pa, pb), ca * cb);
    return r;
  }
  LaurentSum& operator*=(const LaurentSum& o) { return *this = *this * o; }

  static PairPowers multiply_powers(PairPowers a, const PairPowers& b) {
    for (const auto& [k, e] : b) {
      auto [it, inserted] = a.try_emplace(k, e);
      if (!inserted) {
        it->second += e;
        if (it->second == 0) a.erase(it);
      }
    }
    return a;
  }

  /// Partial derivative with respect to the coordinate of point k.
  LaurentSum differentiate(int k) const {
    LaurentSum r;
    for (const auto& [p, c] : terms_)
      for (const auto& [pair, e] : p) {
        int s = 0;
        if (pair.first == k) s = 1;
        if (pair.second == k) s = -1;
        if (s == 0) continue;
        PairPowers q = p;
        q[pair] = e - 1;
        r.add_term(std::move(q), c * e * s);
      }
    return r;
  }

  /// Rename points. Pairs whose order flips pick up (-1)^e (integer e only).
  LaurentSum relabel(const std::map<int, int>& m) const {
    auto image = [&](int i) {
      auto it = m.find(i);
      return it == m.end() ? i : it->second;
    };
    LaurentSum r;
    for (const auto& [p, c] : terms_) {
      LaurentSum t = constant(c);
      for (const auto& [pair, e] : p) t = t * pair_power(image(pair.first), image(pair.second), e);
      r += t;
    }
    return r;
  }

  std::set<int> points() const {
    std::set<int> pts;
    for (const auto& [p, c] : terms_)
      for (const auto& [pair, e] : p) {
        pts.insert(pair.first);
        pts.insert(pair.second);
      }
    return pts;
  }

  bool has_only_integer_exponents() const {
    for (const auto& [p, c] : terms_)
      for (const auto& [pair, e] : p)
        if (!is_integer(e)) return false;
    return true;
  }

  /// Value at a rational point; integer exponents only.
  Rational evaluate(const std::map<int, Rational>& x) const {
    Rational s = 0;
    for (const auto& [p, c] : terms_) {
      Rational t = c;
      for (const auto& [pair, e] : p) t *= cpw::pow(x.at(pair.first) - x.at(pair.second), to_long(e));
      s += t;
    }
    return s;
  }

  /// Exact zero test (see canonical form below).
  bool is_zero() const;

  friend bool operator==(const LaurentSum& a, const LaurentSum& b) { return (a - b).is_zero(); }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [p, c] : terms_) {
      if (!out.empty()) out += " + ";
      out += "(" + cpw::to_string(c) + ")";
      for (const auto& [pair, e] : p)
        out += "*x" + std::to_string(pair.first) + "_" + std::to_string(pair.second) + "^(" +
               cpw::to_string(e) + ")";
    }
    return out;
  }

 private:
  TermMap terms_;
};

/// Same data viewed as a prefactor: a LaurentSum with a single monomial.
using FactoredLaurent = LaurentSum;

namespace detail {

// Connected components of the point graph, as point -> representative.
inline std::map<int, int> components(const std::vector<const LaurentSum*>& in) {
  std::map<int, int> parent;
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto* s : in)
    for (const auto& [p, c] : s->terms())
      for (const auto& [pair, e] : p) {
        parent.try_emplace(pair.first, pair.first);
        parent.try_emplace(pair.second, pair.second);
        const int a = find(pair.first), b = find(pair.second);
        if (a != b) parent[std::min(a, b)] = std::max(a, b);
      }
  std::map<int, int> out;
  for (auto& [k, v] : parent) out[k] = find(k);
  return out;
}

inline PairPowers fractional_key(const PairPowers& p) {
  PairPowers key;
  for (const auto& [pair, e] : p) {
    Rational f = frac(e);
    if (f != 0) key.emplace(pair, f);
  }
  return key;
}

struct TermRef {
  std::size_t input;
  const PairPowers* powers;
  Rational coeff;
};

// Polynomial expander for one slice: point coordinates X_p with some
// coordinates pinned to 0 or 1.
class SliceExpander {
 public:
  SliceExpander(const std::set<int>& points, const std::set<int>& zero, std::optional<int> one) {
    for (int p : points)
      if (!zero.count(p) && p != one) vars_.push_back("X" + std::to_string(p));
    for (int p : points) {
      if (zero.count(p))
        coord_.emplace(p, MultiPoly::constant(vars_, 0));
      else if (one && p == *one)
        coord_.emplace(p, MultiPoly::constant(vars_, 1));
      else
        coord_.emplace(p, MultiPoly::variable(vars_, "X" + std::to_string(p)));
    }
  }

  const std::vector<std::string>& vars() const { return vars_; }

  MultiPoly power(const PointPair& pair, long n) {
    auto key = std::make_pair(pair, n);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    MultiPoly v = (coord_.at(pair.first) - coord_.at(pair.second)).pow(static_cast<unsigned>(n));
    return cache_.emplace(key, std::move(v)).first->second;
  }

  // prod (X_i - X_j)^{e - min}, times c.
  MultiPoly expand(const PairPowers& p, const PairPowers& mins, const Rational& c) {
    MultiPoly r = MultiPoly::constant(vars_, c);
    for (const auto& [pair, m] : mins) {
      auto it = p.find(pair);
      const Rational e = it == p.end() ? Rational(0) : it->second;
      const long n = to_long(e - m);
      if (n > 0) r *= power(pair, n);
    }
    return r;
  }

 private:
  std::vector<std::string> vars_;
  std::map<int, MultiPoly> coord_;
  std::map<std::pair<PointPair, long>, MultiPoly> cache_;
};

// Minimal exponent per pair over a term list (absent pairs count as 0).
inline PairPowers clearing_minimum(const std::vector<TermRef>& terms,
                                   const std::set<int>* restrict_to = nullptr) {
  std::set<PointPair> pairs;
  for (const auto& t : terms)
    for (const auto& [pair, e] : *t.powers)
      if (!restrict_to || restrict_to->count(pair.first)) pairs.insert(pair);
  PairPowers mins;
  for (const auto& pair : pairs) {
    std::optional<Rational> m;
    for (const auto& t : terms) {
      auto it = t.powers->find(pair);
      const Rational e = it == t.powers->end() ? Rational(0) : it->second;
      if (!m || e < *m) m = e;
    }
    mins.emplace(pair, *m);
  }
  return mins;
}

inline bool is_homogeneous(const std::vector<TermRef>& terms, const PairPowers& mins) {
  std::optional<Rational> deg;
  for (const auto& t : terms) {
    Rational d = 0;
    for (const auto& [pair, m] : mins) {
      auto it = t.powers->find(pair);
      d += (it == t.powers->end() ? Rational(0) : it->second) - m;
    }
    if (deg && *deg != d) return false;
    deg = d;
  }
  return true;
}

// Slice for a point set: one pinned-to-zero point per component, and one
// pinned-to-one point if homogeneous and a free point remains.
inline SliceExpander make_slice(const std::set<int>& points, const std::map<int, int>& comp,
                                bool homogeneous) {
  std::set<int> zero;
  std::map<int, int> last_in_comp;
  for (int p : points) last_in_comp[comp.at(p)] = std::max(last_in_comp[comp.at(p)], p);
  for (auto& [c, p] : last_in_comp) zero.insert(p);
  std::optional<int> one;
  if (homogeneous)
    for (int p : points)
      if (!zero.count(p)) {
        one = p;
        break;
      }
  return SliceExpander(points, zero, one);
}

using CanonicalKey = std::pair<PairPowers, Exponents>;
using CanonicalForm = std::map<CanonicalKey, Rational>;

// Joint canonical polynomial forms: two inputs are equal as functions iff
// their forms are equal (both are cleared by the same monomial per class).
inline std::vector<CanonicalForm> canonical_forms(const std::vector<const LaurentSum*>& in) {
  const auto comp = components(in);
  std::map<PairPowers, std::vector<TermRef>> classes;
  for (std::size_t k = 0; k < in.size(); ++k)
    for (const auto& [p, c] : in[k]->terms()) classes[fractional_key(p)].push_back({k, &p, c});

  std::vector<CanonicalForm> out(in.size());
  for (const auto& [key, terms] : classes) {
    const PairPowers mins = clearing_minimum(terms);
    std::set<int> pts;
    for (const auto& [pair, m] : mins) {
      pts.insert(pair.first);
      pts.insert(pair.second);
    }
    SliceExpander slice = make_slice(pts, comp, is_homogeneous(terms, mins));
    std::vector<MultiPoly> polys(in.size(), MultiPoly(slice.vars()));
    for (const auto& t : terms) polys[t.input] += slice.expand(*t.powers, mins, t.coeff);
    // Exponent vectors are indexed by the class-local variable list; prefix
    // them with the point labels so keys from different classes never collide.
    for (std::size_t k = 0; k < in.size(); ++k)
      for (const auto& [e, c] : polys[k].terms()) {
        Exponents tagged;
        for (const auto& v : slice.vars()) tagged.push_back(std::stoi(v.substr(1)));
        tagged.push_back(-1);
        tagged.insert(tagged.end(), e.begin(), e.end());
        out[k].emplace(CanonicalKey{key, tagged}, c);
      }
  }
  return out;
}

// Zero test for a sum of products A_k (x) B_k over two disjoint point families.
inline bool tensor_sum_is_zero(const std::vector<std::pair<MultiPoly, MultiPoly>>& products) {
  struct Pivot {
    MultiPoly a, b;
  };
  std::map<Exponents, Pivot, GrlexLess> pivots;  // keyed by leading monomial of a
  for (const auto& [a0, b] : products) {
    MultiPoly a = a0;
    // Reduce against pivots from the top monomial down.
    for (auto it = pivots.rbegin(); it != pivots.rend() && !a.is_zero(); ++it) {
      const Rational lam = a.coeff(it->first);
      if (lam == 0) continue;
      a -= it->second.a * lam;
      it->second.b += b * lam;
    }
    if (a.is_zero()) continue;
    const Exponents lead = a.terms().rbegin()->first;
    const Rational lc = a.terms().rbegin()->second;
    Pivot p{a * (1 / lc), b * lc};
    // Keep pivots fully reduced: clear the new lead from older pivots.
    for (auto& [lk, q] : pivots) {
      const Rational mu = q.a.coeff(lead);
      if (mu == 0) continue;
      q.a -= p.a * mu;
      p.b += q.b * mu;
    }
    pivots.emplace(lead, std::move(p));
  }
  for (const auto& [k, p] : pivots)
    if (!p.b.is_zero()) return false;
  return true;
}

inline bool two_family_is_zero(const LaurentSum& s, const std::map<int, int>& comp) {
  const int rep_a = comp.begin()->second;
  std::map<PairPowers, std::vector<TermRef>> classes;
  for (const auto& [p, c] : s.terms()) classes[fractional_key(p)].push_back({0, &p, c});
  for (const auto& [key, terms] : classes) {
    std::set<int> fam_a, fam_b;
    for (const auto& [pt, r] : comp) (r == rep_a ? fam_a : fam_b).insert(pt);
    // Split every term into its two family parts.
    std::vector<PairPowers> pa(terms.size()), pb(terms.size());
    for (std::size_t k = 0; k < terms.size(); ++k)
      for (const auto& [pair, e] : *terms[k].powers) (fam_a.count(pair.first) ? pa : pb)[k].emplace(pair, e);
    auto expand_family = [&](const std::vector<PairPowers>& parts) {
      std::vector<TermRef> refs;
      for (std::size_t k = 0; k < parts.size(); ++k) refs.push_back({0, &parts[k], 1});
      const PairPowers mins = clearing_minimum(refs);
      std::set<int> pts;
      for (const auto& [pair, m] : mins) {
        pts.insert(pair.first);
        pts.insert(pair.second);
      }
      SliceExpander slice = make_slice(pts, comp, is_homogeneous(refs, mins));
      std::vector<MultiPoly> polys;
      for (const auto& part : parts) polys.push_back(slice.expand(part, mins, 1));
      return polys;
    };
    const auto polys_a = expand_family(pa);
    const auto polys_b = expand_family(pb);
    std::vector<std::pair<MultiPoly, MultiPoly>> products;
    for (std::size_t k = 0; k < terms.size(); ++k)
      products.emplace_back(polys_a[k] * terms[k].coeff, polys_b[k]);
    if (!tensor_sum_is_zero(products)) return false;
  }
  return true;
}

}  // namespace detail

inline bool LaurentSum::is_zero() const {
  if (terms_.empty()) return true;
  const std::vector<const LaurentSum*> in{this};
  const auto comp = detail::components(in);
  std::set<int> reps;
  for (const auto& [p, r] : comp) reps.insert(r);
  if (reps.size() == 2) return detail::two_family_is_zero(*this, comp);
  return detail::canonical_forms(in)[0].empty();
}

/// Returns c with a = c * b exactly, or nullopt if a is not a multiple of b.
/// b must be nonzero.
inline std::optional<Rational> compare_up_to_constant(const LaurentSum& a, const LaurentSum& b) {
  const auto forms = detail::canonical_forms({&a, &b});
  const auto& fa = forms[0];
  const auto& fb = forms[1];
  if (fb.empty()) throw DomainError("compare_up_to_constant: reference is zero");
  const auto& [key, cb] = *fb.begin();
  auto it = fa.find(key);
  const Rational c = it == fa.end() ? Rational(0) : it->second / cb;
  if (fa.size() != fb.size() && c != 0) return std::nullopt;
  if (c == 0) return fa.empty() ? std::optional<Rational>(0) : std::nullopt;
  for (const auto& [k, v] : fb) {
    auto jt = fa.find(k);
    if (jt == fa.end() || jt->second != c * v) return std::nullopt;
  }
  return c;
}

}  // namespace cpw
