#pragma once

#include <string>
#include <vector>

#include "cpw/errors.hpp"
#include "cpw/multipoly.hpp"
#include "cpw/rational.hpp"
#include "cpw/series.hpp"
#include "cpw/special.hpp"

namespace cpw {

/// g(u+, u-) as a series in {"up", "um"}.
using GSeries = Series;

enum class GMethod { Recursion, Closed };

inline GMethod parse_g_method(const std::string& s) {
  if (s == "recursion") return GMethod::Recursion;
  if (s == "closed") return GMethod::Closed;
  throw std::invalid_argument("unknown g method: " + s);
}

inline std::vector<std::string> g_vars() { return {"up", "um"}; }

/// The coefficient formula for a, b >= 1.
inline Rational g_coefficient(int a, int b) {
  if (a == 0 && b == 0) return 1;
  if (a == 0 || b == 0) return 0;
  const int n = a + b;
  return Rational(2 * a * b) / Rational(n * (n * n - 1));
}

namespace detail {

// (1-u+)(1-u-)/(u+ - u-) * sum_{a+b>0} (a-b)/(a+b) u+^a u-^b.
inline GSeries g_closed(int cap) {
  GSeries q(g_vars(), cap);
  for (int n = 1; n <= cap + 1; ++n) {
    // h_{a,n-a} = q_{a-1,n-a} - q_{a,n-1-a}
    Rational prev = 0;  // q_{a-1, n-a}
    for (int a = 0; a < n; ++a) {
      const Rational h(Rational(a - (n - a)) / n);
      const Rational cur = prev - h;
      q.add_term({a, n - 1 - a}, cur);
      prev = cur;
    }
    if (prev != 1) throw ConsistencyError("antisymmetric sum is not divisible by u+ - u-");
  }
  MultiPoly f = MultiPoly::constant(g_vars(), 1) - MultiPoly::variable(g_vars(), "up");
  f = f * (MultiPoly::constant(g_vars(), 1) - MultiPoly::variable(g_vars(), "um"));
  return q * GSeries::from_poly(f, cap);
}

// theta = t d/dt = -(1-w) d/dw on a truncated univariate series in w.
inline std::vector<Rational> theta_w(const std::vector<Rational>& f) {
  std::vector<Rational> r(f.size() > 0 ? f.size() - 1 : 0);
  for (std::size_t k = 0; k < r.size(); ++k) {
    r[k] -= Rational(k + 1) * f[k + 1];
    r[k] += Rational(k) * f[k];
  }
  return r;
}

inline GSeries g_recursion(int cap) {
  std::vector<std::vector<Rational>> gn;  // g_n(w), length cap - 2n + 1
  gn.push_back(std::vector<Rational>(cap + 1, 0));
  gn[0][0] = 1;
  for (int n = 1; 2 * n <= cap; ++n) {
    const int len = cap - 2 * n + 1;
    // R = (1 - theta)(n + theta) g_{n-1}, exact to w-degree len - 1
    std::vector<Rational> inner = theta_w(gn[n - 1]);
    for (std::size_t k = 0; k < inner.size(); ++k) inner[k] += Rational(n) * gn[n - 1][k];
    std::vector<Rational> rhs = theta_w(inner);
    for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] = inner[k] - rhs[k];
    std::vector<Rational> g(len);
    for (int k = 0; k < len; ++k) {
      Rational acc = rhs.at(k);
      if (k > 0) acc += Rational(n + k) * g[k - 1];
      g[k] = acc / Rational(n + 2 + k);
    }
    gn.push_back(std::move(g));
  }
  const auto vars = g_vars();
  const GSeries up = GSeries::from_poly(MultiPoly::variable(vars, "up"), cap);
  const GSeries um = GSeries::from_poly(MultiPoly::variable(vars, "um"), cap);
  const GSeries s = up * um;
  const GSeries w = up + um - s;
  GSeries out(vars, cap);
  GSeries sn = GSeries::one(vars, cap);
  for (std::size_t n = 0; n < gn.size(); ++n) {
    GSeries inner(vars, cap);
    GSeries wk = GSeries::one(vars, cap);
    for (const Rational& c : gn[n]) {
      inner += wk * c;
      wk = wk * w;
    }
    out += sn * inner * Rational(1 / factorial(int(n)));
    sn = sn * s;
  }
  return out;
}

}  // namespace detail

inline GSeries g_series(int cap, GMethod method) {
  if (cap < 0) throw DomainError("g_series: negative cap");
  return method == GMethod::Closed ? detail::g_closed(cap) : detail::g_recursion(cap);
}

struct BiharmonicResidual {
  MultiPoly residual;  // in {"s", "w"}, w = 1 - t
  int exactThrough;    // weighted order (s counts 2, w counts 1)
  bool is_zero() const { return residual.terms().empty(); }
};

namespace detail {

inline int sw_weight(const Exponents& e) { return 2 * e[0] + e[1]; }

inline MultiPoly sw_truncate(const MultiPoly& p, int cap) {
  MultiPoly r(p.vars());
  for (const auto& [e, c] : p.terms())
    if (sw_weight(e) <= cap) r.add_term(e, c);
  return r;
}

// Rewrite a symmetric series in u+, u- through e1 = w + s, e2 = s.
inline MultiPoly to_sw(const GSeries& g) {
  const std::vector<std::string> sw = {"s", "w"};
  const int cap = g.cap();
  const MultiPoly up = MultiPoly::variable(g.vars(), "up"), um = MultiPoly::variable(g.vars(), "um");
  const MultiPoly e1 = up + um, e2 = up * um;
  const MultiPoly s = MultiPoly::variable(sw, "s"), w = MultiPoly::variable(sw, "w");
  MultiPoly rest(g.vars());
  for (const auto& [e, c] : g.terms()) rest.add_term(e, c);
  MultiPoly out(sw);
  while (!rest.terms().empty()) {
    // highest u+ power within the lowest remaining degree
    const Exponents* lead = nullptr;
    for (const auto& [e, c] : rest.terms())
      if (!lead || total_degree(e) < total_degree(*lead) ||
          (total_degree(e) == total_degree(*lead) && e[0] > (*lead)[0]))
        lead = &e;
    const int a = (*lead)[0], b = (*lead)[1];
    if (a < b) throw DomainError("g is not symmetric in u+, u-");
    const Rational c = rest.coeff(*lead);
    rest = rest - e1.pow(a - b) * e2.pow(b) * c;
    out = out + sw_truncate((w + s).pow(a - b) * s.pow(b) * c, cap);
  }
  return sw_truncate(out, cap);
}

}  // namespace detail

/// Biharmonicity operator
///   (1 - th)(1 + th + s ds) - ((1 - th) + t (2 + th + s ds)) ds,  th = t dt,
/// in (s, w = 1 - t). It lowers the weighted order by at most 3.
inline BiharmonicResidual verify_g_biharmonic(const GSeries& g) {
  if (g.cap() < 3) throw DomainError("verify_g_biharmonic: cap must be at least 3");
  const MultiPoly p = detail::to_sw(g);
  const auto& vars = p.vars();
  const MultiPoly s = MultiPoly::variable(vars, "s"), w = MultiPoly::variable(vars, "w");
  const MultiPoly one = MultiPoly::constant(vars, 1), t = one - w;
  auto th = [&](const MultiPoly& f) { return (w - one) * f.differentiate("w"); };
  auto ths = [&](const MultiPoly& f) { return s * f.differentiate("s"); };
  auto one_minus_th = [&](const MultiPoly& f) { return f - th(f); };
  const MultiPoly ds = p.differentiate("s");
  MultiPoly r = one_minus_th(p + th(p) + ths(p));
  r = r - one_minus_th(ds) - t * (ds * Rational(2) + th(ds) + ths(ds));
  const int exact = g.cap() - 3;
  return {detail::sw_truncate(r, exact), exact};
}

}  // namespace cpw
