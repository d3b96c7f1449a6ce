#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cpw/errors.hpp"
#include "cpw/laurent.hpp"
#include "cpw/linsolve.hpp"
#include "cpw/series.hpp"
#include "cpw/special.hpp"

namespace cpw {

/// Field dimensions d_1..d_n and projection dimensions a_1..a_{n-1}
/// (stored 1-based through accessors) of a chiral n-point partial wave.
struct WaveSpec {
  int n = 0;
  std::vector<Rational> dims;  // d_1..d_n
  std::vector<Rational> proj;  // a_1..a_{n-1}

  /// Builds a spec from the interior projections a_2..a_{n-2}.
  static WaveSpec from_interior(std::vector<Rational> dims, const std::vector<Rational>& interior) {
    WaveSpec s;
    s.n = static_cast<int>(dims.size());
    if (s.n < 3) throw std::invalid_argument("a partial wave needs at least 3 points");
    if (static_cast<int>(interior.size()) != s.n - 3)
      throw std::invalid_argument("expected " + std::to_string(s.n - 3) + " interior projection dimensions");
    s.proj.push_back(dims.front());
    s.proj.insert(s.proj.end(), interior.begin(), interior.end());
    s.proj.push_back(dims.back());
    s.dims = std::move(dims);
    s.validate();
    return s;
  }

  void validate() const {
    if (n < 3) throw std::invalid_argument("a partial wave needs at least 3 points");
    if (static_cast<int>(dims.size()) != n || static_cast<int>(proj.size()) != n - 1)
      throw std::invalid_argument("dims/proj length mismatch");
    if (proj.front() != dims.front() || proj.back() != dims.back())
      throw std::invalid_argument("boundary projections must equal the outer field dimensions");
  }

  const Rational& d(int i) const { return dims.at(i - 1); }
  /// a_i with a_0 = a_n = 0.
  Rational a(int i) const { return (i <= 0 || i >= n) ? Rational(0) : proj.at(i - 1); }

  /// Relabeling i -> n+1-i.
  WaveSpec reversed() const {
    WaveSpec s = *this;
    std::reverse(s.dims.begin(), s.dims.end());
    std::reverse(s.proj.begin(), s.proj.end());
    return s;
  }
};

struct ChiralWave {
  WaveSpec spec;
  PairPowers prefactor;
  Series series;  // in u_1..u_{n-3}
};

inline std::vector<std::string> cross_ratio_vars(int count) {
  std::vector<std::string> v;
  for (int k = 1; k <= count; ++k) v.push_back("u" + std::to_string(k));
  return v;
}

/// u_k = x_{k,k+1} x_{k+2,k+3} / (x_{k,k+2} x_{k+1,k+3}) raised to e.
inline PairPowers cross_ratio_power(int k, const Rational& e) {
  PairPowers p;
  if (e == 0) return p;
  p[{k, k + 1}] += e;
  p[{k + 2, k + 3}] += e;
  p[{k, k + 2}] -= e;
  p[{k + 1, k + 3}] -= e;
  return p;
}

/// All exponent vectors of length m with total degree <= cap, in graded order.
inline void for_each_exponent(std::size_t m, int cap, const std::function<void(const Exponents&)>& fn) {
  Exponents e(m, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == m) {
      fn(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  rec(0, cap);
}

inline PairPowers prop1_prefactor(const WaveSpec& s) {
  PairPowers p;
  for (int j = 1; j <= s.n - 2; ++j) p[{j, j + 2}] += s.d(j + 1) - s.a(j) - s.a(j + 1);
  for (int i = 1; i <= s.n - 1; ++i) p[{i, i + 1}] -= s.d(i) + s.d(i + 1) - s.a(i - 1) - s.a(i + 1);
  std::erase_if(p, [](const auto& kv) { return kv.second == 0; });
  return p;
}

inline ChiralWave prop1_series(const WaveSpec& spec, int cap) {
  spec.validate();
  if (cap < 0) throw std::invalid_argument("cap must be non-negative");
  const int m = spec.n - 3;
  for (int k = 1; k <= m; ++k)
    if (pochhammer(2 * spec.a(k + 1), cap) == 0)
      throw DomainError("degenerate projection dimension a_" + std::to_string(k + 1) + " = " +
                        to_string(spec.a(k + 1)));
  ChiralWave w{spec, prop1_prefactor(spec), Series(cross_ratio_vars(m), m == 0 ? 0 : cap)};
  if (m == 0) {
    w.series = Series::one({}, 0);
    return w;
  }
  for_each_exponent(static_cast<std::size_t>(m), cap, [&](const Exponents& ell) {
    auto l = [&](int j) { return (j <= 0 || j > m) ? 0 : ell[j - 1]; };
    Rational c = 1;
    for (int j = 1; j <= spec.n - 2 && c != 0; ++j)
      c *= pochhammer(spec.a(j) + spec.a(j + 1) - spec.d(j + 1), l(j - 1) + l(j));
    for (int k = 1; k <= m; ++k) c /= factorial(l(k)) * pochhammer(2 * spec.a(k + 1), l(k));
    w.series.add_term(ell, c);
  });
  return w;
}

/// Terms of the wave as an explicit Laurent sum in the x_ij.
inline LaurentSum to_laurent(const ChiralWave& w) {
  LaurentSum out;
  for (const auto& [ell, c] : w.series.terms()) {
    PairPowers p = w.prefactor;
    for (std::size_t k = 0; k < ell.size(); ++k)
      p = LaurentSum::multiply_powers(p, cross_ratio_power(static_cast<int>(k) + 1, ell[k]));
    out.add_term(std::move(p), c);
  }
  return out;
}

/// 2F1(a+b, a+c; 2a; u) truncated at cap.
inline Series fourpoint_reference(const Rational& a, const Rational& b, const Rational& c, int cap) {
  if (pochhammer(2 * a, cap) == 0) throw DomainError("degenerate parameter a = " + to_string(a));
  Series s({"u1"}, cap);
  for (int l = 0; l <= cap; ++l) s.add_term({l}, gauss2f1_coeff(a + b, a + c, 2 * a, l));
  return s;
}

namespace detail {

// Parameters of the invariant Casimir system, with trivial fields padding n < 6.
struct CasimirParams {
  Rational d[7];
  Rational a2, a3, a4;
};

inline CasimirParams casimir_params(const WaveSpec& s) {
  if (s.n < 4 || s.n > 6) throw DomainError("invariant Casimir system is available for 4 <= n <= 6 only");
  CasimirParams p;
  for (int i = 1; i <= 6; ++i) p.d[i] = i <= s.n ? s.d(i) : Rational(0);
  auto a = [&](int i) { return i <= s.n - 1 ? s.a(i) : Rational(0); };
  p.a2 = a(2);
  p.a3 = a(3);
  p.a4 = a(4);
  return p;
}

}  // namespace detail

/// Monomial u1^x u2^y u3^z relating the wave to the normalized function f of
/// the invariant system (f = wave * 6-point denominator).
inline std::vector<Rational> casimir_shift(const ChiralWave& wave) {
  const auto p = detail::casimir_params(wave.spec);
  const auto& d = p.d;
  PairPowers ratio = wave.prefactor;
  const PairPowers den{{{1, 2}, d[1] + d[2] - d[3]}, {{1, 3}, d[1] + d[3] - d[2]},
                       {{2, 3}, d[2] + d[3] - d[1]}, {{4, 5}, d[4] + d[5] - d[6]},
                       {{4, 6}, d[4] + d[6] - d[5]}, {{5, 6}, d[5] + d[6] - d[4]}};
  ratio = LaurentSum::multiply_powers(ratio, den);
  std::set<PointPair> pairs;
  for (const auto& [k, e] : ratio) pairs.insert(k);
  for (int k = 1; k <= 3; ++k)
    for (const auto& [pair, e] : cross_ratio_power(k, 1)) pairs.insert(pair);
  Matrix a;
  Vector b;
  for (const auto& pair : pairs) {
    Vector row(3, 0);
    for (int k = 1; k <= 3; ++k) {
      const auto cr = cross_ratio_power(k, 1);
      auto it = cr.find(pair);
      if (it != cr.end()) row[k - 1] = it->second;
    }
    a.push_back(row);
    auto jt = ratio.find(pair);
    b.push_back(jt == ratio.end() ? Rational(0) : jt->second);
  }
  auto sol = linear_solve_exact(a, b);
  if (!sol.solvable || !sol.kernel.empty())
    throw ConsistencyError("wave prefactor does not match the 6-point normalization");
  return sol.particular;
}

/// Residual LHS - RHS of equation `which` (1..3) of the invariant Casimir
/// system applied to f, as a series in the offsets from the leading shift.
/// `eq` supplies the dimensions used in the equation (normally wave.spec).
inline Series casimir_residual(const WaveSpec& eq, const ChiralWave& wave, int which, int cap) {
  if (which < 1 || which > 3) throw std::invalid_argument("equation index must be 1, 2 or 3");
  const auto shift = casimir_shift(wave);
  const auto p = detail::casimir_params(eq);
  const auto& d = p.d;
  const int rcap = std::min(cap, wave.series.cap());
  const std::size_t m = wave.series.vars().size();
  auto coeff = [&](const Exponents& l3) -> Rational {
    for (int v : l3)
      if (v < 0) return 0;
    for (std::size_t k = m; k < 3; ++k)
      if (l3[k] != 0) return 0;
    return wave.series.coeff(Exponents(l3.begin(), l3.begin() + static_cast<long>(m)));
  };
  Series res(cross_ratio_vars(3), rcap);
  const std::size_t i = static_cast<std::size_t>(which - 1);
  for_each_exponent(3, rcap, [&](const Exponents& l) {
    Exponents prev = l;
    prev[i] -= 1;
    std::vector<Rational> E(3), Ep(3);
    for (std::size_t k = 0; k < 3; ++k) {
      E[k] = shift[k] + l[k];
      Ep[k] = shift[k] + prev[k];
    }
    Rational lhs, rhs;
    switch (which) {
      case 1:
        lhs = (E[0] + d[3] - p.a2) * (E[0] + d[3] + p.a2 - 1);
        rhs = (Ep[0] + Ep[1]) * (Ep[0] + d[1] - d[2] + d[3]);
        break;
      case 2:
        lhs = (E[1] - p.a3) * (E[1] + p.a3 - 1);
        rhs = (Ep[1] + Ep[0]) * (Ep[1] + Ep[2]);
        break;
      default:
        lhs = (E[2] + d[4] - p.a4) * (E[2] + d[4] + p.a4 - 1);
        rhs = (Ep[2] + Ep[1]) * (Ep[2] + d[6] - d[5] + d[4]);
        break;
    }
    res.add_term(l, lhs * coeff(l) - rhs * coeff(prev));
  });
  return res;
}

inline Series casimir_residual(const ChiralWave& wave, int which, int cap) {
  return casimir_residual(wave.spec, wave, which, cap);
}

}  // namespace cpw
