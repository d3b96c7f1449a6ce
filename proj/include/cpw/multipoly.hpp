#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cpw/rational.hpp"

namespace cpw {

using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0); }

/// Graded order: total degree ascending, ties broken lexicographically
/// with larger leading exponents first.
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const {
    const int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

/// Sparse polynomial in named variables with exact rational coefficients.
class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexLess>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      for (std::size_t j = i + 1; j < vars_.size(); ++j)
        if (vars_[i] == vars_[j]) throw std::invalid_argument("duplicate variable " + vars_[i]);
  }

  static MultiPoly constant(std::vector<std::string> vars, const Rational& c) {
    MultiPoly p(std::move(vars));
    p.add_term(Exponents(p.vars_.size(), 0), c);
    return p;
  }
  static MultiPoly variable(std::vector<std::string> vars, const std::string& name) {
    MultiPoly p(std::move(vars));
    Exponents e(p.vars_.size(), 0);
    e[p.var_index(name)] = 1;
    p.add_term(e, 1);
    return p;
  }

  const std::vector<std::string>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  std::size_t var_index(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) throw std::invalid_argument("unknown variable " + name);
    return static_cast<std::size_t>(it - vars_.begin());
  }

  int total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, cpw::total_degree(e));
    return d;
  }

  Rational coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Exponents& e, const Rational& c) {
    if (e.size() != vars_.size()) throw std::invalid_argument("exponent length mismatch");
    for (int k : e)
      if (k < 0) throw std::invalid_argument("negative exponent in polynomial");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    require_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    require_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  MultiPoly& operator*=(const Rational& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= s;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const Rational& s) { return a *= s; }
  friend MultiPoly operator*(const Rational& s, MultiPoly a) { return a *= s; }
  MultiPoly operator-() const { return *this * Rational(-1); }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.require_same(b);
    MultiPoly r(a.vars_);
    Exponents e(a.vars_.size());
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    return r;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  MultiPoly pow(unsigned n) const {
    MultiPoly r = constant(vars_, 1), b = *this;
    while (n) {
      if (n & 1u) r *= b;
      n >>= 1u;
      if (n) b *= b;
    }
    return r;
  }

  MultiPoly differentiate(const std::string& name) const { return differentiate(var_index(name)); }
  MultiPoly differentiate(std::size_t i) const {
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponents f = e;
      --f[i];
      r.add_term(f, c * e[i]);
    }
    return r;
  }

  /// Replace a variable by a polynomial over the same variable list.
  MultiPoly substitute(const std::string& name, const MultiPoly& value) const {
    require_same(value);
    const std::size_t i = var_index(name);
    std::map<int, MultiPoly> powers;
    MultiPoly r(vars_);
    for (const auto& [e, c] : terms_) {
      Exponents f = e;
      f[i] = 0;
      MultiPoly mono(vars_);
      mono.add_term(f, c);
      if (e[i] == 0) {
        r += mono;
        continue;
      }
      auto it = powers.find(e[i]);
      if (it == powers.end()) it = powers.emplace(e[i], value.pow(static_cast<unsigned>(e[i]))).first;
      r += mono * it->second;
    }
    return r;
  }

  MultiPoly substitute(const std::string& name, const Rational& value) const {
    return substitute(name, constant(vars_, value));
  }

  Rational evaluate(const std::vector<Rational>& point) const {
    if (point.size() != vars_.size()) throw std::invalid_argument("point dimension mismatch");
    Rational s = 0;
    for (const auto& [e, c] : terms_) {
      Rational t = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) t *= cpw::pow(point[i], e[i]);
      s += t;
    }
    return s;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        if (!mono.empty()) mono += "*";
        mono += vars_[i];
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      Rational a = abs(c);
      std::string coeff = cpw::to_string(a);
      std::string body = mono.empty() ? coeff : (a == 1 ? mono : coeff + "*" + mono);
      if (out.empty())
        out = (c < 0 ? "-" : "") + body;
      else
        out += (c < 0 ? " - " : " + ") + body;
    }
    return out;
  }

 private:
  void require_same(const MultiPoly& o) const {
    if (vars_ != o.vars_) throw std::invalid_argument("variable set mismatch");
  }

  std::vector<std::string> vars_;
  TermMap terms_;
};

/// c with a = c * b, or nullopt; b must be nonzero.
inline std::optional<Rational> proportionality(const MultiPoly& a, const MultiPoly& b) {
  if (b.is_zero()) throw std::invalid_argument("proportionality: reference polynomial is zero");
  const auto& [e, cb] = *b.terms().begin();
  const Rational c = a.coeff(e) / cb;
  if (a == b * c) return c;
  return std::nullopt;
}

}  // namespace cpw
