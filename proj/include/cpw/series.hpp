#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cpw/multipoly.hpp"
#include "cpw/rational.hpp"

namespace cpw {

namespace detail {
inline bool coeff_is_zero(const Rational& c) { return c == 0; }
template <class C>
bool coeff_is_zero(const C& c) {
  return c.is_zero();
}
}  // namespace detail

/// Multivariate formal power series truncated at a total degree `cap`.
/// Terms above the cap are never stored; results are exact through the cap.
template <class Coeff = Rational>
class TruncatedSeries {
 public:
  using TermMap = std::map<Exponents, Coeff, GrlexLess>;

  TruncatedSeries() = default;
  TruncatedSeries(std::vector<std::string> vars, int cap) : vars_(std::move(vars)), cap_(cap) {
    if (cap < 0) throw std::invalid_argument("series cap must be non-negative");
  }

  static TruncatedSeries one(std::vector<std::string> vars, int cap) {
    TruncatedSeries s(std::move(vars), cap);
    s.add_term(Exponents(s.vars_.size(), 0), Coeff(1));
    return s;
  }

  static TruncatedSeries from_poly(const MultiPoly& p, int cap) {
    TruncatedSeries s(p.vars(), cap);
    for (const auto& [e, c] : p.terms()) s.add_term(e, c);
    return s;
  }

  const std::vector<std::string>& vars() const { return vars_; }
  int cap() const { return cap_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Coeff coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  void add_term(const Exponents& e, const Coeff& c) {
    if (e.size() != vars_.size()) throw std::invalid_argument("exponent length mismatch");
    if (total_degree(e) > cap_) return;
    if (detail::coeff_is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (detail::coeff_is_zero(it->second)) terms_.erase(it);
    }
  }

  /// Lower the cap, dropping terms above it.
  TruncatedSeries truncate(int cap) const {
    TruncatedSeries s(vars_, std::min(cap, cap_));
    for (const auto& [e, c] : terms_) s.add_term(e, c);
    return s;
  }

  TruncatedSeries& operator+=(const TruncatedSeries& o) {
    require_same(o);
    if (o.cap_ < cap_) *this = truncate(o.cap_);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  TruncatedSeries& operator-=(const TruncatedSeries& o) { return *this += o * Coeff(-1); }
  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const Coeff& s) {
    TruncatedSeries r(a.vars_, a.cap_);
    for (const auto& [e, c] : a.terms_) r.add_term(e, c * s);
    return r;
  }

  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.require_same(b);
    TruncatedSeries r(a.vars_, std::min(a.cap_, b.cap_));
    Exponents e(a.vars_.size());
    for (const auto& [ea, ca] : a.terms_) {
      const int da = total_degree(ea);
      if (da > r.cap_) break;
      for (const auto& [eb, cb] : b.terms_) {
        if (da + total_degree(eb) > r.cap_) break;
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, ca * cb);
      }
    }
    return r;
  }

  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
    return a.vars_ == b.vars_ && a.cap_ == b.cap_ && a.terms_ == b.terms_;
  }

  /// Euler operator u_i d/du_i (cap unchanged).
  TruncatedSeries euler(std::size_t i) const {
    TruncatedSeries r(vars_, cap_);
    for (const auto& [e, c] : terms_) r.add_term(e, c * Coeff(e.at(i)));
    return r;
  }

  /// d/du_i; exact only through cap - 1.
  TruncatedSeries differentiate(std::size_t i) const {
    TruncatedSeries r(vars_, cap_ > 0 ? cap_ - 1 : 0);
    for (const auto& [e, c] : terms_) {
      if (e.at(i) == 0) continue;
      Exponents f = e;
      --f[i];
      r.add_term(f, c * Coeff(e[i]));
    }
    return r;
  }

  /// Multiply by u_i^k (k >= 0); terms pushed beyond the cap are dropped.
  TruncatedSeries shift(std::size_t i, int k) const {
    if (k < 0) throw std::invalid_argument("negative shift");
    TruncatedSeries r(vars_, cap_);
    for (const auto& [e, c] : terms_) {
      Exponents f = e;
      f.at(i) += k;
      r.add_term(f, c);
    }
    return r;
  }

  /// Lowest total degree present, or -1 for the zero series.
  int order() const { return terms_.empty() ? -1 : total_degree(terms_.begin()->first); }

  std::size_t var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    throw std::invalid_argument("unknown series variable " + name);
  }

 private:
  void require_same(const TruncatedSeries& o) const {
    if (vars_ != o.vars_) throw std::invalid_argument("series variable mismatch");
  }

  std::vector<std::string> vars_;
  int cap_ = 0;
  TermMap terms_;
};

using Series = TruncatedSeries<Rational>;

}  // namespace cpw
