#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

#include "cpw/errors.hpp"

namespace cpw {

/// Exact rational number; always kept in lowest terms with positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// "num/den", or "num" when the denominator is 1.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  Rational q;
  try {
    q = Rational(s, 10);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
  }
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline long to_long(const Rational& q) {
  if (!is_integer(q) || !q.get_num().fits_slong_p())
    throw DomainError("expected a machine integer, got " + to_string(q));
  return q.get_num().get_si();
}

inline Rational floor(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(f);
}

/// Fractional part in [0, 1).
inline Rational frac(const Rational& q) { return q - floor(q); }

inline Rational pow(const Rational& base, long e) {
  if (e < 0) {
    if (base == 0) throw DomainError("zero to a negative power");
    return pow(Rational(1) / base, -e);
  }
  Rational r = 1;
  Rational b = base;
  while (e > 0) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace cpw
