#pragma once

#include <stdexcept>

#include "cpw/multipoly.hpp"
#include "cpw/rational.hpp"

namespace cpw {

/// Rising factorial (x)_n = x(x+1)...(x+n-1); (x)_0 = 1.
inline Rational pochhammer(const Rational& x, int n) {
  if (n < 0) throw std::invalid_argument("pochhammer: negative length");
  Rational r = 1;
  for (int k = 0; k < n; ++k) r *= x + k;
  return r;
}

inline Rational factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(f);
}

/// Generalized binomial coefficient e(e-1)...(e-k+1)/k! for rational e.
inline Rational binomial(const Rational& e, int k) {
  if (k < 0) return 0;
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= (e - i) / Rational(i + 1);
  return r;
}

/// Coefficient of z^l in 2F1(a, b; c; z).
inline Rational gauss2f1_coeff(const Rational& a, const Rational& b, const Rational& c, int l) {
  const Rational den = pochhammer(c, l);
  if (den == 0)
    throw DomainError("2F1 coefficient: (c)_l vanishes for c = " + to_string(c) + ", l = " +
                      std::to_string(l));
  return pochhammer(a, l) * pochhammer(b, l) / (factorial(l) * den);
}

/// Legendre polynomial P_L as a polynomial in the single variable `var`, P_L(1) = 1.
inline MultiPoly legendre(int L, const std::string& var = "r") {
  if (L < 0) throw std::invalid_argument("legendre: negative degree");
  const std::vector<std::string> vars{var};
  MultiPoly prev = MultiPoly::constant(vars, 1);
  if (L == 0) return prev;
  const MultiPoly r = MultiPoly::variable(vars, var);
  MultiPoly cur = r;
  for (int n = 1; n < L; ++n) {
    MultiPoly next = (r * cur) * Rational(2 * n + 1, n + 1) - prev * Rational(n, n + 1);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace cpw
