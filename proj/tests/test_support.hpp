#pragma once

#include <random>

#include "cpw/multipoly.hpp"
#include "cpw/rational.hpp"

namespace cpw::testing {

inline Rational random_rational(std::mt19937& rng, int num_range = 9, int den_max = 5) {
  std::uniform_int_distribution<int> num(-num_range, num_range), den(1, den_max);
  return make_rational(num(rng), den(rng));
}

/// Random polynomial of total degree <= deg with about `terms` terms.
inline MultiPoly random_poly(std::mt19937& rng, const std::vector<std::string>& vars, int deg,
                             int terms = 5) {
  MultiPoly p(vars);
  std::uniform_int_distribution<int> e(0, deg);
  for (int k = 0; k < terms; ++k) {
    Exponents ex(vars.size(), 0);
    int budget = e(rng);
    for (auto& x : ex) {
      std::uniform_int_distribution<int> take(0, budget);
      x = take(rng);
      budget -= x;
    }
    p.add_term(ex, random_rational(rng));
  }
  return p;
}

}  // namespace cpw::testing
