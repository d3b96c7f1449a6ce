#include <gtest/gtest.h>

#include <random>

#include "cpw/intertwiners_chiral.hpp"
#include "test_support.hpp"

using namespace cpw;
using cpw::testing::random_rational;

namespace {

LaurentSum x(int i, int j, const Rational& e = 1) { return LaurentSum::pair_power(i, j, e); }

// Brute-force iota o op: differentiate symbolically, require regularity at
// x1 = x2, keep the x12^0 part and rename point 1 to 2.
LaurentSum brute_force_reduce(const LaurentSum& f, const OpTable& t) {
  LaurentSum acc;
  for (const auto& [pq, c] : t) {
    LaurentSum g = f;
    for (int k = 0; k < pq.first; ++k) g = g.differentiate(1);
    for (int k = 0; k < pq.second; ++k) g = g.differentiate(2);
    acc += g * c;
  }
  LaurentSum out;
  for (const auto& [p, c] : acc.terms()) {
    auto it = p.find({1, 2});
    if (it != p.end()) {
      EXPECT_GT(it->second, 0) << "singular term";
      continue;
    }
    out += LaurentSum::monomial(p, c).relabel({{1, 2}});
  }
  return out;
}

}  // namespace

TEST(ChiralE, Examples) {
  EXPECT_EQ(chiral_E(0, 3, 5).coeffs, (OpTable{{{0, 0}, 1}}));
  EXPECT_EQ(chiral_E(2, 1, 1).coeffs, (OpTable{{{1, 1}, -1}}));
  EXPECT_EQ(chiral_E(3, 2, 2).coeffs, (OpTable{{{2, 1}, -2}, {{1, 2}, 2}}));
  EXPECT_TRUE(chiral_E(1, 4, 4).coeffs.empty());
}

TEST(ChiralD, Examples) {
  EXPECT_EQ(chiral_D(1).coeffs, (OpTable{{{0, 0}, 1}}));
  EXPECT_EQ(chiral_D(2).coeffs, (OpTable{{{1, 0}, 1}, {{0, 1}, -1}}));
  EXPECT_EQ(chiral_D(3).coeffs,
            (OpTable{{{2, 0}, make_rational(1, 8)}, {{1, 1}, make_rational(-1, 2)}, {{0, 2}, make_rational(1, 8)}}));
  EXPECT_THROW(chiral_D(0), DomainError);
}

TEST(ChiralD, ProportionalToNablaDifferenceOfE) {
  for (int h = 2; h <= 4; ++h) {
    const MultiPoly d = chiral_D(h).as_poly();
    const MultiPoly nd = nabla_difference(chiral_E(h, 7, 7).as_poly());
    const Exponents lead = d.terms().begin()->first;
    const Rational c = nd.coeff(lead) / d.coeff(lead);
    EXPECT_NE(c, 0);
    EXPECT_EQ(nd, d * c) << "h=" << h;
  }
}

TEST(ChiralPde, ClosedFormSolves) {
  std::mt19937 rng(41);
  for (int trial = 0; trial < 3; ++trial) {
    const Rational d1 = random_rational(rng), d2 = random_rational(rng);
    for (int h = 0; h <= 6; ++h) EXPECT_TRUE(verify_intertwining_pde(chiral_E(h, d1, d2)).is_zero()) << h;
  }
}

TEST(ChiralPde, PerturbationDetected) {
  auto op = chiral_E(2, 3, 3);
  op.coeffs[{2, 0}] += 1;  // every multiple of d_1 d_2 solves, so perturb an endpoint
  EXPECT_FALSE(verify_intertwining_pde(op).is_zero());
  auto bad = chiral_E(2, 3, 3);
  bad.coeffs[{0, 0}] = 1;
  EXPECT_THROW(verify_intertwining_pde(bad), std::invalid_argument);
}

TEST(ChiralReduction, ThreePointSelection) {
  for (int a = 1; a <= 5; ++a)
    for (int h = 1; h <= 5; ++h) {
      const auto w = prop1_series(WaveSpec::from_interior({make_rational(1, 2), make_rational(5, 2), Rational(a)}, {}), 0);
      const auto op = chiral_E(h, w.spec.d(1), w.spec.d(2));
      const LaurentSum r = apply_chiral_reduction(to_laurent(w), 1, 2, 2, op, w.spec.d(1) + w.spec.d(2));
      if (h != a || h == 1) {
        // h = 1: E_1 is proportional to d_1 + d_2 and cannot hit x12.
        EXPECT_TRUE(r.is_zero()) << "a=" << a << " h=" << h;
      } else {
        auto c = compare_up_to_constant(r, x(2, 3, -2 * a));
        ASSERT_TRUE(c.has_value()) << "a=" << a;
        EXPECT_NE(*c, 0);
      }
    }
}

TEST(ChiralReduction, SingularDiagonalAndAdjacency) {
  const LaurentSum f = x(1, 2, -3) * x(2, 3, -1);
  EXPECT_THROW(apply_chiral_reduction(f, 1, 2, 2, chiral_E(2, 1, 1), 2), DomainError);
  EXPECT_THROW(apply_chiral_reduction(f, 1, 3, 3, chiral_E(2, 1, 1), 2), DomainError);
}

TEST(ChiralReduction, AgreesWithBruteForceDifferentiation) {
  const LaurentSum f = x(1, 2, 2) * x(1, 3, -3) * x(2, 4, -2) * x(3, 4, make_rational(1, 2)) +
                       x(1, 2, 3) * x(1, 4, -1) * x(2, 3, make_rational(-7, 3)) * Rational(5);
  for (int h = 0; h <= 4; ++h) {
    const auto op = chiral_E(h, make_rational(2, 3), make_rational(-1, 5));
    const auto got = apply_chiral_reduction(f, 1, 2, 2, op, 0);
    EXPECT_TRUE((got - brute_force_reduce(f, op.coeffs)).is_zero()) << "h=" << h;
  }
}

TEST(ChiralReduction, PerTermDIdentity) {
  for (int h = 1; h <= 5; ++h)
    for (int a = 0; a <= 4; ++a) {
      // ((h-1)!)^2 D_h applied to u^a / (x13 x24), u = x12 x34 / (x13 x24).
      const LaurentSum f = x(1, 2, a) * x(3, 4, a) * x(1, 3, -a - 1) * x(2, 4, -a - 1);
      auto op = chiral_D(h);
      for (auto& [pq, c] : op.coeffs) c *= factorial(h - 1) * factorial(h - 1);
      const auto got = apply_chiral_reduction(f, 1, 2, 2, op, 0);
      EXPECT_TRUE((got - brute_force_reduce(f, op.coeffs)).is_zero());
      Rational cah = pochhammer(h, a) * pochhammer(1 - h, a) / (factorial(a) * factorial(a));
      if ((h - 1) % 2) cah = -cah;
      const LaurentSum want = x(3, 4, h - 1) * x(2, 3, -h) * x(2, 4, -h) * cah;
      EXPECT_TRUE((got - want).is_zero()) << "h=" << h << " a=" << a;
    }
}

TEST(ChiralReduction, WavesReduceToLowerWaves) {
  const std::vector<Rational> base{make_rational(1, 3), make_rational(2, 5), make_rational(3, 7),
                                   make_rational(5, 4), make_rational(2, 3)};
  for (int n = 4; n <= 5; ++n)
    for (int a2 = 1; a2 <= 4; ++a2)
      for (int h = 1; h <= 4; ++h) {
        std::vector<Rational> dims(base.begin(), base.begin() + n);
        std::vector<Rational> interior{Rational(a2)};
        if (n == 5) interior.push_back(make_rational(7, 3));
        const auto w = prop1_series(WaveSpec::from_interior(dims, interior), 6 + h);
        const auto r = reduce_wave(w, WaveChannel::Front, h);
        EXPECT_EQ(r.exactCap, 6);
        if (h != a2 || h == 1) {
          EXPECT_TRUE(r.result.is_zero()) << "n=" << n << " a2=" << a2 << " h=" << h;
        } else {
          ASSERT_TRUE(r.ratio.has_value());
          EXPECT_NE(*r.ratio, 0);
        }
      }
}

TEST(ChiralReduction, BackChannelOfFivePointWave) {
  const std::vector<Rational> dims{make_rational(1, 3), make_rational(2, 5), make_rational(3, 7),
                                   make_rational(5, 4), make_rational(2, 3)};
  for (int h = 2; h <= 3; ++h) {
    const auto w = prop1_series(WaveSpec::from_interior(dims, {make_rational(7, 3), Rational(h)}), 4 + h);
    const auto r = reduce_wave(w, WaveChannel::Back, h);
    ASSERT_TRUE(r.ratio.has_value());
    EXPECT_NE(*r.ratio, 0);
    EXPECT_TRUE(reduce_wave(w, WaveChannel::Back, h + 1).result.is_zero());
  }
}
