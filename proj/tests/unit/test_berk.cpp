#include <gtest/gtest.h>

#include <random>

#include "berkdyn/berk.hpp"
#include "berkdyn/error.hpp"

using namespace berkdyn;

namespace {

KPoly ints(const FieldPtr& F, const std::vector<long>& c) {
  std::vector<PadicScalar> v;
  for (long x : c) v.emplace_back(F, x);
  return KPoly(std::move(v));
}

BerkPoint zeta(const FieldPtr& F, long a, RadiusExp e) { return BerkPoint::disc(PadicScalar(F, a), std::move(e)); }

AbsVal pexp(const RadiusExp& e) { return AbsVal::from_exp(e); }

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Unsupported;
}

}  // namespace

TEST(Berk, Diameter) {
  auto F = Field::create(3);
  EXPECT_TRUE(diam(BerkPoint::type1(PadicScalar(F, 5L))).is_zero());
  EXPECT_EQ(diam(BerkPoint::gauss(F)), AbsVal::one());
  EXPECT_EQ(diam(zeta(F, 0, RadiusExp(0, 1))).exp(), RadiusExp(0, 1));
  EXPECT_EQ(code_of([] { diam(BerkPoint::infinity()); }), Errc::InfinityHasNoDiameter);
}

TEST(Berk, TypesAndEquality) {
  auto F = Field::create(3);
  EXPECT_EQ(zeta(F, 0, 1).type(), 2);
  EXPECT_EQ(zeta(F, 0, RadiusExp(1, 1)).type(), 3);
  EXPECT_EQ(zeta(F, 0, 1), zeta(F, 3, 1));
  EXPECT_EQ(zeta(F, 0, 1), zeta(F, -6, 1));
  EXPECT_FALSE(zeta(F, 0, 1) == zeta(F, 1, 1));
  EXPECT_FALSE(zeta(F, 0, 1) == zeta(F, 0, 2));
  EXPECT_EQ(BerkPoint::infinity(), BerkPoint::infinity());
}

TEST(Berk, HyperbolicDistanceExamples) {
  auto F = Field::create(3);
  EXPECT_EQ(hyperbolic_distance(BerkPoint::gauss(F), zeta(F, 0, 1)), RadiusExp(1));
  EXPECT_EQ(hyperbolic_distance(zeta(F, 0, 1), zeta(F, 1, 1)), RadiusExp(2));
  EXPECT_EQ(hyperbolic_distance(zeta(F, 5, 3), zeta(F, 5, 3)), RadiusExp(0));
  EXPECT_EQ(code_of([&] { hyperbolic_distance(BerkPoint::type1(PadicScalar(F, 1L)), zeta(F, 0, 1)); }),
            Errc::TypeIPoint);
}

TEST(Berk, MetricAdditivityAlongSegments) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> num(-40, 40);
  std::uniform_int_distribution<long> den(1, 7);
  auto F = Field::create(5);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<RadiusExp> e;
    for (int k = 0; k < 3; ++k) e.emplace_back(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
    std::sort(e.begin(), e.end());
    // r <= s <= t means exponents descending.
    BerkPoint t = zeta(F, 7, e[0]), s = zeta(F, 7, e[1]), r = zeta(F, 7, e[2]);
    EXPECT_EQ(hyperbolic_distance(r, t), hyperbolic_distance(r, s) + hyperbolic_distance(s, t));
    EXPECT_EQ(hyperbolic_distance(r, t), hyperbolic_distance(t, r));
  }
}

TEST(Berk, GaussSeminormExamples) {
  auto F = Field::create(3);
  EXPECT_EQ(seminorm(ints(F, {3, 0, 1}), BerkPoint::gauss(F)), AbsVal::one());
  EXPECT_EQ(seminorm(ints(F, {0, 1}), zeta(F, 0, 2)), pexp(2));
  EXPECT_EQ(seminorm(ints(F, {3, -4, 1}), BerkPoint::gauss(F)), AbsVal::one());
  EXPECT_TRUE(seminorm(KPoly(), BerkPoint::gauss(F)).is_zero());
  // Type I point: |P(a)|; z^2 - 4z + 3 vanishes at 3.
  EXPECT_TRUE(seminorm(ints(F, {3, -4, 1}), BerkPoint::type1(PadicScalar(F, 3L))).is_zero());
}

TEST(Berk, SeminormMultiplicativeAndUltrametric) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> coef(-200, 200);
  std::uniform_int_distribution<long> num(-6, 6);
  auto F = Field::create(3, 30);
  for (int trial = 0; trial < 300; ++trial) {
    KPoly P = ints(F, {coef(rng), coef(rng), coef(rng)});
    KPoly Q = ints(F, {coef(rng), coef(rng), coef(rng), coef(rng)});
    if (P.is_zero() || Q.is_zero()) continue;
    BerkPoint xi = zeta(F, coef(rng), RadiusExp(mpq_class(num(rng), 2), mpq_class(num(rng), 3)));
    EXPECT_EQ(seminorm(P * Q, xi), seminorm(P, xi) * seminorm(Q, xi));
    EXPECT_LE(seminorm(P + Q, xi), max(seminorm(P, xi), seminorm(Q, xi)));
  }
}

TEST(Berk, EqualityMatchesSeminormExtensionality) {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> c(-500, 500);
  std::uniform_int_distribution<long> k(0, 3);
  auto F = Field::create(3, 30);
  for (int trial = 0; trial < 100; ++trial) {
    RadiusExp r(k(rng));
    BerkPoint x = zeta(F, c(rng), r);
    BerkPoint y = zeta(F, c(rng), r);
    bool agree = true;
    for (int i = 0; i < 50; ++i) {
      KPoly lin(std::vector<PadicScalar>{PadicScalar(F, -c(rng)), PadicScalar::one(F)});
      if (!(seminorm(lin, x) == seminorm(lin, y))) agree = false;
    }
    // The probes z - c with c = centre distinguish distinct discs of equal radius.
    KPoly at_x(std::vector<PadicScalar>{-x.center(), PadicScalar::one(F)});
    if (!(seminorm(at_x, x) == seminorm(at_x, y))) agree = false;
    EXPECT_EQ(x == y, agree);
  }
}

TEST(Berk, TangentDirections) {
  auto F = Field::create(3);
  BerkPoint g = BerkPoint::gauss(F);
  EXPECT_EQ(tangent_direction(g, BerkPoint::type1(PadicScalar(F, 1L))).direction->c0(), 1u);
  EXPECT_TRUE(tangent_direction(g, BerkPoint::infinity()).is_infinity());
  EXPECT_EQ(tangent_direction(g, zeta(F, 3, 1)).direction->c0(), 0u);
  EXPECT_TRUE(tangent_direction(g, zeta(F, 0, -1)).is_infinity());
  EXPECT_TRUE(tangent_direction(g, BerkPoint::type1(PadicScalar(F, mpq_class(1, 3)))).is_infinity());
  EXPECT_EQ(code_of([&] { tangent_direction(g, zeta(F, 2, 0)); }), Errc::SamePoint);
}

TEST(Berk, TangentDirectionsPartitionTypeIPoints) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> c(-300, 300);
  auto F = Field::create(3, 30);
  BerkPoint xi = zeta(F, 4, 1);
  const AbsVal r = xi.radius();
  int tested = 0;
  while (tested < 300) {
    PadicScalar a(F, 4 + 3 * c(rng)), b(F, 4 + 3 * c(rng));
    auto da = tangent_direction(xi, BerkPoint::type1(a));
    auto db = tangent_direction(xi, BerkPoint::type1(b));
    EXPECT_EQ(da == db, abs_diff(a, b) < r);
    ++tested;
  }
}

TEST(Berk, NestedDiscLimits) {
  auto F = Field::create(3);
  std::vector<ChainDisc> shrink, settle, digits;
  PadicScalar acc = PadicScalar::zero(F);
  for (long j = 1; j <= 20; ++j) {
    mpq_class r(1, F->p_pow(j));
    shrink.push_back({PadicScalar::zero(F), r});
    settle.push_back({PadicScalar::zero(F), mpq_class(1, 3) + r});
    acc = acc + PadicScalar(F, F->p_pow(j));
    digits.push_back({acc, r});
  }
  NestedLimit a = nested_disc_limit(shrink);
  EXPECT_TRUE(a.limit.is_type1());
  EXPECT_TRUE(a.limit.center().is_exact_zero());
  NestedLimit b = nested_disc_limit(settle);
  EXPECT_EQ(b.limit, zeta(F, 0, 1));
  EXPECT_TRUE(b.conditions_hold);
  NestedLimit c = nested_disc_limit(digits);
  ASSERT_TRUE(c.limit.is_type1());
  // Sum_{i=1..20} 3^i = (3^21 - 3)/2.
  EXPECT_TRUE(c.limit.center().equals_to_precision(PadicScalar(F, mpz_class((F->p_pow(21) - 3) / 2))));
  std::vector<ChainDisc> bad = {{PadicScalar::zero(F), mpq_class(1, 9)}, {PadicScalar(F, 1L), mpq_class(1, 27)}};
  EXPECT_EQ(code_of([&] { nested_disc_limit(bad); }), Errc::NotNested);
}
