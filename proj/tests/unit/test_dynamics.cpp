#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "berkdyn/dynamics.hpp"
#include "berkdyn/error.hpp"

using namespace berkdyn;

namespace {

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Unsupported;
}

QPoly q(const std::vector<mpq_class>& c) { return QPoly(c); }

RationalMap quad(const FieldPtr& F, const mpq_class& c) { return RationalMap::from_rational(F, q({c, 0, 1}), q({1})); }

BerkPoint pt(const FieldPtr& F, const mpq_class& a) { return BerkPoint::type1(PadicScalar(F, a)); }

BerkPoint zeta(const FieldPtr& F, long a, RadiusExp e) { return BerkPoint::disc(PadicScalar(F, a), std::move(e)); }

bool close(const PadicScalar& x, const PadicScalar& y, long digits) {
  PadicScalar d = x - y;
  return d.is_exact_zero() || d.lower_bound_units() >= digits * x.field()->e();
}

/// Reduced rational functions agree: a/b == c/d over the residue field.
bool same_function(const ReducedMap& x, const ReducedMap& y) {
  return x.num * y.den == y.num * x.den;
}

}  // namespace

TEST(Dynamics, EvaluateExamples) {
  auto F = Field::create(3);
  EXPECT_EQ(evaluate(quad(F, 0), pt(F, 3)), pt(F, 9));
  auto inv = RationalMap::from_rational(F, q({1}), q({0, 1}));
  EXPECT_TRUE(evaluate(inv, pt(F, 0)).is_infinity());
  EXPECT_EQ(evaluate(inv, BerkPoint::infinity()), BerkPoint::type1(PadicScalar::zero(F)));
  EXPECT_TRUE(evaluate(quad(F, 0), BerkPoint::infinity()).is_infinity());
  // (3 - sqrt13)/6 is fixed by z^2 - 1/9.
  PadicScalar s13 = PadicScalar(F, 13L).sqrt();
  PadicScalar x = (PadicScalar(F, 3L) - s13) / PadicScalar(F, 6L);
  BerkPoint y = evaluate(quad(F, mpq_class(-1, 9)), BerkPoint::type1(x));
  EXPECT_TRUE(close(y.center(), x, 50));
}

TEST(Dynamics, PushDiscPointExamples) {
  auto F = Field::create(3);
  EXPECT_EQ(push_disc_point(quad(F, 0), zeta(F, 0, 1)), zeta(F, 0, 2));
  for (long c : {0L, 1L, 2L, 3L, -5L}) {
    EXPECT_EQ(push_disc_point(quad(F, c), BerkPoint::gauss(F)), BerkPoint::gauss(F));
  }
  auto inv = RationalMap::from_rational(F, q({1}), q({0, 1}));
  EXPECT_EQ(push_disc_point(inv, zeta(F, 0, 1)), zeta(F, 0, -1));
  // A disc holding the pole 1 of 1/(z - 1).
  auto shifted = RationalMap::from_rational(F, q({1}), q({-1, 1}));
  EXPECT_EQ(push_disc_point(shifted, zeta(F, 1, 2)), zeta(F, 0, -2));
}

TEST(Dynamics, ReductionExamples) {
  auto F = Field::create(3);
  auto a = reduction_at_gauss(quad(F, 3));
  EXPECT_EQ(a.degree, 2);
  EXPECT_EQ(a.str(), "z^2");
  EXPECT_TRUE(a.gauss_fixed);
  auto b = reduction_at_gauss(RationalMap::from_rational(F, q({0, 1, 3}), q({1})));
  EXPECT_EQ(b.degree, 1);
  EXPECT_TRUE(b.nonconstant);
  EXPECT_TRUE(b.gauss_fixed);
  auto c = reduction_at_gauss(RationalMap::from_rational(F, q({0, 0, mpq_class(1, 3)}), q({1})));
  EXPECT_EQ(c.degree, 0);
  EXPECT_FALSE(c.nonconstant);
  EXPECT_FALSE(c.gauss_fixed);
  EXPECT_EQ(c.str(), "inf");
  EXPECT_EQ(push_disc_point(RationalMap::from_rational(F, q({0, 0, mpq_class(1, 3)}), q({1})), BerkPoint::gauss(F)),
            zeta(F, 0, -1));
  EXPECT_EQ(code_of([&] { RationalMap::from_rational(F, q({-1, 0, 1}), q({-1, 1})); }), Errc::DegenerateMap);
  EXPECT_EQ(code_of([&] { RationalMap::from_rational(F, q({5}), q({1})); }), Errc::DegenerateMap);
}

TEST(Dynamics, LocalDegreeExamples) {
  auto F = Field::create(3);
  auto g = BerkPoint::gauss(F);
  auto d = local_degree(quad(F, 0), g);
  EXPECT_EQ(d.degree, 2);
  EXPECT_EQ(d.cls, PointClass::Repelling);
  for (long c : {1L, 2L, -3L, 9L}) EXPECT_EQ(local_degree(quad(F, c), g).degree, 2);
  auto e = local_degree(RationalMap::from_rational(F, q({0, 1, 3}), q({1})), g);
  EXPECT_EQ(e.degree, 1);
  EXPECT_EQ(e.cls, PointClass::Indifferent);
  EXPECT_EQ(code_of([&] { local_degree(quad(F, mpq_class(-1, 9)), g); }), Errc::NotFixed);
  // z -> z + 9z^2 fixes zeta(0, 3^-1) and acts on it with degree 1.
  auto f = RationalMap::from_rational(F, q({0, 1, 9}), q({1}));
  EXPECT_EQ(local_degree(f, zeta(F, 0, 1)).degree, 1);
  // Type III: z^2 fixes no type III point, but z -> z + 3z^2 fixes zeta(0, 3^-sqrt2).
  auto h = RationalMap::from_rational(F, q({0, 1, 3}), q({1}));
  EXPECT_EQ(local_degree(h, zeta(F, 0, RadiusExp(0, 1))).degree, 1);
}

TEST(Dynamics, PeriodPolynomialExamples) {
  auto F = Field::create(3);
  KForm a = period_polynomial(quad(F, 0), 1);
  EXPECT_EQ(a.degree, 3);
  EXPECT_EQ(a.infinity_order(), 1);
  EXPECT_TRUE(a.dehom[2].equals_to_precision(PadicScalar::one(F)));
  EXPECT_TRUE(a.dehom[1].equals_to_precision(PadicScalar(F, -1L)));
  EXPECT_TRUE(a.dehom[0].is_exact_zero());
  KForm b = period_polynomial(quad(F, 0), 2);
  EXPECT_EQ(b.degree, 5);
  EXPECT_EQ(b.dehom.degree(), 4);
  EXPECT_TRUE(b.dehom[1].equals_to_precision(PadicScalar(F, -1L)));
  KForm c = period_polynomial(quad(F, 7), 1);
  EXPECT_TRUE(c.dehom[0].equals_to_precision(PadicScalar(F, 7L)));
}

TEST(Dynamics, PeriodicPointsOfZSquared) {
  auto F = Field::create(3);
  auto sol = periodic_points(quad(F, 0), 1);
  ASSERT_EQ(sol.points.size(), 3u);
  int att = 0, ind = 0;
  for (const auto& r : sol.points) {
    EXPECT_EQ(r.period, 1);
    if (r.cls == PointClass::Attracting) ++att;
    if (r.cls == PointClass::Indifferent) {
      ++ind;
      EXPECT_EQ(r.point, pt(F, 1));
    }
  }
  EXPECT_EQ(att, 2);
  EXPECT_EQ(ind, 1);
  EXPECT_EQ(code_of([&] { periodic_points(quad(F, 0), 5); }), Errc::InvalidConfig);
}

TEST(Dynamics, PeriodicPointsCantorRegime) {
  auto F = Field::create(3);
  auto f = quad(F, mpq_class(-1, 9));
  auto one = periodic_points(f, 1);
  int finite = 0;
  for (const auto& r : one.points) {
    if (r.point.is_infinity()) {
      EXPECT_TRUE(r.multiplier_abs.is_zero());
      continue;
    }
    ++finite;
    EXPECT_EQ(r.point.center().abs(), AbsVal::from_exp(-1));
    EXPECT_EQ(r.multiplier_abs, AbsVal::from_exp(-1));
    EXPECT_EQ(r.cls, PointClass::Repelling);
  }
  EXPECT_EQ(finite, 2);
  auto two = periodic_points(f, 2);
  int pairs = 0;
  for (const auto& r : two.points) {
    if (r.period != 2) continue;
    ++pairs;
    // Root of z^2 + z + 8/9.
    const PadicScalar& z = r.point.center();
    EXPECT_TRUE(close(z * z + z + PadicScalar(F, mpq_class(8, 9)), PadicScalar::zero(F), 45));
    EXPECT_EQ(r.multiplier_abs, AbsVal::from_exp(-2));
  }
  EXPECT_EQ(pairs, 2);
  EXPECT_TRUE(two.unsolved.empty());
}

TEST(Dynamics, PeriodicPointInvariants) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<long> num(-30, 30);
  std::uniform_int_distribution<int> den(0, 2);
  const long dens[] = {1, 9, 27};
  for (long p : {3L, 5L}) {
    auto F = Field::create(p);
    for (int trial = 0; trial < 12; ++trial) {
      auto f = quad(F, mpq_class(num(rng), dens[den(rng)]));
      for (int n = 1; n <= 3; ++n) {
        auto sol = periodic_points(f, n);
        for (const auto& r : sol.points) {
          // Root containment for Phi_n and Phi_2n.
          if (!r.point.is_infinity() && r.certified) {
            for (int k : {1, 2}) {
              if (k * n > 4) continue;
              EXPECT_TRUE(residual_small(period_polynomial(f, k * n).dehom, r.point.center()));
            }
          }
          EXPECT_EQ(r.local_degree, 0);
          EXPECT_EQ(r.cls, classify_multiplier(r.multiplier_abs));
          // The image of a periodic point carries the same multiplier.
          if (!r.certified) continue;
          BerkPoint img = evaluate(f, r.point);
          bool found = false;
          for (const auto& s : sol.points) {
            if (s.point == img) {
              found = true;
              EXPECT_EQ(s.multiplier_abs, r.multiplier_abs);
              EXPECT_EQ(s.period, r.period);
            }
          }
          EXPECT_TRUE(found);
        }
      }
    }
  }
}

TEST(Dynamics, PushFunctoriality) {
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<long> c(-20, 20);
  std::uniform_int_distribution<int> rad(-4, 4);
  auto F = Field::create(3, 40);
  int done = 0;
  while (done < 100) {
    QPoly a = q({c(rng), c(rng), c(rng)}), b = q({c(rng), c(rng)});
    QPoly u = q({c(rng), c(rng), c(rng), c(rng)}), v = q({c(rng), 1});
    RationalMap f, g;
    try {
      f = RationalMap::from_rational(F, a, b);
      g = RationalMap::from_rational(F, u, v);
    } catch (const Error&) {
      continue;
    }
    BerkPoint xi = zeta(F, c(rng), RadiusExp(mpq_class(rad(rng), 2)));
    EXPECT_EQ(push_disc_point(f.compose(g), xi), push_disc_point(f, push_disc_point(g, xi)));
    ++done;
  }
}

TEST(Dynamics, ReductionFunctoriality) {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<long> c(-6, 6);
  auto F = Field::create(5);
  int done = 0;
  for (int trial = 0; trial < 400 && done < 100; ++trial) {
    RationalMap f, g;
    try {
      f = RationalMap::from_rational(F, q({c(rng), c(rng), c(rng)}), q({c(rng), c(rng)}));
      g = RationalMap::from_rational(F, q({c(rng), c(rng), 1}), q({1, c(rng)}));
    } catch (const Error&) {
      continue;
    }
    ReducedMap rf = reduction_at_gauss(f), rg = reduction_at_gauss(g);
    if (!rf.gauss_fixed || !rg.gauss_fixed) continue;
    EXPECT_TRUE(rf.nonconstant && rg.nonconstant);
    ReducedMap rfg = reduction_at_gauss(f.compose(g));
    // Compose the reductions as forms over the residue field.
    using RForm = HomPoly<ResidueElem>;
    const ResidueElem one(F, 1);
    RForm A{rg.num, std::max(rg.num.degree(), rg.den.degree())};
    RForm B{rg.den, A.degree};
    RForm P{rf.num, std::max(rf.num.degree(), rf.den.degree())};
    RForm Q{rf.den, P.degree};
    ReducedMap expect;
    expect.num = compose_forms(P, A, B, one).dehom;
    expect.den = compose_forms(Q, A, B, one).dehom;
    EXPECT_TRUE(same_function(rfg, expect)) << f.str() << " o " << g.str();
    ++done;
  }
  EXPECT_GE(done, 50);
}

TEST(Dynamics, CantorCoding) {
  auto F = Field::create(3);
  const PadicScalar lam(F, mpq_class(-1, 9));
  auto f = quad(F, mpq_class(-1, 9));
  PadicScalar x0 = cantor_coding(lam, "0");
  PadicScalar s13 = PadicScalar(F, 13L).sqrt();
  EXPECT_TRUE(close(x0, (PadicScalar(F, 3L) - s13) / PadicScalar(F, 6L), 50));
  PadicScalar x1 = cantor_coding(lam, "1");
  EXPECT_TRUE(close(x1, (PadicScalar(F, 3L) + s13) / PadicScalar(F, 6L), 50));

  for (int len = 1; len <= 8; ++len) {
    for (int bits = 0; bits < (1 << len); ++bits) {
      std::string w;
      for (int i = 0; i < len; ++i) w += ((bits >> i) & 1) ? '1' : '0';
      PadicScalar x = cantor_coding(lam, w);
      PadicScalar y = cantor_coding(lam, w.substr(1) + w[0]);
      EXPECT_TRUE(close(evaluate(f, BerkPoint::type1(x)).center(), y, 40)) << w;
    }
  }
  EXPECT_EQ(abs_diff(cantor_coding(lam, "0110"), cantor_coding(lam, "1110")), AbsVal::from_exp(-1));
  EXPECT_EQ(code_of([&] { cantor_coding(PadicScalar(F, mpq_class(1, 9)), "01"); }), Errc::BranchLeavesField);
  EXPECT_EQ(code_of([&] { cantor_coding(PadicScalar(F, 1L), "01"); }), Errc::InvalidConfig);
}
