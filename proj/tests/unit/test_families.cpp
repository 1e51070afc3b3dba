#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "berkdyn/error.hpp"
#include "berkdyn/families.hpp"

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

LambdaPoly L(std::vector<mpq_class> c) { return LambdaPoly(std::move(c)); }
BiPoly B(std::vector<LambdaPoly> c) { return BiPoly(std::move(c)); }

/// z^2 + lambda.
AnalyticFamily quadratic() { return AnalyticFamily::make(B({L({0, 1}), L({}), L({1})}), B({L({1})})); }
/// z^2 + lambda z.
AnalyticFamily quadratic_lz() { return AnalyticFamily::make(B({L({}), L({0, 1}), L({1})}), B({L({1})})); }

ParamPoint zeta(const FieldPtr& F, long a, RadiusExp e) { return BerkPoint::disc(PadicScalar(F, a), std::move(e)); }
ParamPoint pt(const FieldPtr& F, const mpq_class& a) { return BerkPoint::type1(PadicScalar(F, a)); }

bool close(const PadicScalar& x, const PadicScalar& y, long digits) {
  PadicScalar d = x - y;
  return d.is_exact_zero() || d.lower_bound_units() >= digits * x.field()->e();
}

/// Coefficientwise comparison of K-polynomials up to a common scalar.
bool proportional(const KPoly& a, const KPoly& b, long digits) {
  if (a.degree() != b.degree()) return false;
  PadicScalar r = a.leading() / b.leading();
  for (int i = 0; i <= a.degree(); ++i) {
    if (!close(a.coeff(static_cast<std::size_t>(i)), b.coeff(static_cast<std::size_t>(i)) * r, digits)) return false;
  }
  return true;
}

PadicScalar f_at(const AnalyticFamily& fam, const PadicScalar& l, const PadicScalar& z) {
  return specialize_poly(fam.num, l).eval(z) / specialize_poly(fam.den, l).eval(z);
}

}  // namespace

TEST(Families, PeriodCurveExamples) {
  auto fam = quadratic();
  const BiPoly phi1 = B({L({0, 1}), L({-1}), L({1})});
  const BiPoly phi2_star = B({L({1, 1}), L({1}), L({1})});
  EXPECT_EQ(period_curve(fam, 1).phi, phi1);
  EXPECT_EQ(period_curve(fam, 1).degree, 3);
  EXPECT_EQ(period_curve(fam, 2).phi, phi1 * phi2_star);
  EXPECT_EQ(dynatomic_factor(fam, 2), phi2_star);
  EXPECT_EQ(dynatomic_factor(fam, 3).degree(), 6);
  EXPECT_EQ(dynatomic_factor(fam, 4).degree(), 12);
  EXPECT_EQ(period_curve(quadratic_lz(), 1).phi, B({L({}), L({-1, 1}), L({1})}));
  EXPECT_EQ(to_string(period_curve(quadratic_lz(), 1).phi, "z"), "z^2 + (l - 1)*z");
  EXPECT_EQ(fam.str(), "z^2 + l");
}

TEST(Families, DivisibilityOfPeriodCurves) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> c(-4, 4);
  for (int trial = 0; trial < 20; ++trial) {
    // z^2 + (a + b l) z + (c + d l), or a cubic.
    const bool cubic = trial % 4 == 3;
    std::vector<LambdaPoly> num{L({c(rng), c(rng)}), L({c(rng), c(rng)}), cubic ? L({c(rng)}) : L({1})};
    if (cubic) num.push_back(L({1}));
    auto fam = AnalyticFamily::make(B(num), B({L({1})}));
    const BiPoly phi1 = period_curve(fam, 1).phi;
    const BiPoly phi2 = period_curve(fam, 2).phi;
    const BiPoly q = exact_divide(phi2, phi1);
    EXPECT_EQ(q * phi1, phi2);
    if (!cubic) EXPECT_EQ(period_curve(fam, 4).phi, exact_divide(period_curve(fam, 4).phi, phi2) * phi2);
  }
  EXPECT_EQ(code_of([] { exact_divide(B({L({1}), L({}), L({1})}), B({L({0, 1}), L({1})})); }), Errc::NotIntegral);
}

TEST(Families, SpecializationCoherence) {
  auto F = Field::create(3);
  auto fam = quadratic();
  auto fam2 = quadratic_lz();
  for (const mpq_class l : {mpq_class(-1, 9), mpq_class(2, 9), mpq_class(5), mpq_class(-7, 3), mpq_class(1, 4)}) {
    for (int n = 1; n <= 3; ++n) {
      for (const auto* g : {&fam, &fam2}) {
        const KPoly a = specialize_poly(period_curve(*g, n).phi, PadicScalar(F, l));
        const KPoly b = period_polynomial(g->specialize(F, l), n).dehom;
        EXPECT_TRUE(proportional(a, b, 50)) << l.get_str() << " n=" << n;
        const KPoly c = period_polynomial(g->specialize(PadicScalar(F, l)), n).dehom;
        EXPECT_TRUE(proportional(a, c, 40)) << l.get_str() << " n=" << n;
      }
    }
  }
}

TEST(Families, MonicNormalizeExamples) {
  auto F = Field::create(3);
  const BiPoly phi = B({L({1}), L({-1}), L({0, 1})});  // l z^2 - z + 1
  MonicSlice a = monic_normalize(phi, pt(F, 3));
  EXPECT_FALSE(a.swapped);
  EXPECT_EQ(a.lead, L({0, 1}));
  KPoly m = a.at(PadicScalar(F, 3L));
  EXPECT_TRUE(close(m[0], PadicScalar(F, mpq_class(1, 3)), 50));
  MonicSlice b = monic_normalize(phi, pt(F, 0));
  EXPECT_TRUE(b.swapped);
  EXPECT_EQ(b.poly, B({L({0, 1}), L({-1}), L({1})}));
  EXPECT_FALSE(monic_normalize(phi, zeta(F, 0, 0)).swapped);
  EXPECT_EQ(code_of([&] { monic_normalize(B({L({}), L({0, 1}), L({0, 1})}), pt(F, 0)); }), Errc::LeadingCoeffVanishes);
}

TEST(Families, MultiplierPolynomialExamples) {
  EXPECT_EQ(multiplier_polynomial(quadratic(), 1), B({L({0, 4}), L({-2}), L({1})}));
  // (w - l)(w - 2 + l): the fixed point 0 contributes w - l.
  const BiPoly m2 = multiplier_polynomial(quadratic_lz(), 1);
  EXPECT_EQ(m2, B({L({0, 2, -1}), L({-2}), L({1})}));
  EXPECT_EQ(exact_divide(m2, B({L({0, -1}), L({1})})), B({L({-2, 1}), L({1})}));
  auto zsq = AnalyticFamily::make(B({L({}), L({}), L({1})}), B({L({1})}));
  EXPECT_EQ(multiplier_polynomial(zsq, 1), B({L({}), L({-2}), L({1})}));
  // Period 2 of z^2 + l: the cycle multiplier 4(l + 1), twice.
  const BiPoly w = B({L({-4, -4}), L({1})});
  EXPECT_EQ(multiplier_polynomial(quadratic(), 2), w * w);
  EXPECT_EQ(discriminant(B({L({0, 1}), L({-1}), L({1})})), L({1, -4}));
  EXPECT_EQ(code_of([] { multiplier_polynomial(AnalyticFamily::make(B({L({1}), L({}), L({0, 1})}), B({L({1})})), 1); }),
            Errc::Unsupported);
}

TEST(Families, MultiplierConsistency) {
  auto F = Field::create(3);
  auto fam = quadratic();
  int full = 0;
  for (const mpq_class l : {mpq_class(-1, 9), mpq_class(-4, 9), mpq_class(-7, 9), mpq_class(5, 27), mpq_class(3)}) {
    const PadicScalar l0(F, l);
    RationalMap f = fam.specialize(F, l);
    for (int n = 1; n <= 3; ++n) {
      const KPoly M = specialize_poly(multiplier_polynomial(fam, n), l0);
      PeriodicSolve sol = periodic_points(f, n);
      std::vector<RadiusExp> from_points;
      int located = 0;
      for (const auto& r : sol.points) {
        if (r.period != n || r.point.is_infinity()) continue;
        ++located;
        ASSERT_TRUE(r.multiplier.has_value());
        EXPECT_TRUE(residual_small(M, *r.multiplier, 12)) << l.get_str() << " n=" << n;
        from_points.push_back(r.multiplier_abs.exp());
      }
      if (located != M.degree()) continue;
      std::vector<RadiusExp> from_poly;
      for (const auto& [v, c] : newton_polygon(M).root_valuations()) {
        for (int i = 0; i < c; ++i) from_poly.push_back(v);
      }
      std::sort(from_points.begin(), from_points.end());
      std::sort(from_poly.begin(), from_poly.end());
      EXPECT_EQ(from_points, from_poly) << l.get_str() << " n=" << n;
      ++full;
    }
  }
  EXPECT_GE(full, 6);
}

TEST(Families, UnstablyIndifferentExamples) {
  auto F = Field::create(3);
  const ParamPoint gauss = BerkPoint::gauss(F);
  IndifferenceReport a = unstably_indifferent(quadratic(), 1, gauss);
  ASSERT_EQ(a.roots.size(), 1u);
  EXPECT_TRUE(a.roots[0].unstably_indifferent);
  EXPECT_EQ(a.roots[0].count, 2);
  EXPECT_EQ(a.roots[0].valuation, RadiusExp(0));
  EXPECT_EQ(a.reduction, "w^2+w+L");

  IndifferenceReport b = unstably_indifferent(quadratic_lz(), 1, gauss);
  EXPECT_TRUE(b.any());

  for (int n = 2; n <= 3; ++n) EXPECT_TRUE(unstably_indifferent(quadratic(), n, gauss).any()) << n;

  IndifferenceReport c = unstably_indifferent(quadratic(), 1, pt(F, mpq_class(-1, 9)));
  EXPECT_FALSE(c.any());
  ASSERT_EQ(c.roots.size(), 1u);
  EXPECT_EQ(c.roots[0].valuation, RadiusExp(-1));
  EXPECT_TRUE(c.all_repelling());

  // Type I parameters with |w| = 1 are classically indifferent.
  IndifferenceReport d = unstably_indifferent(quadratic(), 1, pt(F, 1));
  EXPECT_FALSE(d.any());

  // Constant family: multipliers 0 and 2 never move.
  auto zsq = AnalyticFamily::make(B({L({}), L({}), L({1})}), B({L({1})}));
  IndifferenceReport e = unstably_indifferent(zsq, 1, gauss);
  EXPECT_FALSE(e.any());
  EXPECT_EQ(e.zero_roots, 1);

  // Inside the closed unit disc but off the Gauss point nothing is flagged.
  EXPECT_FALSE(unstably_indifferent(quadratic(), 1, zeta(F, 0, 1)).any());
  EXPECT_FALSE(unstably_indifferent(quadratic(), 2, zeta(F, 1, 2)).any());
  // Type III parameters have no transcendental residues.
  EXPECT_FALSE(unstably_indifferent(quadratic(), 1, zeta(F, 0, RadiusExp(0, mpq_class(1, 2)))).any());
}

TEST(Families, MultiplicityExamples) {
  auto F = Field::create(3);
  auto fam = quadratic();
  for (long e : {-1L, -2L, -3L}) {
    for (int n = 1; n <= 2; ++n) {
      MultiplicityResult r = type1_multiplicity(fam, n, zeta(F, 0, e));
      EXPECT_EQ(r.m, 2) << e << " " << n;
    }
  }
  EXPECT_EQ(type1_multiplicity(fam, 1, zeta(F, 0, -1)).reduced_discriminant, "2*L");
  EXPECT_EQ(type1_multiplicity(fam, 1, pt(F, mpq_class(-1, 9))).m, 1);
  // Off the segment |lambda| > 1, diam < |lambda|: the points split.
  EXPECT_EQ(type1_multiplicity(fam, 1, BerkPoint::disc(PadicScalar(F, mpq_class(-1, 9)), -1)).m, 1);
  const ParamPoint third = zeta(F, 0, 1);
  EXPECT_EQ(type1_multiplicity(fam, 1, third, std::nullopt, false).m, 1);
  EXPECT_EQ(type1_multiplicity(fam, 1, third, std::nullopt, false).reduced_discriminant, "1");
  EXPECT_EQ(code_of([&] { type1_multiplicity(fam, 1, third); }), Errc::NotRepelling);
  EXPECT_EQ(code_of([&] { type1_multiplicity(fam, 3, zeta(F, 0, -1)); }), Errc::FactorDegreeTooLarge);
  // Type III points on the segment: lambda has odd radius power.
  EXPECT_EQ(type1_multiplicity(fam, 1, zeta(F, 0, RadiusExp(0, -1))).m, 2);
  // Segment selection at zeta(0, 1/3): |z| = 1/3 and |z| = 1 split.
  EXPECT_EQ(type1_multiplicity(fam, 1, third, 0, false).m, 1);
}

TEST(Families, ContinuationExamples) {
  auto F = Field::create(3);
  auto fam = quadratic();
  const PadicScalar l0(F, mpq_class(-1, 9));
  const PadicScalar s13 = PadicScalar(F, 13L).sqrt();
  const PadicScalar xi0 = (PadicScalar(F, 3L) + s13) / PadicScalar(F, 6L);
  // z^2 - z + 2/9 = (z - 1/3)(z - 2/3); the root near xi0 is 2/3.
  const PadicScalar l1(F, mpq_class(2, 9));
  const PadicScalar xi1 = continue_periodic_point(fam, 1, l0, xi0, l1);
  EXPECT_TRUE(close(xi1, PadicScalar(F, mpq_class(2, 3)), 50));
  EXPECT_TRUE(close(xi0, PadicScalar(F, mpq_class(2, 3)), 0));
  EXPECT_EQ(continue_periodic_point(fam, 1, l0, xi0, l0), xi0);
  EXPECT_EQ(code_of([&] { continue_periodic_point(fam, 1, l0, xi0, PadicScalar(F, mpq_class(1, 4))); }),
            Errc::MultipleRoot);
  EXPECT_EQ(code_of([&] { continue_periodic_point(fam, 1, l0, xi0, PadicScalar(F, mpq_class(-1, 81))); }),
            Errc::CollisionRadiusExceeded);
  EXPECT_EQ(code_of([&] { continue_periodic_point(fam, 1, l0, PadicScalar(F, 5L), l1); }), Errc::HypothesisFails);
}

TEST(Families, ContinuationConjugacy) {
  auto F = Field::create(3);
  auto fam = quadratic();
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<long> k(0, 40), u(1, 50), s(0, 3);
  int checked = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const mpq_class a(-(1 + 3 * k(rng)), 9);
    // A step of absolute value at most 3 keeps |lambda| = 9.
    mpq_class step(3 * u(rng) + 1, 3);
    for (long j = s(rng); j > 0; --j) step *= 3;
    const mpq_class b = a + step;
    const PadicScalar l0(F, a), l1(F, b);
    for (int n = 1; n <= 2; ++n) {
      for (const auto& r : periodic_points(fam.specialize(F, a), n).points) {
        if (r.point.is_infinity()) continue;
        const PadicScalar x0 = r.point.center();
        const PadicScalar x1 = continue_periodic_point(fam, n, l0, x0, l1);
        const PadicScalar y1 = continue_periodic_point(fam, n, l0, f_at(fam, l0, x0), l1);
        EXPECT_TRUE(close(y1, f_at(fam, l1, x1), 40)) << a.get_str() << " -> " << b.get_str();
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 30);
}

TEST(Families, ScanExamples) {
  auto F = Field::create(3);
  auto fam = quadratic();
  BifurcationReport g = stability_scan(fam, 3, {BerkPoint::gauss(F)});
  ASSERT_EQ(g.rows.size(), 3u);
  for (const auto& r : g.rows) EXPECT_EQ(r.flag, ScanFlag::UnstablyIndifferent) << r.period;

  BifurcationReport seg = stability_scan(fam, 2, {zeta(F, 0, -1), zeta(F, 0, -2)});
  for (const auto& r : seg.rows) {
    EXPECT_EQ(r.flag, ScanFlag::MultiplicityGt1);
    EXPECT_EQ(r.m, 2);
  }

  BifurcationReport t1 = stability_scan(fam, 2, {pt(F, mpq_class(-1, 9)), pt(F, mpq_class(2, 9))});
  for (const auto& r : t1.rows) {
    EXPECT_EQ(r.flag, ScanFlag::Ok);
    EXPECT_EQ(r.m, 1);
    ASSERT_TRUE(r.continuation.has_value());
    EXPECT_EQ(*r.continuation, "2/2");
  }

  auto drop = AnalyticFamily::make(B({L({}), L({1}), L({0, 1})}), B({L({1})}));
  BifurcationReport d = stability_scan(drop, 1, {pt(F, 0), pt(F, 1)});
  EXPECT_EQ(d.rows[0].flag, ScanFlag::DegreeDrop);
  EXPECT_EQ(d.rows[1].flag, ScanFlag::Unsupported);
}

TEST(Families, ScannerSoundness) {
  auto F = Field::create(3);
  auto fam = quadratic();
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> a(-40, 40), e(-3, 3);
  std::vector<ParamPoint> pts;
  std::vector<bool> on_segment;
  for (int i = 0; i < 40; ++i) {
    const long c = a(rng);
    const long r = e(rng);
    const int kind = i % 3;
    if (kind == 0) {
      // A type I point in one of the regions.
      const mpq_class l(c, i % 2 ? 9 : 1);
      pts.push_back(pt(F, l));
      on_segment.push_back(false);
    } else {
      const mpq_class centre(c, kind == 1 ? 1 : 27);
      ParamPoint x = BerkPoint::disc(PadicScalar(F, centre), RadiusExp(r));
      pts.push_back(x);
      // zeta(a, rho) equals zeta(0, rho) exactly when |a| <= rho.
      on_segment.push_back(r <= 0 && x.disc_contains(PadicScalar::zero(F)));
    }
  }
  ScanOptions opt;
  opt.jobs = 4;
  BifurcationReport rep = stability_scan(fam, 2, pts, opt);
  BifurcationReport serial = stability_scan(fam, 2, pts);
  ASSERT_EQ(rep.rows.size(), serial.rows.size());
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const ScanRow& r = rep.rows[i];
    EXPECT_EQ(r.flag, serial.rows[i].flag);
    EXPECT_EQ(r.m, serial.rows[i].m);
    EXPECT_NE(r.flag, ScanFlag::Unsupported) << r.note;
    const bool flagged = r.flag != ScanFlag::Ok;
    EXPECT_EQ(flagged, static_cast<bool>(on_segment[i / 2])) << r.param.str() << " n=" << r.period;
  }
}

TEST(Families, ScanRadiiOutsideTheValueGroup) {
  auto F = Field::create(3);
  auto fam = quadratic();
  BifurcationReport seg = stability_scan(fam, 2, {zeta(F, 0, mpq_class(-1, 2)), zeta(F, 0, mpq_class(-3, 2))});
  for (const auto& r : seg.rows) {
    EXPECT_EQ(r.flag, ScanFlag::MultiplicityGt1) << r.param.str();
    EXPECT_EQ(r.m, 2);
    EXPECT_EQ(r.reduction_poly, "2*L");
  }
  BifurcationReport off = stability_scan(fam, 2, {BerkPoint::disc(PadicScalar(F, mpq_class(1, 9)), mpq_class(-1, 2)),
                                                  zeta(F, 0, mpq_class(1, 2))});
  for (const auto& r : off.rows) EXPECT_EQ(r.flag, ScanFlag::Ok) << r.param.str();
}
