#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "berkdyn/error.hpp"
#include "berkdyn/newton.hpp"

using namespace berkdyn;

namespace {

KPoly from_roots(const FieldPtr& F, const std::vector<mpq_class>& roots) {
  KPoly p = KPoly::constant(PadicScalar::one(F));
  for (const auto& r : roots) {
    p = p * KPoly(std::vector<PadicScalar>{PadicScalar(F, mpq_class(-r)), PadicScalar::one(F)});
  }
  return p;
}

KPoly from_ints(const FieldPtr& F, const std::vector<long>& c) {
  std::vector<PadicScalar> v;
  for (long x : c) v.emplace_back(F, x);
  return KPoly(std::move(v));
}

std::vector<mpq_class> rational_roots(const RootSet& rs) {
  std::vector<mpq_class> out;
  for (const auto& r : rs.roots) {
    auto q = r.value.to_rational();
    EXPECT_TRUE(q.has_value()) << r.value.str();
    for (int m = 0; m < r.multiplicity; ++m) out.push_back(q.value_or(0));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(NewtonPolygon, SlopesFromValuations) {
  auto F = Field::create(3);
  // 1 + 3z + 27z^2 + z^3 : points (0,0), (1,1), (2,3), (3,0)
  NewtonPolygon np = newton_polygon(from_ints(F, {1, 3, 27, 1}));
  ASSERT_EQ(np.segments.size(), 1u);
  EXPECT_EQ(np.segments[0].slope, RadiusExp(0));
  EXPECT_EQ(np.segments[0].length, 3);

  // 27 + z + 9 z^2: (0,3), (1,0), (2,2) -> slopes -3 and 2.
  NewtonPolygon np2 = newton_polygon(from_ints(F, {27, 1, 9}));
  ASSERT_EQ(np2.segments.size(), 2u);
  EXPECT_EQ(np2.segments[0].slope, RadiusExp(-3));
  EXPECT_EQ(np2.segments[1].slope, RadiusExp(2));
  auto rv = np2.root_valuations();
  EXPECT_EQ(rv[0].first, RadiusExp(-2));
  EXPECT_EQ(rv[1].first, RadiusExp(3));
}

TEST(NewtonPolygon, FractionalSlope) {
  auto F = Field::create(5);
  // z^2 - 5 : slope 1/2.
  NewtonPolygon np = newton_polygon(from_ints(F, {-5, 0, 1}));
  ASSERT_EQ(np.segments.size(), 1u);
  EXPECT_EQ(np.segments[0].slope, RadiusExp(mpq_class(-1, 2)));
  EXPECT_EQ(np.segments[0].length, 2);
}

TEST(NewtonPolygon, PointsWithIrrationalExponents) {
  std::vector<std::optional<RadiusExp>> pts = {RadiusExp(0, 1), std::nullopt, RadiusExp(0)};
  NewtonPolygon np = newton_polygon_points(pts);
  ASSERT_EQ(np.segments.size(), 1u);
  EXPECT_EQ(np.segments[0].slope, RadiusExp(0, mpq_class(-1, 2)));
}

TEST(FindRoots, RecoversRationalRoots) {
  auto F = Field::create(3);
  std::vector<mpq_class> roots = {mpq_class(1), mpq_class(2), mpq_class(1, 3), mpq_class(9), mpq_class(-5, 4)};
  for (auto& r : roots) r.canonicalize();
  RootSet rs = find_roots(from_roots(F, roots));
  EXPECT_TRUE(rs.unsolved.empty());
  std::sort(roots.begin(), roots.end());
  EXPECT_EQ(rational_roots(rs), roots);
  for (const auto& r : rs.roots) EXPECT_TRUE(r.certified);
}

TEST(FindRoots, ClusteredRootsSeparate) {
  auto F = Field::create(3);
  // 1 and 1 + 3^6 agree to six digits; 10 is 1 mod 9.
  std::vector<mpq_class> roots = {mpq_class(1), mpq_class(1 + 729), mpq_class(10), mpq_class(4)};
  RootSet rs = find_roots(from_roots(F, roots));
  EXPECT_TRUE(rs.unsolved.empty());
  std::sort(roots.begin(), roots.end());
  EXPECT_EQ(rational_roots(rs), roots);
}

TEST(FindRoots, RepeatedRootAndZero) {
  auto F = Field::create(5);
  RootSet rs = find_roots(from_roots(F, {mpq_class(0), mpq_class(0), mpq_class(2), mpq_class(2)}));
  EXPECT_EQ(rs.located_count(), 4);
  bool saw_double_two = false;
  for (const auto& r : rs.roots) {
    if (r.multiplicity == 2 && !r.value.is_exact_zero()) saw_double_two = r.value.equals_to_precision(PadicScalar(F, 2L));
  }
  EXPECT_TRUE(saw_double_two);
}

TEST(FindRoots, IrreducibleFactorsAreUnsolved) {
  auto F = Field::create(3);
  // z^2 - 2 has no root in Q_3; z^2 - 3 is ramified.
  RootSet a = find_roots(from_ints(F, {-2, 0, 1}));
  EXPECT_TRUE(a.roots.empty());
  ASSERT_EQ(a.unsolved.size(), 1u);
  EXPECT_EQ(a.unsolved[0].degree, 2);
  EXPECT_EQ(a.unsolved[0].valuation, 0);
  RootSet b = find_roots(from_ints(F, {-3, 0, 1}));
  ASSERT_EQ(b.unsolved.size(), 1u);
  EXPECT_EQ(b.unsolved[0].valuation, mpq_class(1, 2));
}

TEST(FindRoots, ExtensionsProvideMissingRoots) {
  auto U = Field::create(3, 40, 2);
  RootSet a = find_roots(from_ints(U, {-2, 0, 1}));
  EXPECT_EQ(a.located_count(), 2);
  for (const auto& r : a.roots) EXPECT_TRUE((r.value * r.value).equals_to_precision(PadicScalar(U, 2L)));
  auto R = Field::create(3, 40, 3);
  RootSet b = find_roots(from_ints(R, {-3, 0, 1}));
  EXPECT_EQ(b.located_count(), 2);
  for (const auto& r : b.roots) EXPECT_EQ(r.value.valuation(), mpq_class(1, 2));
}

TEST(FindRoots, RandomProductsProperty) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> num(-60, 60);
  std::uniform_int_distribution<long> den(1, 6);
  for (long p : {3L, 5L, 7L}) {
    auto F = Field::create(p, 40);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<mpq_class> roots;
      for (int k = 0; k < 4; ++k) {
        mpq_class r(num(rng), den(rng));
        r.canonicalize();
        roots.push_back(r);
      }
      std::sort(roots.begin(), roots.end());
      roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
      RootSet rs = find_roots(from_roots(F, roots));
      EXPECT_TRUE(rs.unsolved.empty());
      EXPECT_EQ(rational_roots(rs), roots);
    }
  }
}

TEST(HenselRoots, FiltersByValuation) {
  auto F = Field::create(3);
  KPoly p = from_roots(F, {mpq_class(2), mpq_class(3), mpq_class(6), mpq_class(1, 9)});
  auto v1 = hensel_roots(p, 1);
  EXPECT_EQ(v1.size(), 2u);
  auto vm2 = hensel_roots(p, -2);
  ASSERT_EQ(vm2.size(), 1u);
  EXPECT_EQ(vm2[0].to_rational(), mpq_class(1, 9));
  try {
    hensel_roots(p, 5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NoRootsInField);
  }
  try {
    hensel_roots(from_roots(F, {mpq_class(2), mpq_class(2)}), 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotSquarefree);
  }
}
