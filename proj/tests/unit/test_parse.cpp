#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <sstream>

#include "berkdyn/error.hpp"
#include "berkdyn/parse.hpp"

using namespace berkdyn;

namespace {

std::size_t parse_pos(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.position();
  }
  return std::string::npos;
}

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Unsupported;
}

/// num/den evaluated at rational (z, l).
mpq_class at(const RationalExpr& e, const mpq_class& z, const mpq_class& l) {
  auto ev = [&](const BiPoly& P) {
    mpq_class acc = 0;
    for (std::size_t i = P.coeffs().size(); i-- > 0;) {
      mpq_class c = 0;
      const auto& inner = P.coeffs()[i].coeffs();
      for (std::size_t j = inner.size(); j-- > 0;) c = c * l + inner[j];
      acc = acc * z + c;
    }
    return acc;
  };
  return ev(e.num) / ev(e.den);
}

}  // namespace

TEST(Parse, Expressions) {
  RationalExpr e = parse_expression("z^2 - 1/9");
  EXPECT_TRUE(e.uses_z);
  EXPECT_FALSE(e.uses_lambda);
  EXPECT_EQ(at(e, 2, 0), mpq_class(35, 9));

  e = parse_expression("(z^2 + l)/2");
  EXPECT_TRUE(e.uses_lambda);
  EXPECT_EQ(at(e, 3, 5), 7);

  e = parse_expression("z^-2 + z^(-1)");
  EXPECT_EQ(at(e, 2, 0), mpq_class(3, 4));

  e = parse_expression("-(z - 1)^3*lambda - -2");
  EXPECT_EQ(at(e, 3, 2), -14);

  e = parse_expression("1 - 2*3/4 + 2^3/ (1 + 1)");
  EXPECT_FALSE(e.uses_z);
  EXPECT_EQ(at(e, 0, 0), mpq_class(7, 2));
}

TEST(Parse, ErrorsCarryPositions) {
  EXPECT_EQ(parse_pos([] { parse_expression("z^2 +"); }), 5u);
  EXPECT_EQ(parse_pos([] { parse_expression("2*w"); }), 2u);
  EXPECT_EQ(parse_pos([] { parse_expression("z ^ x"); }), 4u);
  EXPECT_EQ(parse_pos([] { parse_expression("1/0"); }), 1u);
  EXPECT_EQ(parse_pos([] { parse_expression("(z + 1"); }), 6u);
  EXPECT_EQ(parse_pos([] { parse_expression("z)"); }), 1u);
  EXPECT_EQ(parse_pos([] { parse_expression(""); }), 0u);

  auto F = Field::create(3);
  EXPECT_EQ(parse_pos([&] { parse_map(F, "z^2 + l"); }), 0u);
  EXPECT_NE(parse_pos([&] { parse_point(F, "zeta(0, 2)"); }), std::string::npos);
  EXPECT_NE(parse_pos([&] { parse_point(F, "zeta(0)"); }), std::string::npos);
  EXPECT_NE(parse_pos([&] { parse_point(F, "zeta(0, p^-(x))"); }), std::string::npos);
  EXPECT_NE(parse_pos([&] { parse_scalar(F, "padic(0,15)"); }), std::string::npos);
  EXPECT_NE(parse_pos([&] { parse_scalar(F, "1 + sqrt(2)"); }), std::string::npos);
  EXPECT_NE(parse_pos([&] { parse_scalar(F, "z"); }), std::string::npos);
}

TEST(Parse, MapsAndFamilies) {
  auto F = Field::create(3);
  EXPECT_EQ(parse_map(F, "(z^3 - z)/(z^2 - 1)").degree(), 1);
  EXPECT_EQ(parse_map(F, "z^2 - 1/9").str(), "z^2 - 1/9");
  EXPECT_EQ(parse_map(F, "1/z^2").degree(), 2);
  EXPECT_EQ(code_of([&] { parse_map(F, "(z - 1)/(z - 1)"); }), Errc::DegenerateMap);

  AnalyticFamily fam = parse_family("(z^2 + 2*l)/2");
  EXPECT_TRUE(fam.is_monic_polynomial());
  EXPECT_EQ(fam.degree, 2);
  EXPECT_EQ(fam.str(), parse_family("z^2/2 + l").str());
  EXPECT_FALSE(parse_family("l*z^2 + 1/z").is_monic_polynomial());
}

TEST(Parse, ScalarLiterals) {
  auto F = Field::create(3, 20);
  EXPECT_TRUE(parse_scalar(F, "-1/9").equals_to_precision(PadicScalar(F, mpq_class(-1, 9))));
  PadicScalar x = parse_scalar(F, "padic(2,1021)");
  EXPECT_EQ(x.valuation(), 2);
  EXPECT_TRUE(x.equals_to_precision(PadicScalar(F, 9L * 34)));
  EXPECT_TRUE(parse_scalar(F, "-padic(0,1)").equals_to_precision(PadicScalar(F, -1L)));
  PadicScalar o = parse_scalar(F, "O(p^7)");
  EXPECT_TRUE(o.is_zero_to_precision());
  EXPECT_EQ(o.absolute_precision_units(), 7);

  auto U = Field::create(3, 20, 2);
  PadicScalar s = parse_scalar(U, "1/2 + 3*sqrt(2)");
  EXPECT_TRUE(s.equals_to_precision(PadicScalar(U, mpq_class(1, 2)) + PadicScalar(U, 3L) * PadicScalar::alpha(U)));
  EXPECT_TRUE(parse_scalar(U, "sqrt(2)").equals_to_precision(PadicScalar::alpha(U)));
}

TEST(Parse, PointLiterals) {
  auto F = Field::create(3);
  PadicScalar zero(F, 0L);
  EXPECT_TRUE(parse_point(F, "inf").is_infinity());
  EXPECT_TRUE(parse_point(F, " infinity ").is_infinity());
  EXPECT_EQ(parse_point(F, "zeta(0, 1)"), BerkPoint::gauss(F));
  EXPECT_EQ(parse_point(F, "zeta(0,3)"), BerkPoint::disc(zero, RadiusExp(-1)));
  EXPECT_EQ(parse_point(F, "zeta(0, 1/9)"), BerkPoint::disc(zero, RadiusExp(2)));
  EXPECT_EQ(parse_point(F, "zeta(0, p^2)"), BerkPoint::disc(zero, RadiusExp(-2)));
  EXPECT_EQ(parse_point(F, "zeta(0, p^-2)"), BerkPoint::disc(zero, RadiusExp(2)));
  EXPECT_EQ(parse_point(F, "zeta(0, p^(3/2))"), BerkPoint::disc(zero, RadiusExp(mpq_class(-3, 2))));
  BerkPoint t3 = parse_point(F, "zeta(1/3, p^-(1/2 + 1/3*sqrt2))");
  EXPECT_TRUE(t3.is_type3());
  EXPECT_EQ(t3.rexp(), RadiusExp(mpq_class(1, 2), mpq_class(1, 3)));
  // The centre only matters up to the radius.
  EXPECT_EQ(parse_point(F, "zeta(9, 1/3)"), parse_point(F, "zeta(0, 1/3)"));

  std::istringstream in("# header\n0\n\n  zeta(0,3)  # segment\ninf\n");
  EXPECT_EQ(parse_points(F, in).size(), 3u);
}

TEST(Parse, PrintedPointsRoundTrip) {
  std::mt19937_64 rng(41);
  std::vector<FieldPtr> fields = {Field::create(3), Field::create(5, 30), Field::create(3, 30, 2),
                                  Field::create(3, 30, 3)};
  int checked = 0;
  for (const auto& F : fields) {
    std::uniform_int_distribution<long> num(-200, 200), den(1, 60), ex(-4, 4);
    for (int i = 0; i < 60; ++i) {
      PadicScalar a(F, mpq_class(num(rng), den(rng)));
      switch (i % 5) {
        case 1:
          a = a * PadicScalar(F, 31L).sqrt().shift(ex(rng));
          break;
        case 2:
          if (F->ext() != ExtKind::None) a = a + PadicScalar(F, mpq_class(num(rng), den(rng))) * PadicScalar::alpha(F);
          break;
        case 3:
          a = a + PadicScalar::zero_to(F, 10);
          break;
        default:
          break;
      }
      std::vector<BerkPoint> pts = {BerkPoint::type1(a), BerkPoint::disc(a, RadiusExp(ex(rng))),
                                    BerkPoint::disc(a, RadiusExp(mpq_class(ex(rng), 3), mpq_class(ex(rng) | 1, 5))),
                                    BerkPoint::infinity()};
      if (F->e() == 2) pts.push_back(BerkPoint::disc(a, RadiusExp(mpq_class(ex(rng), 2))));
      for (const auto& x : pts) {
        BerkPoint y = parse_point(F, x.str());
        EXPECT_EQ(y, x) << x.str();
        EXPECT_EQ(y.str(), x.str());
        ++checked;
      }
    }
  }
  EXPECT_GE(checked, 900);
}
