#pragma once

#include <optional>
#include <string>
#include <vector>

#include "berkdyn/berk.hpp"
#include "berkdyn/dynamics.hpp"
#include "berkdyn/poly.hpp"

namespace berkdyn {

/// Parameter points are points of the Berkovich affine line.
using ParamPoint = BerkPoint;

/// lambda -> f_lambda = num(lambda, z) / den(lambda, z) with exact rational
/// coefficients, of z-degree `degree`.
struct AnalyticFamily {
  BiPoly num;
  BiPoly den;
  int degree = 0;

  /// DegenerateMap when den is zero, the z-degree is 0, or num and den share
  /// a factor at every sampled parameter.
  static AnalyticFamily make(BiPoly num, BiPoly den);

  /// den is a nonzero constant and the leading z-coefficient of num is a
  /// nonzero constant.
  bool is_monic_polynomial() const;

  RationalMap specialize(const FieldPtr& f, const mpq_class& lambda) const;
  RationalMap specialize(const PadicScalar& lambda) const;
  /// z-degree of f_lambda0 falls below `degree`, or num and den acquire a
  /// common root there.
  bool degree_drops(const PadicScalar& lambda) const;

  std::string str() const;
};

LambdaPoly lambda_poly(std::vector<mpq_class> coeffs);
/// Coefficientwise image in K[z].
KPoly specialize_poly(const BiPoly& P, const PadicScalar& lambda);
KPoly to_kpoly(const FieldPtr& f, const LambdaPoly& c);
/// "z^2 + (l - 1)*z" style rendering in the variables (outer, l).
std::string to_string(const BiPoly& P, const std::string& outer);

struct PeriodCurveSlice {
  int n = 1;
  /// Y F_n - X G_n dehomogenised, as a polynomial in z over Q[lambda].
  BiPoly phi;
  /// Formal degree d^n + 1.
  int degree = 0;
};

PeriodCurveSlice period_curve(const AnalyticFamily& fam, int n);

/// Exact-period factor Phi*_n: Phi_n divided by Phi*_m for every proper
/// divisor m of n. Unsupported unless the family is a monic polynomial.
BiPoly dynatomic_factor(const AnalyticFamily& fam, int n);

/// Exact quotient in Q[lambda][z] by a divisor with constant leading
/// coefficient; NotIntegral when the remainder is nonzero.
BiPoly exact_divide(const BiPoly& a, const BiPoly& b);

struct MonicSlice {
  /// Polynomial in the chosen chart, before dividing by `lead`.
  BiPoly poly;
  LambdaPoly lead;
  /// Chart z -> 1/z was used.
  bool swapped = false;

  /// The monic polynomial over K at a type I parameter.
  KPoly at(const PadicScalar& lambda) const;
};

/// LeadingCoeffVanishes when both charts have a vanishing leading coefficient.
MonicSlice monic_normalize(const BiPoly& phi, const ParamPoint& x);

/// Characteristic polynomial of multiplication by Q in Q[lambda][z]/(P), for
/// P with constant leading coefficient: prod (w - Q(z_i)) over the roots of P.
BiPoly char_poly(const BiPoly& P, const BiPoly& Q);

/// Discriminant of P in z (P with constant leading coefficient).
LambdaPoly discriminant(const BiPoly& P);

/// M_n(w, lambda): the polynomial in w whose roots are the multipliers
/// (f^n)'(z) at the points of exact period n, each cycle repeated n times.
BiPoly multiplier_polynomial(const AnalyticFamily& fam, int n);

struct MultiplierVerdict {
  /// v(w) over H(x).
  RadiusExp valuation;
  int count = 0;
  bool unstably_indifferent = false;
};

struct IndifferenceReport {
  std::vector<MultiplierVerdict> roots;
  /// Multipliers equal to 0 (superattracting cycles).
  int zero_roots = 0;
  /// Residue polynomial of the |w| = 1 part, in w and L (the reduced
  /// parameter), when one exists.
  std::string reduction;

  bool any() const;
  /// Largest root valuation (the smallest |w|).
  std::optional<RadiusExp> max_valuation() const;
  bool all_repelling() const;
};

IndifferenceReport unstably_indifferent(const BiPoly& multiplier_poly, const ParamPoint& x);
IndifferenceReport unstably_indifferent(const AnalyticFamily& fam, int n, const ParamPoint& x);

struct MultiplicityResult {
  int m = 1;
  /// Reduced discriminant in L when the square test ran.
  std::string reduced_discriminant;
};

/// [H(xi) : H(x)] for the period-n points in the factor picked by `segment`
/// (an index into the Newton polygon of Phi*_n at x, by increasing |z|), or
/// for all of Phi*_n when absent. NotRepelling unless every period-n point is
/// repelling at x (skipped when check_repelling is false).
MultiplicityResult type1_multiplicity(const AnalyticFamily& fam, int n, const ParamPoint& x,
                                      std::optional<int> segment = std::nullopt, bool check_repelling = true);

/// Follows a simple root xi0 of Phi_n(lambda0, .) to lambda1 by Hensel.
PadicScalar continue_periodic_point(const AnalyticFamily& fam, int n, const PadicScalar& lambda0,
                                    const PadicScalar& xi0, const PadicScalar& lambda1);

enum class ScanFlag { Ok, UnstablyIndifferent, MultiplicityGt1, DegreeDrop, Unsupported };
std::string flag_name(ScanFlag f);

struct ScanRow {
  ParamPoint param;
  int period = 1;
  ScanFlag flag = ScanFlag::Ok;
  std::optional<RadiusExp> multiplier_val;
  std::string reduction_poly;
  std::optional<int> m;
  /// Type I points: "k/t" continued periodic points out of those tried.
  std::optional<std::string> continuation;
  std::string note;
};

struct BifurcationReport {
  std::vector<ScanRow> rows;
};

struct ScanOptions {
  int jobs = 1;
  /// Continuation step p^step_exp used at type I points.
  long step_exp = 4;
};

/// Rows in input order: for each point, periods 1..n_max.
BifurcationReport stability_scan(const AnalyticFamily& fam, int n_max, const std::vector<ParamPoint>& points,
                                 const ScanOptions& opt = {});

}  // namespace berkdyn
