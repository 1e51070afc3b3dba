#pragma once

#include <optional>
#include <string>
#include <vector>

#include "berkdyn/berk.hpp"
#include "berkdyn/newton.hpp"
#include "berkdyn/poly.hpp"
#include "berkdyn/residue_poly.hpp"

namespace berkdyn {

using QPoly = Poly<mpq_class>;
using QForm = HomPoly<mpq_class>;
using KForm = HomPoly<PadicScalar>;

/// "z^2 - 1/9" style rendering.
std::string to_string(const QPoly& q, const std::string& var);

/// The n-th iterate [F_n, G_n] of the pair [F, G].
template <class T>
std::pair<HomPoly<T>, HomPoly<T>> iterate_forms(const HomPoly<T>& F, const HomPoly<T>& G, int n, const T& one) {
  if (n < 1) throw Error(Errc::InvalidConfig, "iterate count must be positive");
  HomPoly<T> a = F, b = G;
  for (int i = 1; i < n; ++i) {
    HomPoly<T> na = compose_forms(F, a, b, one);
    HomPoly<T> nb = compose_forms(G, a, b, one);
    a = std::move(na);
    b = std::move(nb);
  }
  return {a, b};
}

/// Y F(X,Y) - X G(X,Y).
template <class T>
HomPoly<T> period_form(const HomPoly<T>& Fn, const HomPoly<T>& Gn) {
  return {Fn.dehom - Gn.dehom.shift_up(1), Fn.degree + 1};
}

/// A rational map [F : G] of degree d >= 1 over the working field, scaled so
/// the largest coefficient has absolute value 1. Maps built from rational
/// input also keep exact forms so that iterates are computed without
/// precision loss.
class RationalMap {
 public:
  /// z -> num(z)/den(z) over Q. DegenerateMap when num and den share a root
  /// or the map is constant.
  static RationalMap from_rational(const FieldPtr& f, const QPoly& num, const QPoly& den);
  /// z -> num(z)/den(z) over K.
  static RationalMap from_k(const FieldPtr& f, const KPoly& num, const KPoly& den);
  static RationalMap from_forms(const FieldPtr& f, KForm F, KForm G);
  /// Forms over Q of a common degree.
  static RationalMap from_exact_forms(const FieldPtr& f, QForm F, QForm G);

  const FieldPtr& field() const { return f_; }
  int degree() const { return F_.degree; }
  const KForm& F() const { return F_; }
  const KForm& G() const { return G_; }
  bool is_exact() const { return exact_.has_value(); }
  const std::optional<std::pair<QForm, QForm>>& exact() const { return exact_; }

  /// f o g.
  RationalMap compose(const RationalMap& g) const;
  RationalMap iterate(int n) const;

  std::string str() const;

 private:
  FieldPtr f_;
  KForm F_, G_;
  std::optional<std::pair<QForm, QForm>> exact_;
};

/// f(x) for a type I point (including infinity).
BerkPoint evaluate(const RationalMap& f, const BerkPoint& x);

/// Image of any point; disc points use image_of_point on the affine chart.
BerkPoint push_disc_point(const RationalMap& f, const BerkPoint& xi);

struct ReducedMap {
  /// Reduced forms after cancelling their common factor (dehomogenised).
  ResiduePoly num;
  ResiduePoly den;
  int degree = 0;
  /// Reduction has degree >= 1.
  bool nonconstant = false;
  /// push_disc_point(f, zeta(0,1)) == zeta(0,1), reported for comparison.
  bool gauss_fixed = false;

  std::string str() const;
};

ReducedMap reduction_at_gauss(const RationalMap& f);

enum class PointClass { Attracting, Indifferent, Repelling };
std::string class_name(PointClass c);

struct LocalDegree {
  int degree = 0;
  PointClass cls = PointClass::Indifferent;
};

/// Multiplicity of f at a fixed point of type II (by conjugating it to the
/// Gauss point) or type III (from the slope of the radius map). NotFixed
/// when f(xi) != xi.
LocalDegree local_degree(const RationalMap& f, const BerkPoint& xi);

/// Phi_{f,n} = Y F_n - X G_n, exact when the map is.
KForm period_polynomial(const RationalMap& f, int n);

struct PeriodicPointRecord {
  BerkPoint point;
  int period = 1;
  /// (f^n)'(x) in the chart at x; absent for type II/III records.
  std::optional<PadicScalar> multiplier;
  AbsVal multiplier_abs = AbsVal::zero();
  PointClass cls = PointClass::Indifferent;
  /// Type II/III records only.
  int local_degree = 0;
  int multiplicity = 1;
  bool certified = false;
};

struct PeriodicSolve {
  std::vector<PeriodicPointRecord> points;
  /// Roots of Phi that the working field does not contain.
  std::vector<UnsolvedCluster> unsolved;
};

struct PeriodicOptions {
  int max_period = 4;
  /// Raise IrreducibleFactorTooLarge instead of reporting clusters of degree >= 3.
  bool strict = false;
};

/// Every type I point of period dividing n, each tagged with its exact period,
/// multiplier and class.
PeriodicSolve periodic_points(const RationalMap& f, int n, const PeriodicOptions& opt = {});

/// (f^n)'(x) along the orbit of a periodic point, with chart changes at infinity.
PadicScalar cycle_multiplier(const RationalMap& f, const BerkPoint& x, int n);

PointClass classify_multiplier(const AbsVal& m);

/// Point of z^2 + lambda0 with itinerary word word word ... under the
/// branches z -> s sqrt(-lambda0) sqrt(1 - z/lambda0), s = + for '0' and - for '1'.
PadicScalar cantor_coding(const PadicScalar& lambda0, const std::string& word);

}  // namespace berkdyn
