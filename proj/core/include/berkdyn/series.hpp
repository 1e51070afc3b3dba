#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "berkdyn/berk.hpp"
#include "berkdyn/residue_poly.hpp"

namespace berkdyn {

/// psi(z) = sum_k b_k (z - a)^k on the open annulus r < |z - a| < s,
/// with r = p^-r_exp and s = p^-s_exp.
struct LaurentSegment {
  PadicScalar center;
  std::map<int, PadicScalar> coeffs;
  RadiusExp r_exp;
  RadiusExp s_exp;

  /// Validates r < s and drops exact-zero coefficients.
  static LaurentSegment make(PadicScalar center, std::map<int, PadicScalar> coeffs, RadiusExp r_exp,
                             RadiusExp s_exp);
  bool is_zero() const;
  /// The same series with b_0 removed.
  LaurentSegment without_constant() const;
  PadicScalar constant_term() const;
};

int inner_wdeg(const LaurentSegment& psi);
int outer_wdeg(const LaurentSegment& psi);
/// Zeros of psi on the open annulus: outer_wdeg - inner_wdeg.
int zero_count(const LaurentSegment& psi);
/// The same count read off the Newton polygon of z^m psi.
int newton_zero_count(const LaurentSegment& psi);

/// Image of zeta(a, t) for r <= t <= s: zeta(b_0, |b_N| t^N), where N is the
/// unique dominant nonzero index at t. DegreesSplit on a tie.
BerkPoint push_annulus_skeleton(const LaurentSegment& psi, const RadiusExp& t);

struct ScalingWitness {
  int degree = 0;
  /// d_H(psi(zeta_r), psi(zeta_s)).
  RadiusExp image_distance;
  /// |N| d_H(zeta_r, zeta_s).
  RadiusExp scaled_distance;
  bool equal = false;
};

/// Checks d_H(psi(zeta_r), psi(zeta_s)) = |N| d_H(zeta_r, zeta_s) when psi - b_0
/// has a single Weierstrass degree N on the annulus; HypothesisFails otherwise.
ScalingWitness scaling_check(const LaurentSegment& psi);

/// P/Q over K with Q nonzero.
struct RationalFunction {
  KPoly num;
  KPoly den;

  static RationalFunction from_laurent(const LaurentSegment& psi);
  static RationalFunction constant(const PadicScalar& c);
  /// |psi|_x = |P|_x / |Q|_x.
  AbsVal abs_at(const BerkPoint& x) const;
  RationalFunction operator-(const RationalFunction& o) const;
};

/// Image of a point under z -> F(z)/G(z), computed from the seminorms
/// |F - cG|_xi minimised over c.
BerkPoint image_of_point(const KPoly& F, const KPoly& G, const BerkPoint& xi);

/// U = D(0, 1/r) minus the closed discs D(a_i, r), with r < 1 and the a_i in
/// distinct residue classes of the closed unit disc.
struct BasicOpenSet {
  FieldPtr field;
  RadiusExp r_exp;
  std::vector<PadicScalar> arms;

  void validate() const;
  bool contains(const BerkPoint& x) const;
  /// Arm boundaries zeta(a_i, r) followed by the outer boundary zeta(0, 1/r).
  std::vector<BerkPoint> boundary() const;
};

/// Number of roots of a polynomial lying in U (with multiplicity).
int zeros_in(const KPoly& poly, const BasicOpenSet& U);

enum class RangeShape { OnSegment, OffSegment };

struct DirectionDegree {
  /// Residue class of the arm, or nullopt for the direction to infinity.
  std::optional<ResidueElem> direction;
  int weierstrass_degree = 0;
  int reduction_order = 0;
};

struct BasicOpenReport {
  std::vector<BerkPoint> boundary_points;
  std::vector<BerkPoint> boundary_images;
  std::vector<AbsVal> boundary_abs;
  BerkPoint gauss_image;
  AbsVal gauss_abs = AbsVal::zero();
  ResiduePoly reduction_num;
  ResiduePoly reduction_den;
  int reduction_degree = 0;
  AbsVal bound = AbsVal::zero();
  RangeShape range = RangeShape::OffSegment;
  std::vector<DirectionDegree> directions;
  bool degrees_consistent = false;
  bool bound_holds = false;
};

/// Boundary values, reduction degree, range dichotomy and the bound
/// R = |psi(zeta(0,1))| r^-d for a zero-free psi on U. HasZeros otherwise.
BasicOpenReport basic_open_analysis(const RationalFunction& psi, const BasicOpenSet& U);

struct RatioWitness {
  AbsVal t1 = AbsVal::zero();
  AbsVal t2 = AbsVal::zero();
  AbsVal r0 = AbsVal::zero();
  AbsVal ratio = AbsVal::zero();
  int probes = 0;
  bool holds = false;
  std::vector<BerkPoint> failures;
};

/// Verifies the hypotheses of the ratio lemma for psi1, psi2 at x0 and checks
/// |psi2(x)|/|psi1(x)| = t2/t1 on arm endpoints, the Gauss point and 50
/// seeded disc points of U. HypothesisFails names the violated clause.
RatioWitness injectivity_ratio_check(const RationalFunction& psi1, const RationalFunction& psi2,
                                     const BasicOpenSet& U, const BerkPoint& x0);

}  // namespace berkdyn
