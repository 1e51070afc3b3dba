#pragma once

#include <optional>
#include <string>
#include <vector>

#include "berkdyn/exponent.hpp"
#include "berkdyn/padic.hpp"

namespace berkdyn {

/// A point of the Berkovich projective line: a type I point, the point
/// zeta(a, r) of a closed disc (type II when r is in p^Q, type III
/// otherwise), or infinity.
class BerkPoint {
 public:
  enum class Kind { TypeI, Disc, Infinity };

  static BerkPoint type1(PadicScalar a);
  static BerkPoint disc(PadicScalar center, RadiusExp rexp);
  static BerkPoint infinity();
  /// zeta(0, 1).
  static BerkPoint gauss(const FieldPtr& f);

  Kind kind() const { return kind_; }
  bool is_type1() const { return kind_ == Kind::TypeI; }
  bool is_disc() const { return kind_ == Kind::Disc; }
  bool is_infinity() const { return kind_ == Kind::Infinity; }
  bool is_type2() const { return kind_ == Kind::Disc && rexp_.is_rational(); }
  bool is_type3() const { return kind_ == Kind::Disc && !rexp_.is_rational(); }
  /// 1, 2 or 3 (infinity is a type I point).
  int type() const;

  /// The coordinate of a type I point or the centre of a disc point.
  const PadicScalar& center() const { return center_; }
  const RadiusExp& rexp() const { return rexp_; }
  AbsVal radius() const;
  FieldPtr field() const { return center_.field(); }

  /// For disc points: |x - a| <= r.
  bool disc_contains(const PadicScalar& x) const;
  /// For disc points: the closed disc of `other` lies in this one.
  bool disc_contains(const BerkPoint& other) const;

  friend bool operator==(const BerkPoint& x, const BerkPoint& y);

  std::string str() const;

 private:
  Kind kind_ = Kind::Infinity;
  PadicScalar center_;
  RadiusExp rexp_;
};

/// |x - y| with a value that vanishes to precision treated as 0.
AbsVal abs_diff(const PadicScalar& x, const PadicScalar& y);

/// Diameter: zero for type I, the radius for disc points.
AbsVal diam(const BerkPoint& xi);

/// Hyperbolic distance between disc points, in units of log p.
RadiusExp hyperbolic_distance(const BerkPoint& x, const BerkPoint& y);

/// max_k |c_k| r^k for coefficients written in powers of (z - center).
AbsVal gauss_seminorm(const std::vector<PadicScalar>& coeffs_about_center, const BerkPoint& xi);
/// |P|_xi for P written in powers of z: Taylor shift then gauss_seminorm.
/// At a type I point this is |P(a)|.
AbsVal seminorm(const KPoly& poly, const BerkPoint& xi);

/// Some sigma in K with |sigma| = r; Unsupported when r is not in |K^x|.
PadicScalar scale_element(const FieldPtr& f, const RadiusExp& rexp);

struct TangentDir {
  BerkPoint base;
  /// Residue class of (target - a)/sigma, or nullopt for the direction to infinity.
  std::optional<ResidueElem> direction;

  bool is_infinity() const { return !direction.has_value(); }
  std::string str() const;
  friend bool operator==(const TangentDir& x, const TangentDir& y) {
    return x.base == y.base && x.direction == y.direction;
  }
};

TangentDir tangent_direction(const BerkPoint& xi, const BerkPoint& target);

struct ChainDisc {
  PadicScalar center;
  /// The real radius, a positive rational.
  mpq_class radius;
};

struct NestedLimit {
  BerkPoint limit;
  /// t_j = min{ tau : limit lies in the closed disc about center_j of radius tau }.
  std::vector<AbsVal> t;
  /// Estimated lim r_j.
  mpq_class diameter;
  /// Sampled convergence conditions: tail centres within the limit disc and t_j -> diameter.
  bool conditions_hold = false;
};

/// Limit of a nested chain of closed discs, using exact Aitken extrapolation
/// of the radii.
NestedLimit nested_disc_limit(const std::vector<ChainDisc>& chain);

}  // namespace berkdyn
