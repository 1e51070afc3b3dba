#include "berkdyn/berk.hpp"

#include <algorithm>

#include "berkdyn/error.hpp"

namespace berkdyn {

namespace {

/// |x| <= r for |x| = p^-v with rational v, r a positive rational.
bool abs_le(const AbsVal& x, const mpq_class& r, long p) {
  if (x.is_zero()) return true;
  const mpq_class& v = x.exp().a();
  // p^-v <= r  <=>  p^(-v*den) <= r^den with den the denominator of v.
  const mpz_class& den = v.get_den();
  const unsigned long k = den.get_ui();
  mpz_class num = v.get_num();
  mpq_class lhs;
  mpz_class pw;
  mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p), mpz_class(abs(num)).get_ui());
  lhs = num >= 0 ? mpq_class(1, pw) : mpq_class(pw);
  lhs.canonicalize();
  mpq_class rhs = 1;
  for (unsigned long i = 0; i < k; ++i) rhs *= r;
  return lhs <= rhs;
}

/// m with r = p^m, if r is an integral power of p.
std::optional<long> log_p_exact(const mpq_class& r, long p) {
  if (r <= 0) return std::nullopt;
  auto power_of = [p](mpz_class n) -> std::optional<long> {
    long k = 0;
    while (n > 1) {
      if (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p)) == 0) return std::nullopt;
      n /= p;
      ++k;
    }
    return k;
  };
  if (r.get_num() == 1) {
    auto k = power_of(r.get_den());
    if (k) return -*k;
    return std::nullopt;
  }
  if (r.get_den() == 1) return power_of(r.get_num());
  return std::nullopt;
}

std::string radius_literal(const RadiusExp& e) {
  if (e.is_rational() && e.a().get_den() == 1) {
    if (e.a() >= 0) return "p^-" + e.a().get_str();
    return "p^" + mpz_class(-e.a().get_num()).get_str();
  }
  return "p^-(" + e.str() + ")";
}

}  // namespace

BerkPoint BerkPoint::type1(PadicScalar a) {
  BerkPoint x;
  x.kind_ = Kind::TypeI;
  x.center_ = std::move(a);
  return x;
}

BerkPoint BerkPoint::disc(PadicScalar center, RadiusExp rexp) {
  BerkPoint x;
  x.kind_ = Kind::Disc;
  x.center_ = std::move(center);
  x.rexp_ = std::move(rexp);
  return x;
}

BerkPoint BerkPoint::infinity() { return BerkPoint(); }

BerkPoint BerkPoint::gauss(const FieldPtr& f) { return disc(PadicScalar::zero(f), RadiusExp(0)); }

int BerkPoint::type() const {
  if (kind_ != Kind::Disc) return 1;
  return rexp_.is_rational() ? 2 : 3;
}

AbsVal BerkPoint::radius() const {
  if (kind_ == Kind::Infinity) throw Error(Errc::InfinityHasNoDiameter, "infinity has no radius");
  if (kind_ == Kind::TypeI) return AbsVal::zero();
  return AbsVal::from_exp(rexp_);
}

bool BerkPoint::disc_contains(const PadicScalar& x) const {
  if (kind_ != Kind::Disc) throw Error(Errc::Unsupported, "containment needs a disc point");
  return abs_diff(x, center_) <= radius();
}

bool BerkPoint::disc_contains(const BerkPoint& other) const {
  if (other.is_infinity()) return false;
  return other.radius() <= radius() && disc_contains(other.center());
}

bool operator==(const BerkPoint& x, const BerkPoint& y) {
  if (x.kind_ != y.kind_) return false;
  switch (x.kind_) {
    case BerkPoint::Kind::Infinity: return true;
    case BerkPoint::Kind::TypeI: return x.center_.equals_to_precision(y.center_);
    case BerkPoint::Kind::Disc: return x.rexp_ == y.rexp_ && x.disc_contains(y.center_);
  }
  return false;
}

std::string BerkPoint::str() const {
  switch (kind_) {
    case Kind::Infinity: return "inf";
    case Kind::TypeI: return center_.str();
    case Kind::Disc: return "zeta(" + center_.str() + ", " + radius_literal(rexp_) + ")";
  }
  return "?";
}

AbsVal abs_diff(const PadicScalar& x, const PadicScalar& y) {
  PadicScalar d = x - y;
  if (d.is_exact_zero() || d.is_zero_to_precision()) return AbsVal::zero();
  return d.abs();
}

AbsVal diam(const BerkPoint& xi) { return xi.radius(); }

RadiusExp hyperbolic_distance(const BerkPoint& x, const BerkPoint& y) {
  if (!x.is_disc() || !y.is_disc()) {
    throw Error(Errc::TypeIPoint, "hyperbolic distance to a type I point is infinite");
  }
  RadiusExp m = min(x.rexp(), y.rexp());
  AbsVal ab = abs_diff(x.center(), y.center());
  if (!ab.is_zero()) m = min(m, ab.exp());
  return x.rexp() + y.rexp() - m * mpq_class(2);
}

AbsVal gauss_seminorm(const std::vector<PadicScalar>& coeffs, const BerkPoint& xi) {
  if (xi.is_infinity()) throw Error(Errc::InfinityHasNoDiameter, "seminorm at infinity");
  AbsVal best = AbsVal::zero();
  if (xi.is_type1()) {
    if (coeffs.empty() || coeffs[0].is_exact_zero() || coeffs[0].is_zero_to_precision()) return best;
    return coeffs[0].abs();
  }
  const AbsVal r = xi.radius();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const PadicScalar& c = coeffs[k];
    if (c.is_exact_zero() || c.is_zero_to_precision()) continue;
    best = max(best, c.abs() * r.pow(static_cast<long>(k)));
  }
  return best;
}

AbsVal seminorm(const KPoly& poly, const BerkPoint& xi) {
  if (xi.is_infinity()) throw Error(Errc::InfinityHasNoDiameter, "seminorm at infinity");
  if (poly.is_zero()) return AbsVal::zero();
  const KPoly shifted = xi.center().is_exact_zero() ? poly : poly.taylor_shift(xi.center());
  return gauss_seminorm(shifted.coeffs(), xi);
}

PadicScalar scale_element(const FieldPtr& f, const RadiusExp& rexp) {
  if (!rexp.is_rational()) throw Error(Errc::Unsupported, "type III radius has no scaling element");
  mpq_class k = rexp.a() * f->e();
  if (k.get_den() != 1) {
    throw Error(Errc::Unsupported, "radius p^-(" + rexp.str() + ") is not an absolute value of the working field");
  }
  return PadicScalar::pi_pow(f, k.get_num().get_si());
}

std::string TangentDir::str() const {
  return direction ? direction->str() : std::string("inf");
}

TangentDir tangent_direction(const BerkPoint& xi, const BerkPoint& target) {
  if (!xi.is_type2()) throw Error(Errc::Unsupported, "tangent directions are indexed at type II points");
  if (xi == target) throw Error(Errc::SamePoint, "target equals the base point");
  TangentDir out{xi, std::nullopt};
  if (target.is_infinity()) return out;
  if (!xi.disc_contains(target.center())) return out;
  if (target.is_disc() && target.radius() >= xi.radius()) return out;
  const PadicScalar sigma = scale_element(xi.field(), xi.rexp());
  out.direction = ((target.center() - xi.center()) / sigma).reduce();
  return out;
}

NestedLimit nested_disc_limit(const std::vector<ChainDisc>& chain) {
  if (chain.empty()) throw Error(Errc::NotNested, "empty disc chain");
  const FieldPtr f = chain.front().center.field();
  const long p = f->p();
  for (std::size_t j = 0; j < chain.size(); ++j) {
    if (chain[j].radius <= 0) throw Error(Errc::NotNested, "radii must be positive");
    if (j == 0) continue;
    if (chain[j].radius > chain[j - 1].radius) throw Error(Errc::NotNested, "radii increase at index " + std::to_string(j));
    if (!abs_le(abs_diff(chain[j].center, chain[j - 1].center), chain[j - 1].radius, p)) {
      throw Error(Errc::NotNested, "disc " + std::to_string(j) + " leaves its predecessor");
    }
  }
  const std::size_t n = chain.size();
  mpq_class limit = chain.back().radius;
  if (n >= 3) {
    const mpq_class& r0 = chain[n - 3].radius;
    const mpq_class& r1 = chain[n - 2].radius;
    const mpq_class& r2 = chain[n - 1].radius;
    mpq_class den = r2 - 2 * r1 + r0;
    if (den != 0) {
      mpq_class d = r2 - r1;
      limit = r2 - d * d / den;
    } else if (r1 != r2) {
      limit = 0;
    }
    if (limit < 0) limit = 0;
    if (limit > r2) limit = r2;
  }

  NestedLimit out;
  out.diameter = limit;
  const PadicScalar& last = chain.back().center;
  if (limit == 0) {
    out.limit = BerkPoint::type1(last);
    for (const auto& d : chain) out.t.push_back(abs_diff(d.center, last));
    out.conditions_hold = true;
    for (const auto& d : chain) {
      if (!abs_le(abs_diff(d.center, last), d.radius, p)) out.conditions_hold = false;
    }
    return out;
  }
  auto m = log_p_exact(limit, p);
  if (!m) {
    throw Error(Errc::Unsupported, "limit radius " + limit.get_str() + " is not a power of p");
  }
  const AbsVal L = AbsVal::from_exp(RadiusExp(-*m));
  out.limit = BerkPoint::disc(last, RadiusExp(-*m));
  out.conditions_hold = true;
  for (std::size_t j = 0; j < n; ++j) {
    AbsVal dj = abs_diff(chain[j].center, last);
    out.t.push_back(max(L, dj));
    if (2 * j >= n && dj > L) out.conditions_hold = false;
  }
  return out;
}

}  // namespace berkdyn
