#include "berkdyn/series.hpp"

#include <algorithm>
#include <random>

#include "berkdyn/error.hpp"
#include "berkdyn/newton.hpp"

namespace berkdyn {

namespace {

bool negligible(const PadicScalar& c) { return c.is_exact_zero() || c.is_zero_to_precision(); }

/// Exponent of |b_k| t^k, with t = p^-t_exp.
RadiusExp term_exp(const PadicScalar& b, int k, const RadiusExp& t_exp) {
  return RadiusExp(b.valuation()) + t_exp * mpq_class(k);
}

/// Indices attaining the largest |b_k| t^k, ascending.
std::vector<int> dominant(const std::map<int, PadicScalar>& coeffs, const RadiusExp& t_exp) {
  std::vector<int> best;
  RadiusExp lo;
  for (const auto& [k, b] : coeffs) {
    if (negligible(b)) continue;
    RadiusExp e = term_exp(b, k, t_exp);
    if (best.empty() || e < lo) {
      best = {k};
      lo = e;
    } else if (e == lo) {
      best.push_back(k);
    }
  }
  return best;
}

/// n with x = n*y exactly, if it exists.
std::optional<int> exact_ratio(const RadiusExp& x, const RadiusExp& y) {
  mpq_class q;
  if (y.b() != 0) {
    q = x.b() / y.b();
  } else if (y.a() != 0) {
    q = x.a() / y.a();
  } else {
    return std::nullopt;
  }
  if (q.get_den() != 1 || !(y * q == x)) return std::nullopt;
  return static_cast<int>(q.get_num().get_si());
}

struct Reduced {
  ResiduePoly num;
  ResiduePoly den;
};

/// P/sigma reduced mod the maximal ideal, with |sigma| = |P|_gauss.
ResiduePoly reduce_scaled(const KPoly& P, const FieldPtr& f) {
  const AbsVal n = seminorm(P, BerkPoint::gauss(f));
  const PadicScalar sigma = scale_element(f, n.exp());
  std::vector<ResidueElem> out;
  for (const auto& c : P.coeffs()) {
    if (negligible(c)) {
      out.emplace_back(f, 0);
      continue;
    }
    PadicScalar u = c / sigma;
    out.push_back(u.valuation() > 0 ? ResidueElem(f, 0) : u.reduce());
  }
  return ResiduePoly(std::move(out));
}

Reduced reduce_function(const RationalFunction& psi, const FieldPtr& f) {
  ResiduePoly a = reduce_scaled(psi.num, f);
  ResiduePoly b = reduce_scaled(psi.den, f);
  ResiduePoly g = gcd(a, b);
  if (g.degree() > 0) {
    a = a.divmod(g).first;
    b = b.divmod(g).first;
  }
  return {a, b};
}

int root_multiplicity(const ResiduePoly& f, const ResidueElem& x) {
  ResiduePoly lin(std::vector<ResidueElem>{-x, ResidueElem(x.field(), 1)});
  ResiduePoly g = f;
  int m = 0;
  while (!g.is_zero() && g.degree() > 0) {
    auto [q, rem] = g.divmod(lin);
    if (!rem.is_zero()) break;
    g = q;
    ++m;
  }
  return m;
}

bool vanishes(const KPoly& P) {
  return std::all_of(P.coeffs().begin(), P.coeffs().end(), negligible);
}

FieldPtr field_of(const KPoly& P) {
  for (const auto& c : P.coeffs()) {
    if (c.field()) return c.field();
  }
  throw Error(Errc::ZeroFunction, "function is identically zero");
}

bool in_closed_disc(const BerkPoint& x, const PadicScalar& a, const AbsVal& r) {
  if (x.is_infinity()) return false;
  return abs_diff(x.center(), a) <= r && x.radius() <= r;
}

/// |T - a|_x for a finite point x.
AbsVal coordinate_abs(const BerkPoint& x, const PadicScalar& a) {
  return max(abs_diff(x.center(), a), x.radius());
}

}  // namespace

LaurentSegment LaurentSegment::make(PadicScalar center, std::map<int, PadicScalar> coeffs, RadiusExp r_exp,
                                    RadiusExp s_exp) {
  if (!(s_exp < r_exp)) throw Error(Errc::InvalidConfig, "annulus needs r < s");
  LaurentSegment out;
  out.center = std::move(center);
  for (auto& [k, b] : coeffs) {
    if (!b.is_exact_zero()) out.coeffs.emplace(k, std::move(b));
  }
  out.r_exp = std::move(r_exp);
  out.s_exp = std::move(s_exp);
  return out;
}

bool LaurentSegment::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const auto& kv) { return negligible(kv.second); });
}

LaurentSegment LaurentSegment::without_constant() const {
  LaurentSegment out = *this;
  out.coeffs.erase(0);
  return out;
}

PadicScalar LaurentSegment::constant_term() const {
  auto it = coeffs.find(0);
  if (it != coeffs.end()) return it->second;
  return PadicScalar::zero(center.field());
}

int inner_wdeg(const LaurentSegment& psi) {
  auto d = dominant(psi.coeffs, psi.r_exp);
  if (d.empty()) throw Error(Errc::ZeroFunction, "function is identically zero");
  return d.back();
}

int outer_wdeg(const LaurentSegment& psi) {
  auto d = dominant(psi.coeffs, psi.s_exp);
  if (d.empty()) throw Error(Errc::ZeroFunction, "function is identically zero");
  return d.front();
}

int zero_count(const LaurentSegment& psi) { return outer_wdeg(psi) - inner_wdeg(psi); }

int newton_zero_count(const LaurentSegment& psi) {
  if (psi.is_zero()) throw Error(Errc::ZeroFunction, "function is identically zero");
  const int lo = psi.coeffs.begin()->first;
  const int hi = psi.coeffs.rbegin()->first;
  std::vector<std::optional<RadiusExp>> pts(static_cast<std::size_t>(hi - lo + 1));
  for (const auto& [k, b] : psi.coeffs) {
    if (!negligible(b)) pts[static_cast<std::size_t>(k - lo)] = RadiusExp(b.valuation());
  }
  NewtonPolygon np = newton_polygon_points(pts);
  // r < |w| < s  <=>  s_exp < v(w) < r_exp.
  return np.count_roots_with_valuation_at_least(psi.s_exp, true) -
         np.count_roots_with_valuation_at_least(psi.r_exp, false);
}

BerkPoint push_annulus_skeleton(const LaurentSegment& psi, const RadiusExp& t) {
  if (t > psi.r_exp || t < psi.s_exp) throw Error(Errc::InvalidConfig, "radius outside the annulus");
  const PadicScalar b0 = psi.constant_term();
  auto d = dominant(psi.without_constant().coeffs, t);
  if (d.empty()) {
    if (negligible(b0)) throw Error(Errc::ZeroFunction, "function is identically zero");
    return BerkPoint::type1(b0);
  }
  if (d.size() > 1) {
    throw Error(Errc::DegreesSplit,
                "indices " + std::to_string(d.front()) + " and " + std::to_string(d.back()) + " tie at this radius");
  }
  const int N = d.front();
  return BerkPoint::disc(b0, term_exp(psi.coeffs.at(N), N, t));
}

ScalingWitness scaling_check(const LaurentSegment& psi) {
  LaurentSegment rest = psi.without_constant();
  if (rest.is_zero()) throw Error(Errc::HypothesisFails, "psi - b0 vanishes identically");
  const int M = inner_wdeg(rest), N = outer_wdeg(rest);
  if (M != N) {
    throw Error(Errc::HypothesisFails,
                "inner degree " + std::to_string(M) + " differs from outer degree " + std::to_string(N));
  }
  const PadicScalar& bN = rest.coeffs.at(N);
  const PadicScalar b0 = psi.constant_term();
  BerkPoint inner = BerkPoint::disc(b0, term_exp(bN, N, psi.r_exp));
  BerkPoint outer = BerkPoint::disc(b0, term_exp(bN, N, psi.s_exp));
  ScalingWitness w;
  w.degree = N;
  w.image_distance = hyperbolic_distance(inner, outer);
  w.scaled_distance = (psi.r_exp - psi.s_exp) * mpq_class(N < 0 ? -N : N);
  w.equal = w.image_distance == w.scaled_distance;
  return w;
}

RationalFunction RationalFunction::from_laurent(const LaurentSegment& psi) {
  if (psi.is_zero()) throw Error(Errc::ZeroFunction, "function is identically zero");
  const FieldPtr f = psi.center.field() ? psi.center.field() : psi.coeffs.begin()->second.field();
  const int m = std::max(0, -psi.coeffs.begin()->first);
  KPoly num;
  for (const auto& [k, b] : psi.coeffs) num.set(static_cast<std::size_t>(k + m), b);
  KPoly den = KPoly::monomial(PadicScalar::one(f), static_cast<std::size_t>(m));
  if (!psi.center.is_exact_zero()) {
    num = num.taylor_shift(-psi.center);
    den = den.taylor_shift(-psi.center);
  }
  return {num, den};
}

RationalFunction RationalFunction::constant(const PadicScalar& c) {
  return {KPoly::constant(c), KPoly::constant(PadicScalar::one(c.field()))};
}

AbsVal RationalFunction::abs_at(const BerkPoint& x) const {
  AbsVal d = seminorm(den, x);
  if (d.is_zero()) throw Error(Errc::DivisionByZero, "pole at " + x.str());
  return seminorm(num, x) / d;
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
  return {num * o.den - o.num * den, den * o.den};
}

BerkPoint image_of_point(const KPoly& F, const KPoly& G, const BerkPoint& xi) {
  if (G.is_zero()) throw Error(Errc::DivisionByZero, "zero denominator");
  const FieldPtr f = field_of(G);
  if (F.is_zero()) return BerkPoint::type1(PadicScalar::zero(f));
  if (xi.is_infinity()) {
    if (F.degree() > G.degree()) return BerkPoint::infinity();
    if (F.degree() < G.degree()) return BerkPoint::type1(PadicScalar::zero(f));
    return BerkPoint::type1(F.leading() / G.leading());
  }
  if (xi.is_type1()) {
    PadicScalar g = G.eval(xi.center());
    PadicScalar n = F.eval(xi.center());
    if (negligible(g)) {
      if (negligible(n)) throw Error(Errc::DegenerateMap, "numerator and denominator vanish at " + xi.str());
      return BerkPoint::infinity();
    }
    return BerkPoint::type1(n / g);
  }
  // Take b = F_j/G_j at the index j where |G_k| r^k is largest: for any c,
  // |F - bG|_xi <= |F - cG|_xi by the ultrametric inequality, so b is a
  // centre of the image and its radius is |F - bG|_xi / |G|_xi.
  const KPoly Fs = xi.center().is_exact_zero() ? F : F.taylor_shift(xi.center());
  const KPoly Gs = xi.center().is_exact_zero() ? G : G.taylor_shift(xi.center());
  const AbsVal r = xi.radius();
  std::size_t j = 0;
  AbsVal top = AbsVal::zero();
  for (std::size_t k = 0; k < Gs.size(); ++k) {
    if (negligible(Gs[k])) continue;
    AbsVal w = Gs[k].abs() * r.pow(static_cast<long>(k));
    if (w > top) {
      top = w;
      j = k;
    }
  }
  if (top.is_zero()) throw Error(Errc::PrecisionExhausted, "denominator vanishes to precision");
  const PadicScalar b = Fs.coeff(j) / Gs[j];
  const AbsVal rad = gauss_seminorm((Fs - Gs * b).coeffs(), xi) / top;
  if (rad.is_zero()) return BerkPoint::type1(b);
  return BerkPoint::disc(b, rad.exp());
}

void BasicOpenSet::validate() const {
  if (!(r_exp.sign() > 0)) throw Error(Errc::InvalidConfig, "basic open set needs r < 1");
  for (std::size_t i = 0; i < arms.size(); ++i) {
    if (arms[i].abs() > AbsVal::one()) throw Error(Errc::InvalidConfig, "arm centre outside the unit disc");
    for (std::size_t j = 0; j < i; ++j) {
      if (abs_diff(arms[i], arms[j]) < AbsVal::one()) {
        throw Error(Errc::InvalidConfig, "arms " + std::to_string(j) + " and " + std::to_string(i) +
                                             " share a residue class");
      }
    }
  }
}

bool BasicOpenSet::contains(const BerkPoint& x) const {
  if (x.is_infinity()) return false;
  const AbsVal r = AbsVal::from_exp(r_exp);
  if (!(coordinate_abs(x, PadicScalar::zero(x.field())) < AbsVal::from_exp(-r_exp))) return false;
  return std::none_of(arms.begin(), arms.end(), [&](const PadicScalar& a) { return in_closed_disc(x, a, r); });
}

std::vector<BerkPoint> BasicOpenSet::boundary() const {
  std::vector<BerkPoint> out;
  for (const auto& a : arms) out.push_back(BerkPoint::disc(a, r_exp));
  out.push_back(BerkPoint::disc(PadicScalar(field, 0L), -r_exp));
  return out;
}

int zeros_in(const KPoly& poly, const BasicOpenSet& U) {
  if (poly.is_zero()) throw Error(Errc::ZeroFunction, "polynomial is identically zero");
  int n = newton_polygon(poly).count_roots_with_valuation_at_least(-U.r_exp, true);
  for (const auto& a : U.arms) {
    n -= newton_polygon(poly.taylor_shift(a)).count_roots_with_valuation_at_least(U.r_exp, false);
  }
  return n;
}

BasicOpenReport basic_open_analysis(const RationalFunction& psi, const BasicOpenSet& U) {
  U.validate();
  const FieldPtr f = field_of(psi.den);
  if (vanishes(psi.num)) throw Error(Errc::ZeroFunction, "function is identically zero");
  if (int poles = zeros_in(psi.den, U)) {
    throw Error(Errc::HypothesisFails, std::to_string(poles) + " poles in U; psi must be analytic");
  }
  if (int zeros = zeros_in(psi.num, U)) throw Error(Errc::HasZeros, std::to_string(zeros) + " zeros in U");

  BasicOpenReport rep;
  const BerkPoint gauss = BerkPoint::gauss(f);
  rep.gauss_image = image_of_point(psi.num, psi.den, gauss);
  rep.gauss_abs = psi.abs_at(gauss);

  Reduced red = reduce_function(psi, f);
  rep.reduction_num = red.num;
  rep.reduction_den = red.den;
  rep.reduction_degree = std::max(red.num.degree(), red.den.degree());

  const RadiusExp& er = U.r_exp;
  const RadiusExp& e1 = rep.gauss_abs.exp();
  rep.degrees_consistent = true;
  for (const auto& a : U.arms) {
    DirectionDegree dd;
    dd.direction = a.reduce();
    auto n = exact_ratio(psi.abs_at(BerkPoint::disc(a, er)).exp() - e1, er);
    if (!n) throw Error(Errc::HasZeros, "|psi| is not monomial along the arm toward " + a.str());
    dd.weierstrass_degree = *n;
    dd.reduction_order = root_multiplicity(red.num, *dd.direction) - root_multiplicity(red.den, *dd.direction);
    if (dd.weierstrass_degree != dd.reduction_order) rep.degrees_consistent = false;
    rep.directions.push_back(dd);
  }
  {
    DirectionDegree dd;
    auto n = exact_ratio(psi.abs_at(BerkPoint::disc(PadicScalar::zero(f), -er)).exp() - e1, -er);
    if (!n) throw Error(Errc::HasZeros, "|psi| is not monomial toward infinity");
    dd.weierstrass_degree = *n;
    dd.reduction_order = red.num.degree() - red.den.degree();
    if (dd.weierstrass_degree != dd.reduction_order) rep.degrees_consistent = false;
    rep.directions.push_back(dd);
  }
  // Zeros and poles of the reduction may only sit in arm directions.
  for (const ResiduePoly* g : {&red.num, &red.den}) {
    for (const auto& [x, mult] : residue_roots(*g)) {
      bool on_arm = std::any_of(rep.directions.begin(), rep.directions.end(),
                                [&](const DirectionDegree& d) { return d.direction && *d.direction == x; });
      if (!on_arm) rep.degrees_consistent = false;
    }
  }

  rep.bound = AbsVal::from_exp(e1 - er * mpq_class(rep.reduction_degree));
  rep.bound_holds = true;
  for (const auto& x : U.boundary()) {
    rep.boundary_points.push_back(x);
    BerkPoint img = image_of_point(psi.num, psi.den, x);
    AbsVal v = psi.abs_at(x);
    rep.boundary_images.push_back(img);
    rep.boundary_abs.push_back(v);
    if (v > rep.bound) rep.bound_holds = false;
    if (img.is_infinity() || coordinate_abs(img, PadicScalar::zero(f)) > rep.bound) rep.bound_holds = false;
  }
  const BerkPoint& gi = rep.gauss_image;
  rep.range = (gi.is_disc() && gi.disc_contains(PadicScalar::zero(f))) ? RangeShape::OnSegment : RangeShape::OffSegment;
  return rep;
}

RatioWitness injectivity_ratio_check(const RationalFunction& psi1, const RationalFunction& psi2,
                                     const BasicOpenSet& U, const BerkPoint& x0) {
  U.validate();
  if (!U.contains(x0)) throw Error(Errc::HypothesisFails, "clause 0: x0 does not lie in U");
  const FieldPtr f = field_of(psi1.den);
  const RationalFunction diff = psi1 - psi2;
  for (const RationalFunction* g : {&psi1, &psi2, &diff}) {
    if (vanishes(g->num) || zeros_in(g->num, U) != 0 || zeros_in(g->den, U) != 0) {
      throw Error(Errc::HypothesisFails, "clause 1: psi1, psi2 and psi1 - psi2 must be zero-free on U");
    }
  }

  RatioWitness w;
  w.t1 = psi1.abs_at(x0);
  w.t2 = psi2.abs_at(x0);
  const PadicScalar zero = PadicScalar::zero(f);
  AbsVal r0 = AbsVal::one();
  AbsVal size = coordinate_abs(x0, zero);
  if (!size.is_zero()) r0 = min(r0, AbsVal::one() / size);
  for (const auto& a : U.arms) r0 = min(r0, coordinate_abs(x0, a));
  w.r0 = r0;
  const AbsVal r = AbsVal::from_exp(U.r_exp);
  if (r0 < AbsVal::one()) {
    if (!(max(r0, r / r0) * w.t1 < w.t2 && w.t2 < w.t1)) {
      throw Error(Errc::HypothesisFails, "clause 2: need max(r0, r/r0) t1 < t2 < t1");
    }
  } else if (!(r * w.t1 < w.t2 && w.t2 < w.t1)) {
    throw Error(Errc::HypothesisFails, "clause 3: need r t1 < t2 < t1");
  }
  w.ratio = w.t2 / w.t1;

  std::vector<BerkPoint> probes = U.boundary();
  probes.push_back(BerkPoint::gauss(f));
  // Seeded sample of disc points of U: centres in Z/p^4, radius exponents
  // spread over (-r_exp, r_exp).
  std::mt19937_64 rng(0x5eed);
  const long span = static_cast<long>(f->p_pow(4).get_si());
  std::uniform_int_distribution<long> centre(0, span - 1);
  std::uniform_int_distribution<int> step(-23, 23);
  int sampled = 0;
  while (sampled < 50) {
    RadiusExp e = U.r_exp * mpq_class(step(rng), 24);
    BerkPoint x = BerkPoint::disc(PadicScalar(f, centre(rng)), e);
    if (!U.contains(x)) continue;
    probes.push_back(x);
    ++sampled;
  }
  w.holds = true;
  for (const auto& x : probes) {
    if (!(psi2.abs_at(x) / psi1.abs_at(x) == w.ratio)) {
      w.holds = false;
      w.failures.push_back(x);
    }
  }
  w.probes = static_cast<int>(probes.size());
  return w;
}

}  // namespace berkdyn
