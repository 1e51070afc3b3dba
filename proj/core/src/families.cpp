#include "berkdyn/families.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "berkdyn/error.hpp"
#include "berkdyn/newton.hpp"
#include "berkdyn/residue_poly.hpp"

namespace berkdyn {

namespace {

bool negligible(const PadicScalar& c) { return c.is_exact_zero() || c.is_zero_to_precision(); }

QPoly qgcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

QPoly at_rational(const BiPoly& P, const mpq_class& l) {
  std::vector<mpq_class> v;
  v.reserve(P.size());
  for (const auto& c : P.coeffs()) v.push_back(c.is_zero() ? mpq_class(0) : c.eval(l));
  return QPoly(std::move(v));
}

KPoly clean(const KPoly& P) {
  std::vector<PadicScalar> v = P.coeffs();
  while (!v.empty() && negligible(v.back())) v.pop_back();
  return KPoly(std::move(v));
}

bool is_constant(const LambdaPoly& c) { return c.degree() == 0; }

LambdaPoly lconst(const mpq_class& x) { return x == 0 ? LambdaPoly() : LambdaPoly::constant(x); }

/// Value of c at a type I parameter, or nullopt when it vanishes there.
std::optional<RadiusExp> exponent_at(const LambdaPoly& c, const ParamPoint& x) {
  if (c.is_zero()) return std::nullopt;
  const FieldPtr& f = x.field();
  if (x.is_type1()) {
    PadicScalar v = to_kpoly(f, c).eval(x.center());
    if (negligible(v)) return std::nullopt;
    return v.abs().exp();
  }
  AbsVal a = seminorm(to_kpoly(f, c), x);
  if (a.is_zero()) return std::nullopt;
  return a.exp();
}

/// c(a + sigma t) / gamma reduced at a type II point zeta(a, r), where
/// |gamma| = p^-gamma_exp >= |c|_x. sigma and gamma are the formal powers
/// p^rexp and p^gamma_exp of the algebraic closure, so radii outside the
/// value group of K reduce the same way; a surviving term always has a unit
/// of K as its coefficient.
ResiduePoly reduce_at(const LambdaPoly& c, const ParamPoint& x, const mpq_class& gamma_exp) {
  const FieldPtr& f = x.field();
  if (c.is_zero()) return ResiduePoly();
  const mpq_class s = x.rexp().a();
  KPoly shifted = to_kpoly(f, c).taylor_shift(x.center());
  std::vector<ResidueElem> out;
  for (std::size_t j = 0; j < shifted.size(); ++j) {
    const PadicScalar& coef = shifted[j];
    const mpq_class shift = s * static_cast<long>(j) - gamma_exp;
    if (negligible(coef) || coef.valuation() + shift > 0) {
      out.emplace_back(f, 0);
      continue;
    }
    const mpq_class units = shift * f->e();
    if (units.get_den() != 1) throw Error(Errc::PrecisionExhausted, "dominant term off the value group");
    out.push_back((coef * PadicScalar::pi_pow(f, units.get_num().get_si())).reduce());
  }
  return ResiduePoly(std::move(out));
}

std::vector<int> proper_divisors(int n) {
  std::vector<int> d;
  for (int m = 1; m < n; ++m) {
    if (n % m == 0) d.push_back(m);
  }
  return d;
}

NewtonPolygon polygon_at(const BiPoly& P, const ParamPoint& x) {
  std::vector<std::optional<RadiusExp>> pts;
  pts.reserve(P.size());
  for (const auto& c : P.coeffs()) pts.push_back(exponent_at(c, x));
  return newton_polygon_points(pts);
}

/// Derivative of f^n for a monic polynomial family, as a polynomial in z.
BiPoly iterate_derivative(const AnalyticFamily& fam, int n) {
  const LambdaPoly one = LambdaPoly::constant(1);
  auto [Fn, Gn] = iterate_forms(HomPoly<LambdaPoly>{fam.num, fam.degree}, HomPoly<LambdaPoly>{fam.den, fam.degree}, n, one);
  const LambdaPoly& g = Gn.dehom.leading();
  if (Gn.dehom.degree() != 0 || !is_constant(g)) {
    throw Error(Errc::Unsupported, "multiplier polynomial needs a polynomial family");
  }
  return Fn.dehom.derivative() * lconst(1 / g[0]);
}

struct SquareTest {
  int m = 1;
  std::string reduced;
};

/// Square test over the completion of an algebraic closure: the value group
/// is divisible and residue constants are squares, so only the shape of the
/// reduced unit part (type II) or the parity of the radius power (type III)
/// matters.
SquareTest square_test(const LambdaPoly& delta, const ParamPoint& x) {
  if (delta.is_zero()) throw Error(Errc::MultipleRoot, "discriminant vanishes identically");
  const FieldPtr& f = x.field();
  const RadiusExp E = seminorm(to_kpoly(f, delta), x).exp();
  if (x.is_type3()) {
    const mpq_class j = E.b() / x.rexp().b();
    if (j.get_den() != 1) throw Error(Errc::Unsupported, "valuation outside the value group");
    return {mpz_odd_p(j.get_num_mpz_t()) ? 2 : 1, ""};
  }
  ResiduePoly red = reduce_at(delta, x, E.a());
  return {is_square_up_to_constant(red) ? 1 : 2, to_string(red, "L")};
}

struct FamilyTables {
  std::vector<BiPoly> dyn;
  std::vector<BiPoly> mult;
  std::vector<LambdaPoly> disc;
};

MultiplicityResult multiplicity_impl(const BiPoly& P, const LambdaPoly& delta, const IndifferenceReport& ind,
                                     const ParamPoint& x, std::optional<int> segment, bool check_repelling) {
  if (x.is_infinity()) throw Error(Errc::InvalidConfig, "parameter at infinity");
  if (check_repelling && !ind.all_repelling()) throw Error(Errc::NotRepelling, "some period-n point is not repelling at " + x.str());
  if (x.is_type1()) return {1, ""};
  if (segment) {
    NewtonPolygon np = polygon_at(P, x);
    if (*segment < 0 || *segment >= static_cast<int>(np.segments.size())) {
      throw Error(Errc::InvalidConfig, "no such Newton polygon segment");
    }
    const int len = np.segments[static_cast<std::size_t>(*segment)].length;
    if (len == 1) return {1, ""};
    if (len != P.degree()) throw Error(Errc::FactorDegreeTooLarge, "factor of degree " + std::to_string(len));
  }
  if (P.degree() == 1) return {1, ""};
  if (P.degree() > 2) throw Error(Errc::FactorDegreeTooLarge, "period factor of degree " + std::to_string(P.degree()));
  SquareTest t = square_test(delta, x);
  return {t.m, t.reduced};
}

/// Root of the first Phi*_m (m | n) that vanishes at the seed, followed to lambda1.
PadicScalar continue_impl(const std::vector<BiPoly>& factors, const std::vector<LambdaPoly>& discs,
                          const PadicScalar& lambda0, const PadicScalar& xi0, const PadicScalar& lambda1) {
  const FieldPtr& f = lambda0.field();
  std::size_t pick = factors.size();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (residual_small(specialize_poly(factors[i], lambda0), xi0)) {
      pick = i;
      break;
    }
  }
  if (pick == factors.size()) throw Error(Errc::HypothesisFails, "seed is not a periodic point at lambda0");
  const BiPoly& phi = factors[pick];
  if (negligible(to_kpoly(f, discs[pick]).eval(lambda1))) {
    throw Error(Errc::MultipleRoot, "discriminant vanishes at lambda1");
  }
  if ((lambda1 - lambda0).is_exact_zero() || (lambda1 - lambda0).is_zero_to_precision()) return xi0;

  const KPoly P0 = specialize_poly(phi, lambda0);
  const KPoly P1 = clean(specialize_poly(phi, lambda1));
  if (P1.degree() < phi.degree()) throw Error(Errc::DegenerateMap, "degree drops at lambda1");

  // Distance from xi0 to the nearest other root at lambda0.
  KPoly others = P0.taylor_shift(xi0).shift_down(1);
  if (others.is_zero() || negligible(others[0])) throw Error(Errc::MultipleRoot, "seed is a multiple root");
  std::optional<RadiusExp> sep;
  if (others.degree() >= 1) sep = newton_polygon(others).root_valuations().back().first;

  KPoly S1 = P1.taylor_shift(xi0);
  if (negligible(S1[0])) return xi0;
  NewtonPolygon np1 = newton_polygon(S1);
  const int inside = sep ? np1.count_roots_with_valuation_at_least(*sep, true) : P1.degree();
  if (inside != 1) {
    throw Error(Errc::CollisionRadiusExceeded, std::to_string(inside) + " roots within the separation radius");
  }
  auto in_disc = [&](const PadicScalar& r) {
    PadicScalar d = r - xi0;
    if (negligible(d)) return true;
    return !sep || RadiusExp(d.valuation()) > *sep;
  };

  const KPoly dP1 = P1.derivative();
  PadicScalar x = xi0;
  for (int it = 0; it < 200 && !residual_small(P1, x, 4); ++it) {
    PadicScalar d = dP1.eval(x);
    if (negligible(d)) break;
    PadicScalar step = P1.eval(x) / d;
    x = x - step;
    if (negligible(step)) break;
  }
  if (residual_small(P1, x, 4) && in_disc(x)) return x;

  RootSet rs = find_roots(P1);
  std::vector<PadicScalar> hits;
  for (const auto& r : rs.roots) {
    if (r.multiplicity == 1 && in_disc(r.value)) hits.push_back(r.value);
  }
  if (hits.size() != 1) throw Error(Errc::CollisionRadiusExceeded, "Hensel iteration left the separation disc");
  return hits.front();
}

PadicScalar eval_map(const AnalyticFamily& fam, const PadicScalar& lambda, const PadicScalar& z) {
  return specialize_poly(fam.num, lambda).eval(z) / specialize_poly(fam.den, lambda).eval(z);
}

std::vector<BiPoly> divisor_factors(const FamilyTables& t, int n) {
  std::vector<BiPoly> out;
  for (int m : proper_divisors(n)) out.push_back(t.dyn[static_cast<std::size_t>(m)]);
  out.push_back(t.dyn[static_cast<std::size_t>(n)]);
  return out;
}

std::vector<LambdaPoly> divisor_discs(const FamilyTables& t, int n) {
  std::vector<LambdaPoly> out;
  for (int m : proper_divisors(n)) out.push_back(t.disc[static_cast<std::size_t>(m)]);
  out.push_back(t.disc[static_cast<std::size_t>(n)]);
  return out;
}

/// "k/t": of the t located simple points of exact period n, k continue to
/// lambda0 + p^step and commute with the dynamics there.
std::string continuation_evidence(const AnalyticFamily& fam, const FamilyTables& t, int n, const PadicScalar& lambda0,
                                  long step_exp) {
  const FieldPtr& f = lambda0.field();
  const PadicScalar lambda1 = lambda0 + PadicScalar::pi_pow(f, step_exp * f->e());
  const auto factors = divisor_factors(t, n);
  const auto discs = divisor_discs(t, n);
  RootSet rs = find_roots(clean(specialize_poly(t.dyn[static_cast<std::size_t>(n)], lambda0)));
  int tried = 0, ok = 0;
  for (const auto& r : rs.roots) {
    if (r.multiplicity != 1 || !r.certified) continue;
    ++tried;
    try {
      PadicScalar xi1 = continue_impl(factors, discs, lambda0, r.value, lambda1);
      PadicScalar img1 = continue_impl(factors, discs, lambda0, eval_map(fam, lambda0, r.value), lambda1);
      PadicScalar diff = img1 - eval_map(fam, lambda1, xi1);
      if (negligible(diff) || diff.valuation() >= f->precision() - 8) ++ok;
    } catch (const Error&) {
    }
  }
  return std::to_string(ok) + "/" + std::to_string(tried);
}

ScanRow scan_one(const AnalyticFamily& fam, const FamilyTables& t, const std::string& table_error, const ParamPoint& x,
                 int n, const ScanOptions& opt) {
  ScanRow row;
  row.param = x;
  row.period = n;
  try {
    if (x.is_infinity()) throw Error(Errc::Unsupported, "parameter at infinity");
    if (x.is_type1() && fam.degree_drops(x.center())) {
      row.flag = ScanFlag::DegreeDrop;
      row.note = "degree drops at this parameter";
      return row;
    }
    if (!table_error.empty()) throw Error(Errc::Unsupported, table_error);
    const std::size_t k = static_cast<std::size_t>(n);
    IndifferenceReport ind = unstably_indifferent(t.mult[k], x);
    if (ind.zero_roots == 0) row.multiplier_val = ind.max_valuation();
    row.reduction_poly = ind.reduction;
    if (ind.any()) {
      row.flag = ScanFlag::UnstablyIndifferent;
      return row;
    }
    if (x.is_type1()) {
      row.m = 1;
      row.continuation = continuation_evidence(fam, t, n, x.center(), opt.step_exp);
      return row;
    }
    if (!ind.all_repelling()) return row;
    try {
      MultiplicityResult mr = multiplicity_impl(t.dyn[k], t.disc[k], ind, x, std::nullopt, true);
      row.m = mr.m;
      if (!mr.reduced_discriminant.empty()) row.reduction_poly = mr.reduced_discriminant;
      if (mr.m > 1) row.flag = ScanFlag::MultiplicityGt1;
    } catch (const Error& e) {
      if (e.code() != Errc::FactorDegreeTooLarge && e.code() != Errc::Unsupported) throw;
      row.flag = ScanFlag::Unsupported;
      row.note = e.what();
    }
  } catch (const Error& e) {
    row.flag = ScanFlag::Unsupported;
    row.note = e.what();
  }
  return row;
}

}  // namespace

LambdaPoly lambda_poly(std::vector<mpq_class> coeffs) { return LambdaPoly(std::move(coeffs)); }

KPoly to_kpoly(const FieldPtr& f, const LambdaPoly& c) {
  std::vector<PadicScalar> v;
  v.reserve(c.size());
  for (const auto& a : c.coeffs()) v.emplace_back(f, a);
  return KPoly(std::move(v));
}

KPoly specialize_poly(const BiPoly& P, const PadicScalar& lambda) {
  const FieldPtr& f = lambda.field();
  std::vector<PadicScalar> v;
  v.reserve(P.size());
  for (const auto& c : P.coeffs()) v.push_back(c.is_zero() ? PadicScalar::zero(f) : to_kpoly(f, c).eval(lambda));
  return KPoly(std::move(v));
}

std::string to_string(const BiPoly& P, const std::string& outer) {
  if (P.is_zero()) return "0";
  std::string out;
  for (std::size_t k = P.size(); k-- > 0;) {
    const LambdaPoly& c = P[k];
    if (c.is_zero()) continue;
    const bool single = std::count_if(c.coeffs().begin(), c.coeffs().end(), [](const mpq_class& a) { return a != 0; }) == 1;
    bool neg = false;
    std::string body;
    if (single) {
      neg = c.leading() < 0;
      body = to_string(neg ? QPoly(-c) : QPoly(c), "l");
    } else {
      body = "(" + to_string(QPoly(c), "l") + ")";
    }
    if (out.empty()) out = neg ? "-" : "";
    else out += neg ? " - " : " + ";
    if (k == 0) {
      out += body;
      continue;
    }
    if (body != "1") out += body + "*";
    out += outer;
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

AnalyticFamily AnalyticFamily::make(BiPoly num, BiPoly den) {
  if (den.is_zero()) throw Error(Errc::DegenerateMap, "zero denominator");
  AnalyticFamily fam{std::move(num), std::move(den), 0};
  fam.degree = std::max(fam.num.degree(), fam.den.degree());
  if (fam.num.is_zero() || fam.degree < 1) throw Error(Errc::DegenerateMap, "constant family");
  for (int i = 0; i < 12; ++i) {
    const mpq_class l(i % 2 ? -(i / 2 + 1) : i / 2 + 2, i % 3 + 1);
    QPoly a = at_rational(fam.num, l), b = at_rational(fam.den, l);
    if (a.is_zero() || b.is_zero()) continue;
    if (std::max(a.degree(), b.degree()) == fam.degree && qgcd(a, b).degree() == 0) return fam;
  }
  throw Error(Errc::DegenerateMap, "numerator and denominator share a factor");
}

bool AnalyticFamily::is_monic_polynomial() const {
  return den.degree() == 0 && is_constant(den[0]) && num.degree() == degree && is_constant(num.leading());
}

RationalMap AnalyticFamily::specialize(const FieldPtr& f, const mpq_class& lambda) const {
  return RationalMap::from_rational(f, at_rational(num, lambda), at_rational(den, lambda));
}

RationalMap AnalyticFamily::specialize(const PadicScalar& lambda) const {
  return RationalMap::from_k(lambda.field(), clean(specialize_poly(num, lambda)), clean(specialize_poly(den, lambda)));
}

bool AnalyticFamily::degree_drops(const PadicScalar& lambda) const {
  KPoly a = clean(specialize_poly(num, lambda)), b = clean(specialize_poly(den, lambda));
  if (a.is_zero() || b.is_zero() || std::max(a.degree(), b.degree()) < degree) return true;
  try {
    (void)RationalMap::from_k(lambda.field(), a, b);
  } catch (const Error& e) {
    if (e.code() == Errc::DegenerateMap) return true;
    throw;
  }
  return false;
}

std::string AnalyticFamily::str() const {
  if (den.degree() == 0 && den[0] == LambdaPoly::constant(1)) return to_string(num, "z");
  return "(" + to_string(num, "z") + ")/(" + to_string(den, "z") + ")";
}

PeriodCurveSlice period_curve(const AnalyticFamily& fam, int n) {
  const LambdaPoly one = LambdaPoly::constant(1);
  auto [Fn, Gn] = iterate_forms(HomPoly<LambdaPoly>{fam.num, fam.degree}, HomPoly<LambdaPoly>{fam.den, fam.degree}, n, one);
  HomPoly<LambdaPoly> phi = period_form(Fn, Gn);
  return {n, phi.dehom, phi.degree};
}

BiPoly exact_divide(const BiPoly& a, const BiPoly& b) {
  if (b.is_zero()) throw Error(Errc::DivisionByZero, "division by the zero polynomial");
  if (!is_constant(b.leading())) throw Error(Errc::Unsupported, "divisor leading coefficient depends on lambda");
  if (a.degree() < b.degree()) {
    if (a.is_zero()) return BiPoly();
    throw Error(Errc::NotIntegral, "inexact division");
  }
  const LambdaPoly inv = lconst(1 / b.leading()[0]);
  std::vector<LambdaPoly> r = a.coeffs();
  std::vector<LambdaPoly> q(static_cast<std::size_t>(a.degree() - b.degree() + 1));
  const std::size_t db = b.size();
  for (std::size_t k = q.size(); k-- > 0;) {
    LambdaPoly t = r[k + db - 1] * inv;
    q[k] = t;
    if (t.is_zero()) continue;
    for (std::size_t j = 0; j < db; ++j) r[k + j] = r[k + j] - t * b[j];
  }
  for (std::size_t j = 0; j + 1 < db; ++j) {
    if (!r[j].is_zero()) throw Error(Errc::NotIntegral, "inexact division");
  }
  return BiPoly(std::move(q));
}

BiPoly dynatomic_factor(const AnalyticFamily& fam, int n) {
  if (n < 1) throw Error(Errc::InvalidConfig, "period must be positive");
  if (!fam.is_monic_polynomial()) throw Error(Errc::Unsupported, "dynatomic factors need a monic polynomial family");
  BiPoly phi = period_curve(fam, n).phi;
  for (int m : proper_divisors(n)) phi = exact_divide(phi, dynatomic_factor(fam, m));
  return phi;
}

KPoly MonicSlice::at(const PadicScalar& lambda) const {
  const FieldPtr& f = lambda.field();
  const PadicScalar l = to_kpoly(f, lead).eval(lambda);
  if (negligible(l)) throw Error(Errc::LeadingCoeffVanishes, "leading coefficient vanishes");
  std::vector<PadicScalar> v = specialize_poly(poly, lambda).coeffs();
  v.resize(static_cast<std::size_t>(poly.degree() + 1), PadicScalar::zero(f));
  const PadicScalar inv = l.inverse();
  for (auto& c : v) c = c * inv;
  v.back() = PadicScalar::one(f);
  return KPoly(std::move(v));
}

MonicSlice monic_normalize(const BiPoly& phi, const ParamPoint& x) {
  if (phi.is_zero()) throw Error(Errc::ZeroPolynomial, "zero period polynomial");
  if (x.is_infinity()) throw Error(Errc::InvalidConfig, "parameter at infinity");
  if (exponent_at(phi.leading(), x)) return {phi, phi.leading(), false};
  BiPoly rev = phi.reversed(phi.degree());
  if (rev.degree() == phi.degree() && exponent_at(rev.leading(), x)) return {rev, rev.leading(), true};
  throw Error(Errc::LeadingCoeffVanishes, "both charts degenerate at " + x.str());
}

BiPoly char_poly(const BiPoly& P, const BiPoly& Q) {
  if (P.degree() < 1) throw Error(Errc::InvalidConfig, "modulus must have positive degree");
  if (!is_constant(P.leading())) throw Error(Errc::Unsupported, "modulus leading coefficient depends on lambda");
  const std::size_t D = static_cast<std::size_t>(P.degree());
  const BiPoly Pm = P * lconst(1 / P.leading()[0]);
  auto reduce = [&](BiPoly X) {
    std::vector<LambdaPoly> v = X.coeffs();
    for (std::size_t k = v.size(); k-- > D;) {
      const LambdaPoly t = v[k];
      if (t.is_zero()) continue;
      for (std::size_t j = 0; j <= D; ++j) v[k - D + j] = v[k - D + j] - t * Pm[j];
    }
    v.resize(std::min(v.size(), D));
    return v;
  };
  // Column j holds z^j Q mod P.
  std::vector<std::vector<LambdaPoly>> A(D, std::vector<LambdaPoly>(D));
  std::vector<LambdaPoly> col = reduce(Q);
  for (std::size_t j = 0; j < D; ++j) {
    col.resize(D);
    for (std::size_t i = 0; i < D; ++i) A[i][j] = col[i];
    col = reduce(BiPoly(col).shift_up(1));
  }
  // Faddeev-LeVerrier.
  std::vector<LambdaPoly> c(D + 1);
  c[D] = LambdaPoly::constant(1);
  std::vector<std::vector<LambdaPoly>> M(D, std::vector<LambdaPoly>(D));
  for (std::size_t i = 0; i < D; ++i) M[i][i] = LambdaPoly::constant(1);
  for (std::size_t k = 1; k <= D; ++k) {
    std::vector<std::vector<LambdaPoly>> AM(D, std::vector<LambdaPoly>(D));
    for (std::size_t i = 0; i < D; ++i) {
      for (std::size_t l = 0; l < D; ++l) {
        if (A[i][l].is_zero()) continue;
        for (std::size_t j = 0; j < D; ++j) {
          if (!M[l][j].is_zero()) AM[i][j] += A[i][l] * M[l][j];
        }
      }
    }
    LambdaPoly tr;
    for (std::size_t i = 0; i < D; ++i) tr += AM[i][i];
    c[D - k] = tr * lconst(mpq_class(-1, static_cast<long>(k)));
    M = std::move(AM);
    for (std::size_t i = 0; i < D; ++i) M[i][i] += c[D - k];
  }
  return BiPoly(std::move(c));
}

LambdaPoly discriminant(const BiPoly& P) {
  const int D = P.degree();
  if (D < 1) throw Error(Errc::InvalidConfig, "discriminant of a constant");
  if (D == 1) return LambdaPoly::constant(1);
  BiPoly ch = char_poly(P, P.derivative() * lconst(1 / P.leading()[0]));
  // prod P'(z_i) = (-1)^D c_0 and disc = (-1)^(D(D-1)/2) prod P'(z_i).
  const bool neg = ((D + D * (D - 1) / 2) % 2) != 0;
  LambdaPoly c0 = ch.coeff(0);
  return neg ? -c0 : c0;
}

BiPoly multiplier_polynomial(const AnalyticFamily& fam, int n) {
  return char_poly(dynatomic_factor(fam, n), iterate_derivative(fam, n));
}

bool IndifferenceReport::any() const {
  return std::any_of(roots.begin(), roots.end(), [](const MultiplierVerdict& v) { return v.unstably_indifferent; });
}

std::optional<RadiusExp> IndifferenceReport::max_valuation() const {
  std::optional<RadiusExp> out;
  for (const auto& r : roots) {
    if (!out || r.valuation > *out) out = r.valuation;
  }
  return out;
}

bool IndifferenceReport::all_repelling() const {
  if (zero_roots > 0) return false;
  return std::all_of(roots.begin(), roots.end(), [](const MultiplierVerdict& v) { return v.valuation.sign() < 0; });
}

IndifferenceReport unstably_indifferent(const BiPoly& M, const ParamPoint& x) {
  if (x.is_infinity()) throw Error(Errc::InvalidConfig, "parameter at infinity");
  if (M.is_zero()) throw Error(Errc::ZeroPolynomial, "zero multiplier polynomial");
  std::vector<std::optional<RadiusExp>> pts;
  for (const auto& c : M.coeffs()) pts.push_back(exponent_at(c, x));
  NewtonPolygon np = newton_polygon_points(pts);
  IndifferenceReport rep;
  rep.zero_roots = np.zero_order;
  for (const auto& seg : np.segments) {
    MultiplierVerdict v{-seg.slope, seg.length, false};
    if (seg.slope.sign() != 0 || !x.is_type2()) {
      rep.roots.push_back(v);
      continue;
    }
    const FieldPtr& f = x.field();
    const mpq_class gamma = pts[static_cast<std::size_t>(seg.start)]->a();
    std::vector<ResiduePoly> R;
    for (int k = seg.start; k <= seg.start + seg.length; ++k) R.push_back(reduce_at(M[static_cast<std::size_t>(k)], x, gamma));
    const Poly<ResiduePoly> Rw(R);
    rep.reduction = to_string(Rw, "w", "L");
    // Constant roots are the common roots of the coefficients of each L^j.
    std::size_t top = 0;
    for (const auto& r : R) top = std::max(top, r.size());
    ResiduePoly g;
    for (std::size_t j = 0; j < top; ++j) {
      std::vector<ResidueElem> col;
      for (const auto& r : R) col.push_back(r.coeff(j).field() ? r.coeff(j) : ResidueElem(f, 0));
      ResiduePoly h(std::move(col));
      if (!h.is_zero()) g = g.is_zero() ? h : gcd(g, h);
    }
    const int constant_roots = std::max(0, g.degree());
    if (constant_roots > 0) rep.roots.push_back({v.valuation, constant_roots, false});
    if (seg.length > constant_roots) rep.roots.push_back({v.valuation, seg.length - constant_roots, true});
  }
  return rep;
}

IndifferenceReport unstably_indifferent(const AnalyticFamily& fam, int n, const ParamPoint& x) {
  return unstably_indifferent(multiplier_polynomial(fam, n), x);
}

MultiplicityResult type1_multiplicity(const AnalyticFamily& fam, int n, const ParamPoint& x, std::optional<int> segment,
                                      bool check_repelling) {
  const BiPoly P = dynatomic_factor(fam, n);
  const IndifferenceReport ind = unstably_indifferent(multiplier_polynomial(fam, n), x);
  return multiplicity_impl(P, P.degree() >= 2 ? discriminant(P) : LambdaPoly::constant(1), ind, x, segment, check_repelling);
}

PadicScalar continue_periodic_point(const AnalyticFamily& fam, int n, const PadicScalar& lambda0,
                                    const PadicScalar& xi0, const PadicScalar& lambda1) {
  std::vector<BiPoly> factors;
  std::vector<LambdaPoly> discs;
  for (int m : proper_divisors(n)) factors.push_back(dynatomic_factor(fam, m));
  factors.push_back(dynatomic_factor(fam, n));
  for (const auto& P : factors) discs.push_back(discriminant(P));
  return continue_impl(factors, discs, lambda0, xi0, lambda1);
}

std::string flag_name(ScanFlag f) {
  switch (f) {
    case ScanFlag::Ok: return "OK";
    case ScanFlag::UnstablyIndifferent: return "UNSTABLY_INDIFFERENT";
    case ScanFlag::MultiplicityGt1: return "MULTIPLICITY_GT_1";
    case ScanFlag::DegreeDrop: return "DEGREE_DROP";
    case ScanFlag::Unsupported: return "UNSUPPORTED";
  }
  return "?";
}

BifurcationReport stability_scan(const AnalyticFamily& fam, int n_max, const std::vector<ParamPoint>& points,
                                 const ScanOptions& opt) {
  if (n_max < 1) throw Error(Errc::InvalidConfig, "n_max must be positive");
  BifurcationReport rep;
  rep.rows.resize(points.size() * static_cast<std::size_t>(n_max));

  FamilyTables t;
  std::string table_error;
  try {
    t.dyn.resize(static_cast<std::size_t>(n_max) + 1);
    t.mult.resize(t.dyn.size());
    t.disc.resize(t.dyn.size());
    for (int n = 1; n <= n_max; ++n) {
      const std::size_t k = static_cast<std::size_t>(n);
      t.dyn[k] = dynatomic_factor(fam, n);
      t.mult[k] = char_poly(t.dyn[k], iterate_derivative(fam, n));
      t.disc[k] = discriminant(t.dyn[k]);
    }
  } catch (const Error& e) {
    table_error = e.what();
  }

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rep.rows.size(); i = next++) {
      const ParamPoint& x = points[i / static_cast<std::size_t>(n_max)];
      const int n = static_cast<int>(i % static_cast<std::size_t>(n_max)) + 1;
      rep.rows[i] = scan_one(fam, t, table_error, x, n, opt);
    }
  };
  const int jobs = std::max(1, std::min<int>(opt.jobs, static_cast<int>(rep.rows.size())));
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return rep;
}

}  // namespace berkdyn
