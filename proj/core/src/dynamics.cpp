#include "berkdyn/dynamics.hpp"

#include <algorithm>
#include <climits>

#include "berkdyn/error.hpp"
#include "berkdyn/series.hpp"

namespace berkdyn {

namespace {

bool negligible(const PadicScalar& c) { return c.is_exact_zero() || c.is_zero_to_precision(); }

long vp(const mpq_class& x, long p) {
  long v = 0;
  mpz_class n = x.get_num(), d = x.get_den();
  while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
    n /= p;
    ++v;
  }
  while (mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(p))) {
    d /= p;
    --v;
  }
  return v;
}

QPoly qgcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Drops trailing coefficients that vanish to precision.
KPoly clean(const KPoly& P) {
  std::vector<PadicScalar> v = P.coeffs();
  while (!v.empty() && negligible(v.back())) v.pop_back();
  return KPoly(std::move(v));
}

KPoly to_k(const FieldPtr& f, const QPoly& q) {
  std::vector<PadicScalar> v;
  v.reserve(q.size());
  for (const auto& c : q.coeffs()) v.emplace_back(f, c);
  return KPoly(std::move(v));
}

/// Sylvester determinant of two forms of degree d, by elimination with the
/// largest available pivot.
PadicScalar form_resultant(const FieldPtr& f, const KForm& F, const KForm& G) {
  const int d = F.degree;
  const std::size_t n = static_cast<std::size_t>(2 * d);
  std::vector<std::vector<PadicScalar>> m(n, std::vector<PadicScalar>(n, PadicScalar::zero(f)));
  for (int row = 0; row < d; ++row) {
    for (int i = 0; i <= d; ++i) {
      // Coefficient of X^(d-i) Y^i.
      m[static_cast<std::size_t>(row)][static_cast<std::size_t>(row + i)] = F.dehom.coeff(static_cast<std::size_t>(d - i));
      m[static_cast<std::size_t>(row + d)][static_cast<std::size_t>(row + i)] =
          G.dehom.coeff(static_cast<std::size_t>(d - i));
    }
  }
  PadicScalar det = PadicScalar::one(f);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    for (std::size_t r = col; r < n; ++r) {
      if (negligible(m[r][col])) continue;
      if (piv == n || m[r][col].abs() > m[piv][col].abs()) piv = r;
    }
    if (piv == n) return PadicScalar::zero(f);
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det = det * m[col][col];
    const PadicScalar inv = m[col][col].inverse();
    for (std::size_t r = col + 1; r < n; ++r) {
      if (negligible(m[r][col])) continue;
      const PadicScalar k = m[r][col] * inv;
      for (std::size_t c = col; c < n; ++c) m[r][c] = m[r][c] - k * m[col][c];
    }
  }
  return det;
}

/// Value of (N'D - ND')/D^2 at x.
PadicScalar log_derivative_quotient(const KPoly& N, const KPoly& D, const PadicScalar& x) {
  const PadicScalar n = N.eval(x), d = D.eval(x);
  const PadicScalar dn = N.derivative().eval(x), dd = D.derivative().eval(x);
  if (negligible(d)) throw Error(Errc::PrecisionExhausted, "derivative at a pole of the chart");
  return (dn * d - n * dd) / (d * d);
}

std::string qpoly_term(const mpq_class& c, std::size_t k, const std::string& var, bool first) {
  std::string s;
  mpq_class a = abs(c);
  if (!first) s += c < 0 ? " - " : " + ";
  else if (c < 0) s += "-";
  const bool unit = a == 1;
  if (k == 0 || !unit) s += a.get_str();
  if (k > 0) {
    if (!unit) s += "*";
    s += var;
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s;
}

}  // namespace

std::string to_string(const QPoly& q, const std::string& var) {
  if (q.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t k = q.size(); k-- > 0;) {
    if (q[k] == 0) continue;
    out += qpoly_term(q[k], k, var, first);
    first = false;
  }
  return out;
}

RationalMap RationalMap::from_exact_forms(const FieldPtr& f, QForm F, QForm G) {
  if (F.degree < 1) throw Error(Errc::DegenerateMap, "constant map");
  if (F.dehom.is_zero() || G.dehom.is_zero()) throw Error(Errc::DegenerateMap, "constant map");
  if (F.infinity_order() > 0 && G.infinity_order() > 0) throw Error(Errc::DegenerateMap, "common factor Y");
  if (qgcd(F.dehom, G.dehom).degree() > 0) throw Error(Errc::DegenerateMap, "numerator and denominator share a root");
  long vmin = LONG_MAX;
  for (const QPoly* q : {&F.dehom, &G.dehom}) {
    for (const auto& c : q->coeffs()) {
      if (c != 0) vmin = std::min(vmin, vp(c, f->p()));
    }
  }
  mpq_class scale = vmin >= 0 ? mpq_class(1, f->p_pow(vmin)) : mpq_class(f->p_pow(-vmin));
  F.dehom = F.dehom * scale;
  G.dehom = G.dehom * scale;
  RationalMap m;
  m.f_ = f;
  m.F_ = {to_k(f, F.dehom), F.degree};
  m.G_ = {to_k(f, G.dehom), G.degree};
  m.exact_ = std::make_pair(std::move(F), std::move(G));
  return m;
}

RationalMap RationalMap::from_rational(const FieldPtr& f, const QPoly& num, const QPoly& den) {
  if (den.is_zero()) throw Error(Errc::DivisionByZero, "zero denominator");
  const int d = std::max(num.degree(), den.degree());
  if (d < 1) throw Error(Errc::DegenerateMap, "constant map");
  return from_exact_forms(f, {num, d}, {den, d});
}

RationalMap RationalMap::from_k(const FieldPtr& f, const KPoly& num, const KPoly& den) {
  KPoly n = clean(num), d = clean(den);
  if (d.is_zero()) throw Error(Errc::DivisionByZero, "zero denominator");
  const int deg = std::max(n.degree(), d.degree());
  if (deg < 1) throw Error(Errc::DegenerateMap, "constant map");
  return from_forms(f, {n, deg}, {d, deg});
}

RationalMap RationalMap::from_forms(const FieldPtr& f, KForm F, KForm G) {
  if (F.degree < 1 || F.degree != G.degree) throw Error(Errc::DegenerateMap, "forms must share a degree >= 1");
  F.dehom = clean(F.dehom);
  G.dehom = clean(G.dehom);
  if (negligible(form_resultant(f, F, G))) throw Error(Errc::DegenerateMap, "resultant vanishes");
  long vmin = LONG_MAX;
  for (const KPoly* q : {&F.dehom, &G.dehom}) {
    for (const auto& c : q->coeffs()) {
      if (!negligible(c)) vmin = std::min(vmin, c.valuation_units());
    }
  }
  const PadicScalar scale = PadicScalar::pi_pow(f, -vmin);
  RationalMap m;
  m.f_ = f;
  m.F_ = {F.dehom * scale, F.degree};
  m.G_ = {G.dehom * scale, G.degree};
  return m;
}

RationalMap RationalMap::compose(const RationalMap& g) const {
  if (exact_ && g.exact_) {
    const mpq_class one = 1;
    return from_exact_forms(f_, compose_forms(exact_->first, g.exact_->first, g.exact_->second, one),
                            compose_forms(exact_->second, g.exact_->first, g.exact_->second, one));
  }
  const PadicScalar one = PadicScalar::one(f_);
  return from_forms(f_, compose_forms(F_, g.F_, g.G_, one), compose_forms(G_, g.F_, g.G_, one));
}

RationalMap RationalMap::iterate(int n) const {
  if (exact_) {
    auto [a, b] = iterate_forms(exact_->first, exact_->second, n, mpq_class(1));
    return from_exact_forms(f_, a, b);
  }
  auto [a, b] = iterate_forms(F_, G_, n, PadicScalar::one(f_));
  return from_forms(f_, a, b);
}

std::string RationalMap::str() const {
  if (exact_) {
    const QPoly& n = exact_->first.dehom;
    const QPoly& d = exact_->second.dehom;
    if (d.degree() == 0) {
      QPoly q = n * (1 / d[0]);
      return to_string(q, "z");
    }
    return "(" + to_string(n, "z") + ")/(" + to_string(d, "z") + ")";
  }
  auto side = [](const KPoly& P) {
    std::string s;
    for (std::size_t k = P.size(); k-- > 0;) {
      if (P[k].is_exact_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + P[k].str() + ")";
      if (k > 0) s += "*z" + (k > 1 ? "^" + std::to_string(k) : std::string());
    }
    return s.empty() ? std::string("0") : s;
  };
  return "(" + side(F_.dehom) + ")/(" + side(G_.dehom) + ")";
}

BerkPoint evaluate(const RationalMap& f, const BerkPoint& x) {
  if (x.is_disc()) throw Error(Errc::Unsupported, "evaluate takes a type I point");
  PadicScalar a, b;
  if (x.is_infinity()) {
    a = f.F().dehom.coeff(static_cast<std::size_t>(f.degree()));
    b = f.G().dehom.coeff(static_cast<std::size_t>(f.degree()));
    if (a.field() == nullptr) a = PadicScalar::zero(f.field());
    if (b.field() == nullptr) b = PadicScalar::zero(f.field());
  } else {
    a = f.F().dehom.eval(x.center());
    b = f.G().dehom.eval(x.center());
  }
  if (negligible(b)) {
    if (negligible(a)) throw Error(Errc::PrecisionExhausted, "both coordinates vanish to precision at " + x.str());
    return BerkPoint::infinity();
  }
  return BerkPoint::type1(a / b);
}

BerkPoint push_disc_point(const RationalMap& f, const BerkPoint& xi) {
  if (!xi.is_disc()) return evaluate(f, xi);
  return image_of_point(f.F().dehom, f.G().dehom, xi);
}

std::string ReducedMap::str() const {
  if (den.is_zero()) return "inf";
  if (den.degree() == 0) return to_string(num * den[0].inverse(), "z");
  return "(" + to_string(num, "z") + ")/(" + to_string(den, "z") + ")";
}

ReducedMap reduction_at_gauss(const RationalMap& f) {
  const FieldPtr& F = f.field();
  auto red = [&](const KPoly& P) {
    std::vector<ResidueElem> v;
    for (const auto& c : P.coeffs()) {
      if (negligible(c) || c.valuation_units() > 0) {
        v.emplace_back(F, 0);
      } else {
        v.push_back(c.reduce());
      }
    }
    return ResiduePoly(std::move(v));
  };
  const int d = f.degree();
  ResiduePoly a = red(f.F().dehom), b = red(f.G().dehom);
  auto inf_order = [d](const ResiduePoly& q) { return q.is_zero() ? d : d - q.degree(); };
  const int y_common = std::min(inf_order(a), inf_order(b));
  ResiduePoly g = gcd(a, b);
  ReducedMap out;
  out.num = a.divmod(g).first;
  out.den = b.is_zero() ? b : b.divmod(g).first;
  out.degree = d - g.degree() - y_common;
  out.nonconstant = out.degree >= 1;
  out.gauss_fixed = push_disc_point(f, BerkPoint::gauss(F)) == BerkPoint::gauss(F);
  return out;
}

std::string class_name(PointClass c) {
  switch (c) {
    case PointClass::Attracting: return "attracting";
    case PointClass::Indifferent: return "indifferent";
    case PointClass::Repelling: return "repelling";
  }
  return "?";
}

LocalDegree local_degree(const RationalMap& f, const BerkPoint& xi) {
  if (!xi.is_disc()) throw Error(Errc::Unsupported, "local degree is computed at type II and III points");
  if (!(push_disc_point(f, xi) == xi)) throw Error(Errc::NotFixed, xi.str() + " is not fixed");
  LocalDegree out;
  const FieldPtr& F = f.field();
  if (xi.is_type2()) {
    const PadicScalar sigma = scale_element(F, xi.rexp());
    const PadicScalar& a = xi.center();
    const PadicScalar one = PadicScalar::one(F);
    KForm A{KPoly(std::vector<PadicScalar>{a, sigma}), 1};
    KForm B{KPoly::constant(one), 1};
    KForm Fc = compose_forms(f.F(), A, B, one);
    KForm Gc = compose_forms(f.G(), A, B, one);
    KForm Fn{Fc.dehom - Gc.dehom * a, Fc.degree};
    KForm Gn{Gc.dehom * sigma, Gc.degree};
    out.degree = reduction_at_gauss(RationalMap::from_forms(F, Fn, Gn)).degree;
  } else {
    // Off the value group no two terms tie, so the radius map is a monomial
    // in rho near r and its exponent is the local degree.
    const KPoly Fs = f.F().dehom.taylor_shift(xi.center());
    const KPoly Gs = f.G().dehom.taylor_shift(xi.center());
    const AbsVal r = xi.radius();
    auto dominant = [&](const KPoly& P) {
      std::size_t j = 0;
      AbsVal top = AbsVal::zero();
      for (std::size_t k = 0; k < P.size(); ++k) {
        if (negligible(P[k])) continue;
        AbsVal w = P[k].abs() * r.pow(static_cast<long>(k));
        if (w > top) {
          top = w;
          j = k;
        }
      }
      return j;
    };
    const std::size_t jd = dominant(Gs);
    const PadicScalar b = Fs.coeff(jd) / Gs[jd];
    const std::size_t jn = dominant(Fs - Gs * b);
    out.degree = std::abs(static_cast<int>(jn) - static_cast<int>(jd));
  }
  out.cls = out.degree == 1 ? PointClass::Indifferent : PointClass::Repelling;
  return out;
}

KForm period_polynomial(const RationalMap& f, int n) {
  if (f.exact()) {
    auto [a, b] = iterate_forms(f.exact()->first, f.exact()->second, n, mpq_class(1));
    QForm phi = period_form(a, b);
    return {to_k(f.field(), phi.dehom), phi.degree};
  }
  auto [a, b] = iterate_forms(f.F(), f.G(), n, PadicScalar::one(f.field()));
  KForm phi = period_form(a, b);
  return {clean(phi.dehom), phi.degree};
}

PointClass classify_multiplier(const AbsVal& m) {
  if (m < AbsVal::one()) return PointClass::Attracting;
  if (m == AbsVal::one()) return PointClass::Indifferent;
  return PointClass::Repelling;
}

PadicScalar cycle_multiplier(const RationalMap& f, const BerkPoint& x, int n) {
  const FieldPtr& F = f.field();
  const int d = f.degree();
  const KPoly& P = f.F().dehom;
  const KPoly& Q = f.G().dehom;
  const KPoly Ph = P.reversed(d), Qh = Q.reversed(d);
  const PadicScalar zero = PadicScalar::zero(F);
  PadicScalar m = PadicScalar::one(F);
  BerkPoint cur = x;
  for (int i = 0; i < n; ++i) {
    BerkPoint next = evaluate(f, cur);
    PadicScalar step;
    if (!cur.is_infinity()) {
      step = next.is_infinity() ? log_derivative_quotient(Q, P, cur.center())
                                : log_derivative_quotient(P, Q, cur.center());
    } else {
      step = next.is_infinity() ? log_derivative_quotient(Qh, Ph, zero) : log_derivative_quotient(Ph, Qh, zero);
    }
    m = m * step;
    cur = next;
  }
  return m;
}

PeriodicSolve periodic_points(const RationalMap& f, int n, const PeriodicOptions& opt) {
  if (n < 1 || n > opt.max_period) {
    throw Error(Errc::InvalidConfig, "period " + std::to_string(n) + " outside 1.." + std::to_string(opt.max_period));
  }
  const FieldPtr& F = f.field();
  const long N = F->precision();
  std::vector<int> divisors;
  for (int m = 1; m <= n; ++m) {
    if (n % m == 0) divisors.push_back(m);
  }
  std::vector<KForm> phis;
  for (int m : divisors) phis.push_back(period_polynomial(f, m));
  const KForm& phi = phis.back();
  if (phi.dehom.is_zero()) throw Error(Errc::Unsupported, "f^n is the identity");

  PeriodicSolve out;
  RootSet rs = find_roots(phi.dehom);
  for (const auto& u : rs.unsolved) {
    if (opt.strict && u.degree >= 3) {
      throw Error(Errc::IrreducibleFactorTooLarge,
                  std::to_string(u.degree) + " roots of valuation " + u.valuation.get_str() + " lie outside the field");
    }
    out.unsolved.push_back(u);
  }

  auto finish = [&](PeriodicPointRecord rec) {
    PadicScalar m = cycle_multiplier(f, rec.point, rec.period);
    rec.multiplier_abs = negligible(m) ? AbsVal::zero() : m.abs();
    rec.multiplier = m;
    rec.cls = classify_multiplier(rec.multiplier_abs);
    out.points.push_back(std::move(rec));
  };

  for (const auto& r : rs.roots) {
    PeriodicPointRecord rec;
    rec.point = BerkPoint::type1(r.value);
    rec.multiplicity = r.multiplicity;
    rec.certified = r.certified;
    const long margin = r.certified ? 8 : N - N / (2 * r.multiplicity);
    rec.period = n;
    for (std::size_t i = 0; i + 1 < divisors.size(); ++i) {
      if (residual_small(phis[i].dehom, r.value, margin)) {
        rec.period = divisors[i];
        break;
      }
    }
    finish(std::move(rec));
  }
  if (int k = phi.infinity_order(); k > 0) {
    PeriodicPointRecord rec;
    rec.point = BerkPoint::infinity();
    rec.multiplicity = k;
    rec.certified = true;
    BerkPoint cur = evaluate(f, rec.point);
    rec.period = 1;
    while (!cur.is_infinity() && rec.period < n) {
      cur = evaluate(f, cur);
      ++rec.period;
    }
    finish(std::move(rec));
  }
  return out;
}

PadicScalar cantor_coding(const PadicScalar& lambda0, const std::string& word) {
  if (word.empty() || word.find_first_not_of("01") != std::string::npos) {
    throw Error(Errc::InvalidConfig, "word must be a nonempty string over {0,1}");
  }
  const FieldPtr& F = lambda0.field();
  if (negligible(lambda0) || !(lambda0.abs() > AbsVal::one())) {
    throw Error(Errc::InvalidConfig, "the Cantor regime needs |lambda0| > 1");
  }
  auto root = [](const PadicScalar& x) {
    try {
      return x.sqrt();
    } catch (const Error& e) {
      if (e.code() == Errc::NotASquare || e.code() == Errc::OddValuation) {
        throw Error(Errc::BranchLeavesField, "sqrt(" + x.str() + ") is not in the working field");
      }
      throw;
    }
  };
  const PadicScalar s0 = root(-lambda0);
  const PadicScalar one = PadicScalar::one(F);
  // Each branch contracts by |lambda0|^(-1/2), i.e. c units of 1/e per letter.
  const long c = std::max(1L, -lambda0.valuation_units() / 2);
  const long passes = (F->e() * F->precision() + 8) / (c * static_cast<long>(word.size())) + 2;
  PadicScalar z = PadicScalar::zero(F);
  for (long pass = 0; pass < passes; ++pass) {
    PadicScalar prev = z;
    for (std::size_t k = word.size(); k-- > 0;) {
      PadicScalar g = s0 * root(one - z / lambda0);
      z = word[k] == '0' ? g : -g;
    }
    if (pass > 0 && z.equals_to_precision(prev)) break;
  }
  return z;
}

}  // namespace berkdyn
