#include "berkdyn/padic.hpp"

#include <algorithm>
#include <sstream>

#include "berkdyn/error.hpp"
#include "berkdyn/newton.hpp"

namespace berkdyn {

namespace detail {

namespace {

long remove_p(mpz_class& n, long p) {
  if (n == 0) return 0;
  mpz_class pz(p);
  return static_cast<long>(mpz_remove(n.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

mpz_class mod_pos(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class inverse_mod(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw Error(Errc::DivisionByZero, "unit is not invertible modulo p^k");
  }
  return r;
}

}  // namespace

Qp Qp::from_int(const Field& f, const mpz_class& n) {
  if (n == 0) return Qp{};
  mpz_class u = n;
  long v = remove_p(u, f.p());
  Qp r{false, v, v + f.precision(), 0};
  r.unit = mod_pos(u, f.p_pow(f.precision()));
  return r;
}

Qp Qp::from_rational(const Field& f, const mpq_class& x) {
  if (x == 0) return Qp{};
  mpz_class num = x.get_num();
  mpz_class den = x.get_den();
  long v = remove_p(num, f.p()) - remove_p(den, f.p());
  const mpz_class m = f.p_pow(f.precision());
  Qp r{false, v, v + f.precision(), 0};
  r.unit = mod_pos(num * inverse_mod(mod_pos(den, m), m), m);
  return r;
}

Qp cap(const Field& f, Qp x) {
  if (x.is_nonzero() && x.rel() > f.precision()) {
    x.abs = x.val + f.precision();
    x.unit = mod_pos(x.unit, f.p_pow(f.precision()));
  }
  return x;
}

Qp add(const Field& f, const Qp& x, const Qp& y) {
  if (x.exact_zero) return y;
  if (y.exact_zero) return x;
  const long abs = std::min(x.abs, y.abs);
  const bool ux = x.is_nonzero() && x.val < abs;
  const bool uy = y.is_nonzero() && y.val < abs;
  if (!ux && !uy) return Qp::inexact(abs);
  long base = LONG_MAX;
  if (ux) base = std::min(base, x.val);
  if (uy) base = std::min(base, y.val);
  mpz_class s = 0;
  if (ux) s += x.unit * f.p_pow(x.val - base);
  if (uy) s += y.unit * f.p_pow(y.val - base);
  s = mod_pos(s, f.p_pow(abs - base));
  if (s == 0) return Qp::inexact(abs);
  long k = remove_p(s, f.p());
  return cap(f, Qp{false, base + k, abs, s});
}

Qp neg(const Field& f, const Qp& x) {
  if (!x.is_nonzero()) return x;
  Qp r = x;
  r.unit = mod_pos(-x.unit, f.p_pow(x.rel()));
  return r;
}

Qp mul(const Field& f, const Qp& x, const Qp& y) {
  if (x.exact_zero || y.exact_zero) return Qp{};
  if (x.is_inexact_zero() && y.is_inexact_zero()) return Qp::inexact(x.abs + y.abs);
  if (x.is_inexact_zero()) return Qp::inexact(x.abs + y.val);
  if (y.is_inexact_zero()) return Qp::inexact(y.abs + x.val);
  const long rel = std::min(x.rel(), y.rel());
  Qp r{false, x.val + y.val, x.val + y.val + rel, 0};
  r.unit = mod_pos(x.unit * y.unit, f.p_pow(rel));
  return r;
}

Qp inv(const Field& f, const Qp& x) {
  if (x.exact_zero) throw Error(Errc::DivisionByZero, "division by exact zero");
  if (x.is_inexact_zero()) throw Error(Errc::PrecisionExhausted, "division by a value that is zero to precision");
  const long rel = x.rel();
  Qp r{false, -x.val, -x.val + rel, 0};
  r.unit = inverse_mod(x.unit, f.p_pow(rel));
  return r;
}

}  // namespace detail

using detail::Qp;

namespace {

long lower_units(const Qp& q, long e, long shift) {
  if (q.exact_zero) return LONG_MAX;
  return e * q.lower() + shift;
}

/// Residue mod p of a component known to be integral.
unsigned long residue_digit(const Qp& q, long p) {
  if (q.exact_zero) return 0;
  if (q.is_inexact_zero()) {
    if (q.abs >= 1) return 0;
    throw Error(Errc::PrecisionExhausted, "residue digit not known");
  }
  if (q.val > 0) return 0;
  if (q.val < 0) throw Error(Errc::NotIntegral, "component is not integral");
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), q.unit.get_mpz_t(), static_cast<unsigned long>(p));
  return r.get_ui();
}

unsigned long sqrt_mod_p(unsigned long a, unsigned long p) {
  using u128 = unsigned __int128;
  auto mulm = [p](unsigned long x, unsigned long y) {
    return static_cast<unsigned long>((static_cast<u128>(x) * y) % p);
  };
  auto powm = [&](unsigned long b, unsigned long e) {
    unsigned long r = 1;
    while (e) {
      if (e & 1) r = mulm(r, b);
      b = mulm(b, b);
      e >>= 1;
    }
    return r;
  };
  a %= p;
  if (a == 0) return 0;
  unsigned long q = p - 1;
  unsigned long s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  unsigned long z = 2;
  while (powm(z, (p - 1) / 2) != p - 1) ++z;
  unsigned long m = s;
  unsigned long c = powm(z, q);
  unsigned long t = powm(a, q);
  unsigned long r = powm(a, (q + 1) / 2);
  while (t != 1) {
    unsigned long i = 0;
    unsigned long tt = t;
    while (tt != 1) {
      tt = mulm(tt, tt);
      ++i;
    }
    unsigned long b = c;
    for (unsigned long j = 0; j + i + 1 < m; ++j) b = mulm(b, b);
    m = i;
    c = mulm(b, b);
    t = mulm(t, c);
    r = mulm(r, b);
  }
  return std::min(r, p - r);
}

/// Square root of a p-adic unit u modulo p^rel, lifted from the smallest
/// residue root.
mpz_class sqrt_unit(const Field& f, const mpz_class& u, long rel) {
  const unsigned long p = static_cast<unsigned long>(f.p());
  mpz_class ur;
  mpz_fdiv_r_ui(ur.get_mpz_t(), u.get_mpz_t(), p);
  mpz_class r = sqrt_mod_p(ur.get_ui(), p);
  long k = 1;
  while (k < rel) {
    k = std::min(2 * k, rel);
    mpz_class m = f.p_pow(k);
    mpz_class inv2r;
    mpz_class two_r = 2 * r;
    mpz_invert(inv2r.get_mpz_t(), two_r.get_mpz_t(), m.get_mpz_t());
    mpz_class delta = (r * r - u) * inv2r;
    r = r - delta;
    mpz_mod(r.get_mpz_t(), r.get_mpz_t(), m.get_mpz_t());
  }
  return r;
}

int legendre(const mpz_class& u, long p) {
  mpz_class pz(p);
  return mpz_legendre(u.get_mpz_t(), pz.get_mpz_t());
}

/// Ordering key that picks the canonical sign of a square root.
unsigned long sign_key(const PadicScalar& s) {
  return s.shift(-s.valuation_units()).reduce().index();
}

PadicScalar canonical_sign(const PadicScalar& s) {
  PadicScalar t = -s;
  return sign_key(t) < sign_key(s) ? t : s;
}

bool same_qp(const Qp& x, const Qp& y) {
  if (x.exact_zero || y.exact_zero) return x.exact_zero == y.exact_zero;
  return x.val == y.val && x.abs == y.abs && x.unit == y.unit;
}

std::optional<mpq_class> reconstruct(const Qp& q, long p) {
  if (q.exact_zero) return mpq_class(0);
  if (q.is_inexact_zero()) return std::nullopt;
  const long rel = q.rel();
  if (rel < 8) return std::nullopt;
  mpz_class m;
  mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(rel));
  mpz_class bound;
  mpz_ui_pow_ui(bound.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(rel / 4));
  mpz_class r0 = m, r1 = q.unit, s0 = 0, s1 = 1;
  while (r1 > bound) {
    mpz_class quo = r0 / r1;
    mpz_class r2 = r0 - quo * r1;
    mpz_class s2 = s0 - quo * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (s1 == 0 || abs(s1) > bound) return std::nullopt;
  mpz_class chk = r1 - s1 * q.unit;
  if (mpz_divisible_p(chk.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_divisible_ui_p(s1.get_mpz_t(), static_cast<unsigned long>(p)) != 0) return std::nullopt;
  mpq_class out(r1, s1);
  out.canonicalize();
  mpz_class pv;
  mpz_ui_pow_ui(pv.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(std::labs(q.val)));
  if (q.val >= 0) {
    out *= mpq_class(pv);
  } else {
    out /= mpq_class(pv);
  }
  return out;
}

std::string qp_str(const Qp& q, long p) {
  if (q.exact_zero) return "0";
  if (q.is_inexact_zero()) return "O(p^" + std::to_string(q.abs) + ")";
  if (auto r = reconstruct(q, p)) return r->get_str();
  return "padic(" + std::to_string(q.val) + "," + base_p_digits(q.unit, p, q.rel()) + ")";
}

}  // namespace

std::string base_p_digits(const mpz_class& n, long p, long min_len) {
  std::vector<std::string> digits;
  mpz_class x = n;
  const std::string alphabet = "0123456789abcdefghijklmnopqrstuvwxyz";
  while (x > 0 || static_cast<long>(digits.size()) < min_len) {
    mpz_class d;
    mpz_fdiv_qr_ui(x.get_mpz_t(), d.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p));
    unsigned long dv = d.get_ui();
    digits.push_back(p <= 36 ? std::string(1, alphabet[dv]) : std::to_string(dv));
    if (x == 0 && static_cast<long>(digits.size()) >= min_len) break;
  }
  if (digits.empty()) digits.emplace_back("0");
  std::string out;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
    if (p > 36 && !out.empty()) out += ".";
    out += *it;
  }
  return out;
}

PadicScalar::PadicScalar(FieldPtr f, long n) : PadicScalar(f, mpz_class(n)) {}

PadicScalar::PadicScalar(FieldPtr f, const mpz_class& n) : f_(std::move(f)) {
  a_ = Qp::from_int(*f_, n);
}

PadicScalar::PadicScalar(FieldPtr f, const mpq_class& x) : f_(std::move(f)) {
  a_ = Qp::from_rational(*f_, x);
}

PadicScalar::PadicScalar(FieldPtr f, Qp a, Qp b) : f_(std::move(f)), a_(std::move(a)), b_(std::move(b)) {
  if (f_ && f_->ext() == ExtKind::None && !b_.exact_zero) {
    throw Error(Errc::InvalidConfig, "extension coordinate without a configured extension");
  }
}

PadicScalar PadicScalar::alpha(FieldPtr f) {
  if (f->ext() == ExtKind::None) throw Error(Errc::InvalidConfig, "no extension configured");
  Qp one = Qp::from_int(*f, 1);
  return PadicScalar(f, Qp{}, one);
}

PadicScalar PadicScalar::uniformizer(FieldPtr f) {
  if (f->ext() == ExtKind::Ramified) return alpha(f);
  return PadicScalar(f, f->p());
}

PadicScalar PadicScalar::pi_pow(FieldPtr f, long k) {
  if (f->ext() != ExtKind::Ramified) {
    Qp q{false, k, k + f->precision(), 1};
    return PadicScalar(f, q);
  }
  return uniformizer(f).pow(k);
}

PadicScalar PadicScalar::from_digits(FieldPtr f, long val, const mpz_class& unit, long prec) {
  if (prec <= 0) return zero_to(f, val);
  mpz_class u;
  mpz_class m = f->p_pow(prec);
  mpz_mod(u.get_mpz_t(), unit.get_mpz_t(), m.get_mpz_t());
  if (mpz_divisible_ui_p(u.get_mpz_t(), static_cast<unsigned long>(f->p())) != 0) {
    throw Error(Errc::InvalidConfig, "unit digits must not be divisible by p");
  }
  Qp q{false, val, val + prec, u};
  return PadicScalar(f, detail::cap(*f, q));
}

PadicScalar PadicScalar::zero_to(FieldPtr f, long abs_prec) {
  return PadicScalar(std::move(f), Qp::inexact(abs_prec));
}

PadicScalar PadicScalar::lift(FieldPtr f, const ResidueElem& r) {
  Qp a = Qp::from_int(*f, r.c0());
  Qp b = r.c1() == 0 ? Qp{} : Qp::from_int(*f, r.c1());
  return PadicScalar(std::move(f), a, b);
}

bool PadicScalar::is_zero_to_precision() const {
  return !is_exact_zero() && !valuation_units_opt().has_value();
}

std::optional<long> PadicScalar::valuation_units_opt() const {
  if (is_exact_zero()) return std::nullopt;
  const long e = f_->e();
  const long shift = e == 2 ? 1 : 0;
  long known = LONG_MAX;
  long bound = LONG_MAX;
  if (a_.is_nonzero()) known = std::min(known, e * a_.val);
  if (a_.is_inexact_zero()) bound = std::min(bound, e * a_.abs);
  if (b_.is_nonzero()) known = std::min(known, e * b_.val + shift);
  if (b_.is_inexact_zero()) bound = std::min(bound, e * b_.abs + shift);
  if (known == LONG_MAX || known > bound) return std::nullopt;
  return known;
}

long PadicScalar::valuation_units() const {
  if (is_exact_zero()) throw Error(Errc::DivisionByZero, "valuation of exact zero is infinite");
  auto v = valuation_units_opt();
  if (!v) throw Error(Errc::PrecisionExhausted, "value is zero to precision " + str());
  return *v;
}

mpq_class PadicScalar::valuation() const {
  mpq_class v(valuation_units(), f_->e());
  v.canonicalize();
  return v;
}

long PadicScalar::lower_bound_units() const {
  if (is_exact_zero()) return LONG_MAX;
  const long e = f_->e();
  return std::min(lower_units(a_, e, 0), lower_units(b_, e, e == 2 ? 1 : 0));
}

long PadicScalar::absolute_precision_units() const {
  if (is_exact_zero()) return LONG_MAX;
  const long e = f_->e();
  long r = LONG_MAX;
  if (!a_.exact_zero) r = std::min(r, e * a_.abs);
  if (!b_.exact_zero) r = std::min(r, e * b_.abs + (e == 2 ? 1 : 0));
  return r;
}

long PadicScalar::relative_precision_units() const {
  return absolute_precision_units() - valuation_units();
}

AbsVal PadicScalar::abs() const {
  if (is_exact_zero()) return AbsVal::zero();
  return AbsVal::from_exp(RadiusExp(valuation()));
}

PadicScalar PadicScalar::operator-() const {
  if (!f_) return *this;
  return PadicScalar(f_, detail::neg(*f_, a_), detail::neg(*f_, b_));
}

PadicScalar operator+(const PadicScalar& x, const PadicScalar& y) {
  const FieldPtr& f = x.pick(y);
  if (!f) return PadicScalar();
  if (!same_field(x.f_, y.f_)) throw Error(Errc::InvalidConfig, "mixing scalars from different fields");
  return PadicScalar(f, detail::add(*f, x.a_, y.a_), detail::add(*f, x.b_, y.b_));
}

PadicScalar operator-(const PadicScalar& x, const PadicScalar& y) { return x + (-y); }

PadicScalar operator*(const PadicScalar& x, const PadicScalar& y) {
  const FieldPtr& f = x.pick(y);
  if (!f) return PadicScalar();
  if (!same_field(x.f_, y.f_)) throw Error(Errc::InvalidConfig, "mixing scalars from different fields");
  const Field& F = *f;
  if (x.b_.exact_zero && y.b_.exact_zero) return PadicScalar(f, detail::mul(F, x.a_, y.a_));
  Qp d = Qp::from_int(F, F.ext_d());
  Qp re = detail::add(F, detail::mul(F, x.a_, y.a_), detail::mul(F, d, detail::mul(F, x.b_, y.b_)));
  Qp im = detail::add(F, detail::mul(F, x.a_, y.b_), detail::mul(F, x.b_, y.a_));
  return PadicScalar(f, re, im);
}

PadicScalar PadicScalar::inverse() const {
  if (is_exact_zero()) throw Error(Errc::DivisionByZero, "division by exact zero");
  const Field& F = *f_;
  if (b_.exact_zero) return PadicScalar(f_, detail::inv(F, a_));
  if (!valuation_units_opt()) throw Error(Errc::PrecisionExhausted, "division by a value that is zero to precision");
  Qp d = Qp::from_int(F, F.ext_d());
  Qp norm = detail::add(F, detail::mul(F, a_, a_), detail::neg(F, detail::mul(F, d, detail::mul(F, b_, b_))));
  Qp ninv = detail::inv(F, norm);
  return PadicScalar(f_, detail::mul(F, a_, ninv), detail::neg(F, detail::mul(F, b_, ninv)));
}

PadicScalar operator/(const PadicScalar& x, const PadicScalar& y) {
  if (y.is_exact_zero()) throw Error(Errc::DivisionByZero, "division by exact zero");
  if (x.is_exact_zero()) return PadicScalar::zero(y.f_);
  return x * y.inverse();
}

PadicScalar PadicScalar::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  PadicScalar result = one(f_);
  PadicScalar base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

PadicScalar PadicScalar::shift(long k) const {
  if (is_exact_zero() || k == 0) return *this;
  if (f_->ext() == ExtKind::Ramified) return *this * pi_pow(f_, k);
  auto sh = [k](Qp q) {
    if (!q.exact_zero) {
      q.val += k;
      q.abs += k;
    }
    return q;
  };
  return PadicScalar(f_, sh(a_), sh(b_));
}

ResidueElem PadicScalar::reduce() const {
  if (!f_) throw Error(Errc::InvalidConfig, "reduce of fieldless zero");
  if (is_exact_zero()) return ResidueElem(f_, 0);
  auto v = valuation_units_opt();
  if (!v) {
    if (lower_bound_units() >= 1) return ResidueElem(f_, 0);
    throw Error(Errc::PrecisionExhausted, "residue of a value that is zero to precision");
  }
  if (*v < 0) throw Error(Errc::NotIntegral, "reduce of a non-integral element " + str());
  if (*v > 0) return ResidueElem(f_, 0);
  const long p = f_->p();
  if (f_->ext() == ExtKind::Unramified) return ResidueElem(f_, residue_digit(a_, p), residue_digit(b_, p));
  return ResidueElem(f_, residue_digit(a_, p));
}

PadicScalar PadicScalar::sqrt() const {
  if (is_exact_zero()) return *this;
  const long vu = valuation_units();
  const Field& F = *f_;
  const long p = F.p();
  if (!b_.exact_zero) {
    KPoly poly(std::vector<PadicScalar>{-*this, zero(f_), one(f_)});
    RootSet rs = find_roots(poly);
    for (const auto& r : rs.roots) {
      if (r.certified && r.multiplicity == 1 && !r.value.is_zero_to_precision()) return canonical_sign(r.value);
    }
    throw Error(Errc::NotASquare, str() + " is not a square in the working field");
  }
  const long v = a_.val;
  const long rel = a_.rel();
  const mpz_class& u = a_.unit;
  (void)vu;
  if (v % 2 == 0) {
    if (legendre(u, p) == 1) {
      Qp s{false, v / 2, v / 2 + rel, sqrt_unit(F, u, rel)};
      return canonical_sign(PadicScalar(f_, s));
    }
    if (F.ext() == ExtKind::Unramified) {
      // u/d is a residue; sqrt(u) = sqrt(u/d) * alpha.
      mpz_class m = F.p_pow(rel);
      mpz_class dinv;
      mpz_class dm = F.ext_d();
      mpz_mod(dm.get_mpz_t(), dm.get_mpz_t(), m.get_mpz_t());
      mpz_invert(dinv.get_mpz_t(), dm.get_mpz_t(), m.get_mpz_t());
      mpz_class w = u * dinv;
      mpz_mod(w.get_mpz_t(), w.get_mpz_t(), m.get_mpz_t());
      Qp s{false, v / 2, v / 2 + rel, sqrt_unit(F, w, rel)};
      return canonical_sign(PadicScalar(f_, Qp{}, s));
    }
    throw Error(Errc::NotASquare, str() + " is not a square in the working field");
  }
  if (F.ext() != ExtKind::Ramified) {
    throw Error(Errc::OddValuation, str() + " has odd valuation " + std::to_string(v));
  }
  // x = p^(v-1) * p * u and p = d / w with w = d / p a unit.
  mpz_class w = F.ext_d() / p;
  mpz_class m = F.p_pow(rel);
  mpz_class wm;
  mpz_mod(wm.get_mpz_t(), w.get_mpz_t(), m.get_mpz_t());
  mpz_class winv;
  mpz_invert(winv.get_mpz_t(), wm.get_mpz_t(), m.get_mpz_t());
  mpz_class t = u * winv;
  mpz_mod(t.get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
  if (legendre(t, p) != 1) throw Error(Errc::NotASquare, str() + " is not a square in the working field");
  Qp s{false, (v - 1) / 2, (v - 1) / 2 + rel, sqrt_unit(F, t, rel)};
  return canonical_sign(PadicScalar(f_, Qp{}, s));
}

std::optional<mpq_class> PadicScalar::to_rational() const {
  if (is_exact_zero()) return mpq_class(0);
  if (!b_.exact_zero) return std::nullopt;
  return reconstruct(a_, f_->p());
}

bool PadicScalar::equals_to_precision(const PadicScalar& y) const {
  PadicScalar d = *this - y;
  return d.is_exact_zero() || d.is_zero_to_precision();
}

bool operator==(const PadicScalar& x, const PadicScalar& y) {
  if (!same_field(x.f_, y.f_)) return false;
  return same_qp(x.a_, y.a_) && same_qp(x.b_, y.b_);
}

std::string PadicScalar::str() const {
  if (is_exact_zero()) return "0";
  const long p = f_->p();
  if (b_.exact_zero) return qp_str(a_, p);
  std::string im = qp_str(b_, p) + "*sqrt(" + f_->ext_d().get_str() + ")";
  if (a_.exact_zero) return im;
  return qp_str(a_, p) + " + " + im;
}

PadicScalar arith(const PadicScalar& x, const PadicScalar& y, ArithOp op) {
  PadicScalar r;
  switch (op) {
    case ArithOp::Add: r = x + y; break;
    case ArithOp::Sub: r = x - y; break;
    case ArithOp::Mul: r = x * y; break;
    case ArithOp::Div: r = x / y; break;
  }
  if (r.is_exact_zero()) return r;
  if (!r.valuation_units_opt()) {
    throw Error(Errc::PrecisionExhausted, "cancellation consumed every tracked digit");
  }
  const FieldPtr& f = r.field();
  long floor = f->e() * f->min_digits();
  for (const PadicScalar* in : {&x, &y}) {
    if (!in->is_exact_zero() && in->valuation_units_opt()) floor = std::min(floor, in->relative_precision_units());
  }
  if (r.relative_precision_units() < floor) {
    throw Error(Errc::PrecisionExhausted, "result keeps too few significant digits");
  }
  return r;
}

bool residual_small(const KPoly& poly, const PadicScalar& x, long margin_digits) {
  if (poly.is_zero()) return true;
  PadicScalar value = poly.eval(x);
  if (value.is_exact_zero()) return true;
  const FieldPtr& f = value.field();
  const long xv = x.is_exact_zero() ? LONG_MAX / 4 : x.lower_bound_units();
  long scale = LONG_MAX;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const PadicScalar& c = poly[i];
    if (c.is_exact_zero()) continue;
    long cv = c.lower_bound_units();
    if (i > 0 && xv >= LONG_MAX / 8) continue;
    scale = std::min(scale, cv + static_cast<long>(i) * xv);
  }
  if (scale == LONG_MAX) return true;
  return value.lower_bound_units() >= scale + f->e() * (f->precision() - margin_digits);
}

}  // namespace berkdyn
