#include "berkdyn/field.hpp"

#include <sstream>

#include "berkdyn/error.hpp"

namespace berkdyn {

namespace {

unsigned long mod_ul(long n, long p) {
  long r = n % p;
  return static_cast<unsigned long>(r < 0 ? r + p : r);
}

}  // namespace

FieldPtr Field::create(long prime, long precision, std::optional<long> ext_square) {
  if (prime < 3) throw Error(Errc::InvalidConfig, "prime must be an odd prime, got " + std::to_string(prime));
  mpz_class pz(prime);
  if (mpz_probab_prime_p(pz.get_mpz_t(), 30) == 0) {
    throw Error(Errc::InvalidConfig, std::to_string(prime) + " is not prime");
  }
  if (precision < 1) throw Error(Errc::InvalidConfig, "precision must be positive");

  auto f = std::shared_ptr<Field>(new Field());
  f->p_ = prime;
  f->precision_ = precision;
  f->ext_square_ = ext_square;
  if (ext_square) {
    long d = *ext_square;
    if (d == 0) throw Error(Errc::InvalidConfig, "extension square must be nonzero");
    // Strip p^2 factors: sqrt(p^2 d') = p sqrt(d') generates the same field.
    while (d % (prime * prime) == 0) d /= prime * prime;
    if (d % prime == 0) {
      f->ext_ = ExtKind::Ramified;
    } else {
      mpz_class dz(d);
      if (mpz_legendre(dz.get_mpz_t(), pz.get_mpz_t()) == 1) {
        throw Error(Errc::InvalidConfig,
                    std::to_string(*ext_square) + " is already a square in Q_" + std::to_string(prime));
      }
      f->ext_ = ExtKind::Unramified;
      f->residue_d_ = mod_ul(d, prime);
    }
    f->d_ = d;
  }
  f->pow_cache_.reserve(static_cast<std::size_t>(4 * precision + 8));
  mpz_class acc = 1;
  for (long k = 0; k < 4 * precision + 8; ++k) {
    f->pow_cache_.push_back(acc);
    acc *= prime;
  }
  return f;
}

mpz_class Field::p_pow(long k) const {
  if (k < 0) throw Error(Errc::Unsupported, "negative power in p_pow");
  if (static_cast<std::size_t>(k) < pow_cache_.size()) return pow_cache_[static_cast<std::size_t>(k)];
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p_), static_cast<unsigned long>(k));
  return r;
}

std::string Field::describe() const {
  std::ostringstream os;
  os << "Q_" << p_;
  if (ext_ != ExtKind::None) os << "(sqrt(" << d_.get_str() << "))";
  os << " @" << precision_;
  return os.str();
}

bool same_field(const FieldPtr& x, const FieldPtr& y) {
  if (!x || !y) return true;
  return x == y || *x == *y;
}

ResidueElem::ResidueElem(FieldPtr f, unsigned long c0, unsigned long c1)
    : f_(std::move(f)), c0_(c0), c1_(c1) {
  if (f_) {
    auto p = static_cast<unsigned long>(f_->p());
    c0_ %= p;
    c1_ = f_->f() == 2 ? c1_ % p : 0;
  }
}

ResidueElem ResidueElem::from_int(FieldPtr f, long n) {
  long p = f->p();
  return ResidueElem(f, mod_ul(n, p), 0);
}

ResidueElem ResidueElem::from_index(FieldPtr f, unsigned long i) {
  auto p = static_cast<unsigned long>(f->p());
  return ResidueElem(f, i % p, i / p);
}

std::vector<ResidueElem> ResidueElem::all(const FieldPtr& f) {
  std::vector<ResidueElem> out;
  out.reserve(f->q());
  for (unsigned long i = 0; i < f->q(); ++i) out.push_back(from_index(f, i));
  return out;
}

unsigned long ResidueElem::index() const {
  return f_ ? c0_ + static_cast<unsigned long>(f_->p()) * c1_ : c0_;
}

ResidueElem ResidueElem::operator-() const {
  if (!f_) return *this;
  auto p = static_cast<unsigned long>(f_->p());
  return ResidueElem(f_, (p - c0_) % p, (p - c1_) % p);
}

ResidueElem operator+(const ResidueElem& x, const ResidueElem& y) {
  const FieldPtr& f = x.pick(y);
  if (!f) return ResidueElem();
  return ResidueElem(f, x.c0_ + y.c0_, x.c1_ + y.c1_);
}

ResidueElem operator-(const ResidueElem& x, const ResidueElem& y) { return x + (-y); }

ResidueElem operator*(const ResidueElem& x, const ResidueElem& y) {
  const FieldPtr& f = x.pick(y);
  if (!f) return ResidueElem();
  using u128 = unsigned __int128;
  const u128 p = static_cast<u128>(f->p());
  const u128 d = f->residue_d();
  u128 a = x.c0_, b = x.c1_, c = y.c0_, e = y.c1_;
  u128 r0 = (a * c + ((b * e) % p) * d) % p;
  u128 r1 = (a * e + b * c) % p;
  return ResidueElem(f, static_cast<unsigned long>(r0), static_cast<unsigned long>(r1));
}

ResidueElem ResidueElem::pow(const mpz_class& k) const {
  ResidueElem result = ResidueElem::from_int(f_, 1);
  ResidueElem base = *this;
  mpz_class e = k;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

ResidueElem ResidueElem::inverse() const {
  if (is_zero()) throw Error(Errc::DivisionByZero, "inverse of zero in residue field");
  return pow(mpz_class(f_->q()) - 2);
}

ResidueElem operator/(const ResidueElem& x, const ResidueElem& y) { return x * y.inverse(); }

std::string ResidueElem::str() const {
  if (c1_ == 0) return std::to_string(c0_);
  std::string t = (c1_ == 1 ? std::string() : std::to_string(c1_) + "*") + "t";
  return c0_ == 0 ? t : std::to_string(c0_) + "+" + t;
}

}  // namespace berkdyn
