#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "berkdyn/poly.hpp"

namespace berkdyn {

enum class ExtKind { None, Unramified, Ramified };

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// The working field: Q_p, or Q_p(sqrt d) for one configured d.
///
/// p is an odd prime and every scalar carries at most `precision` significant
/// p-adic digits per component. A unit d that is a nonresidue mod p gives the
/// unramified extension (residue field F_{p^2}); d = p*unit gives the
/// ramified one (valuations in (1/2)Z).
class Field {
 public:
  static FieldPtr create(long prime, long precision = 60,
                         std::optional<long> ext_square = std::nullopt);

  long p() const { return p_; }
  long precision() const { return precision_; }
  ExtKind ext() const { return ext_; }
  /// The adjoined square, normalised so that v_p(d) is 0 or 1. Zero when no extension.
  const mpz_class& ext_d() const { return d_; }
  /// The value originally passed at configuration time.
  std::optional<long> ext_square() const { return ext_square_; }
  /// Ramification index e: valuations live in (1/e)Z.
  long e() const { return ext_ == ExtKind::Ramified ? 2 : 1; }
  /// Residue degree f: residue field has p^f elements.
  long f() const { return ext_ == ExtKind::Unramified ? 2 : 1; }
  unsigned long q() const { return f() == 2 ? static_cast<unsigned long>(p_ * p_) : static_cast<unsigned long>(p_); }
  /// d mod p, the square of the residue generator t of F_{p^2}.
  unsigned long residue_d() const { return residue_d_; }
  /// Smallest number of relative digits a checked operation may return.
  long min_digits() const { return precision_ < 8 ? precision_ : 8; }

  /// p^k for k >= 0.
  mpz_class p_pow(long k) const;

  friend bool operator==(const Field& x, const Field& y) {
    return x.p_ == y.p_ && x.precision_ == y.precision_ && x.ext_ == y.ext_ && x.d_ == y.d_;
  }

  std::string describe() const;

 private:
  Field() = default;

  long p_ = 3;
  long precision_ = 60;
  ExtKind ext_ = ExtKind::None;
  mpz_class d_{0};
  std::optional<long> ext_square_;
  unsigned long residue_d_ = 0;
  std::vector<mpz_class> pow_cache_;
};

bool same_field(const FieldPtr& x, const FieldPtr& y);

/// Element c0 + c1*t of the residue field (t^2 = d mod p when the residue
/// field is F_{p^2}; otherwise c1 = 0).
class ResidueElem {
 public:
  ResidueElem() = default;
  ResidueElem(FieldPtr f, unsigned long c0, unsigned long c1 = 0);
  static ResidueElem from_int(FieldPtr f, long n);
  /// Element number i in the canonical enumeration c0 + p*c1.
  static ResidueElem from_index(FieldPtr f, unsigned long i);
  static std::vector<ResidueElem> all(const FieldPtr& f);

  const FieldPtr& field() const { return f_; }
  unsigned long c0() const { return c0_; }
  unsigned long c1() const { return c1_; }
  unsigned long index() const;
  bool is_zero() const { return c0_ == 0 && c1_ == 0; }

  ResidueElem operator-() const;
  friend ResidueElem operator+(const ResidueElem& x, const ResidueElem& y);
  friend ResidueElem operator-(const ResidueElem& x, const ResidueElem& y);
  friend ResidueElem operator*(const ResidueElem& x, const ResidueElem& y);
  friend ResidueElem operator/(const ResidueElem& x, const ResidueElem& y);
  ResidueElem inverse() const;
  ResidueElem pow(const mpz_class& k) const;

  friend bool operator==(const ResidueElem& x, const ResidueElem& y) {
    return x.c0_ == y.c0_ && x.c1_ == y.c1_;
  }

  std::string str() const;

 private:
  const FieldPtr& pick(const ResidueElem& o) const { return f_ ? f_ : o.f_; }

  FieldPtr f_;
  unsigned long c0_ = 0;
  unsigned long c1_ = 0;
};

template <>
struct RingTraits<ResidueElem> {
  static bool is_zero(const ResidueElem& x) { return x.is_zero(); }
  static ResidueElem zero_like(const ResidueElem& x) { return ResidueElem(x.field(), 0); }
  static ResidueElem from_int(const ResidueElem& x, long n) {
    return ResidueElem::from_int(x.field(), n);
  }
};

using ResiduePoly = Poly<ResidueElem>;

}  // namespace berkdyn
