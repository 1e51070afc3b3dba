#pragma once

#include <gmpxx.h>

#include <climits>
#include <optional>
#include <string>

#include "berkdyn/exponent.hpp"
#include "berkdyn/field.hpp"
#include "berkdyn/poly.hpp"

namespace berkdyn {

namespace detail {

/// One Q_p coordinate: exact zero, or p^val * unit known modulo p^abs.
/// unit == 0 encodes an inexact zero O(p^abs).
struct Qp {
  bool exact_zero = true;
  long val = 0;
  long abs = 0;
  mpz_class unit{0};

  static Qp zero() { return {}; }
  static Qp from_int(const Field& f, const mpz_class& n);
  static Qp from_rational(const Field& f, const mpq_class& x);
  static Qp inexact(long abs_prec) { return {false, abs_prec, abs_prec, 0}; }

  bool is_inexact_zero() const { return !exact_zero && unit == 0; }
  bool is_nonzero() const { return !exact_zero && unit != 0; }
  long rel() const { return is_nonzero() ? abs - val : 0; }
  /// Lower bound on the valuation (exact when nonzero).
  long lower() const { return exact_zero ? LONG_MAX : (unit == 0 ? abs : val); }
};

Qp add(const Field& f, const Qp& x, const Qp& y);
Qp neg(const Field& f, const Qp& x);
Qp mul(const Field& f, const Qp& x, const Qp& y);
Qp inv(const Field& f, const Qp& x);
/// Truncates relative precision to at most f.precision() digits.
Qp cap(const Field& f, Qp x);

}  // namespace detail

/// Element a + b*alpha of the working field (alpha^2 = d; b is exact zero
/// when no extension is configured), carried to finite p-adic precision.
///
/// Arithmetic never throws on cancellation: a result whose digits cancel
/// completely becomes "zero to precision" O(p^k). Asking such a value for its
/// valuation, absolute value or residue raises PrecisionExhausted. Valuations
/// are rationals in (1/e)Z.
class PadicScalar {
 public:
  /// Fieldless exact zero; adopts the other operand's field in arithmetic.
  PadicScalar() = default;
  PadicScalar(FieldPtr f, long n);
  PadicScalar(FieldPtr f, const mpz_class& n);
  PadicScalar(FieldPtr f, const mpq_class& x);
  PadicScalar(FieldPtr f, detail::Qp a, detail::Qp b = {});

  static PadicScalar zero(FieldPtr f) { return PadicScalar(std::move(f), detail::Qp{}); }
  static PadicScalar one(FieldPtr f) { return PadicScalar(std::move(f), 1L); }
  /// alpha = sqrt(d). Throws InvalidConfig when no extension is configured.
  static PadicScalar alpha(FieldPtr f);
  /// The uniformizer: p, or alpha when ramified.
  static PadicScalar uniformizer(FieldPtr f);
  /// pi^k in units of the uniformizer (k may be negative).
  static PadicScalar pi_pow(FieldPtr f, long k);
  /// p^val * unit with `prec` relative digits (base-field element).
  static PadicScalar from_digits(FieldPtr f, long val, const mpz_class& unit, long prec);
  /// O(p^k) in the base coordinate: known to vanish to absolute precision k.
  static PadicScalar zero_to(FieldPtr f, long abs_prec);
  /// Canonical Teichmuller-free lift c0 + c1*alpha with 0 <= c_i < p.
  static PadicScalar lift(FieldPtr f, const ResidueElem& r);

  const FieldPtr& field() const { return f_; }
  const detail::Qp& re() const { return a_; }
  const detail::Qp& im() const { return b_; }

  bool is_exact_zero() const { return a_.exact_zero && b_.exact_zero; }
  /// Not exact zero, yet no digit is known to be nonzero.
  bool is_zero_to_precision() const;
  bool in_base_field() const { return b_.exact_zero; }

  /// Valuation in units of 1/e, if determined by the known digits.
  std::optional<long> valuation_units_opt() const;
  /// Valuation in units of 1/e; PrecisionExhausted when undetermined.
  long valuation_units() const;
  /// v(x) as a rational.
  mpq_class valuation() const;
  /// A lower bound on the valuation in units of 1/e (LONG_MAX for exact zero).
  long lower_bound_units() const;
  /// Absolute precision in units of 1/e (LONG_MAX for exact zero).
  long absolute_precision_units() const;
  /// Relative precision in units of 1/e of a value with known valuation.
  long relative_precision_units() const;

  /// |x| = p^-v(x); exact zero gives AbsVal::zero().
  AbsVal abs() const;

  PadicScalar operator-() const;
  friend PadicScalar operator+(const PadicScalar& x, const PadicScalar& y);
  friend PadicScalar operator-(const PadicScalar& x, const PadicScalar& y);
  friend PadicScalar operator*(const PadicScalar& x, const PadicScalar& y);
  friend PadicScalar operator/(const PadicScalar& x, const PadicScalar& y);
  PadicScalar& operator+=(const PadicScalar& o) { return *this = *this + o; }
  PadicScalar& operator-=(const PadicScalar& o) { return *this = *this - o; }
  PadicScalar& operator*=(const PadicScalar& o) { return *this = *this * o; }
  PadicScalar inverse() const;
  PadicScalar pow(long k) const;
  /// x times pi^k, exact shift of precision.
  PadicScalar shift(long k) const;

  /// Residue class of an integral element.
  ResidueElem reduce() const;
  /// The square root whose leading residue digit is canonical (smallest index).
  PadicScalar sqrt() const;
  /// Rational reconstruction from the known digits, if a small one exists.
  std::optional<mpq_class> to_rational() const;

  /// x - y vanishes to the available precision (or exactly).
  bool equals_to_precision(const PadicScalar& y) const;
  /// Structural identity: same digits and precision.
  friend bool operator==(const PadicScalar& x, const PadicScalar& y);

  std::string str() const;

 private:
  const FieldPtr& pick(const PadicScalar& o) const { return f_ ? f_ : o.f_; }

  FieldPtr f_;
  detail::Qp a_;
  detail::Qp b_;
};

enum class ArithOp { Add, Sub, Mul, Div };

/// Checked arithmetic: raises DivisionByZero, or PrecisionExhausted when the
/// result keeps fewer than min(8, N) significant digits.
PadicScalar arith(const PadicScalar& x, const PadicScalar& y, ArithOp op);

/// Digits of a nonnegative integer in base p, most significant first.
std::string base_p_digits(const mpz_class& n, long p, long min_len);

template <>
struct RingTraits<PadicScalar> {
  static bool is_zero(const PadicScalar& x) { return x.is_exact_zero(); }
  static PadicScalar zero_like(const PadicScalar& x) { return PadicScalar::zero(x.field()); }
  static PadicScalar from_int(const PadicScalar& x, long n) { return PadicScalar(x.field(), n); }
};

using KPoly = Poly<PadicScalar>;

/// Relative residual test used to certify roots: v(P(x)) is at least
/// (precision - margin) digits above min_i v(c_i x^i).
bool residual_small(const KPoly& poly, const PadicScalar& x, long margin_digits = 8);

}  // namespace berkdyn
