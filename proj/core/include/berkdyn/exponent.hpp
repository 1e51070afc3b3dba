#pragma once

#include <gmpxx.h>

#include <compare>
#include <string>

namespace berkdyn {

/// Exact real number a + b*sqrt(2) with rational a, b.
///
/// Used as an exponent: a radius or absolute value is p^-(a + b*sqrt2), and
/// hyperbolic distances are measured in units of log p. Irrational parts model
/// radii outside the value group, so every comparison stays exact.
class RadiusExp {
 public:
  RadiusExp() = default;
  RadiusExp(mpq_class a, mpq_class b = 0) : a_(std::move(a)), b_(std::move(b)) {
    a_.canonicalize();
    b_.canonicalize();
  }
  RadiusExp(long a) : a_(a), b_(0) {}

  const mpq_class& a() const { return a_; }
  const mpq_class& b() const { return b_; }

  bool is_rational() const { return b_ == 0; }

  /// -1, 0 or +1.
  int sign() const;

  RadiusExp operator-() const { return {-a_, -b_}; }
  RadiusExp& operator+=(const RadiusExp& o);
  RadiusExp& operator-=(const RadiusExp& o);
  RadiusExp& operator*=(const mpq_class& k);

  friend RadiusExp operator+(RadiusExp x, const RadiusExp& y) { return x += y; }
  friend RadiusExp operator-(RadiusExp x, const RadiusExp& y) { return x -= y; }
  friend RadiusExp operator*(RadiusExp x, const mpq_class& k) { return x *= k; }
  friend RadiusExp operator*(const mpq_class& k, RadiusExp x) { return x *= k; }

  friend bool operator==(const RadiusExp& x, const RadiusExp& y) {
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend std::strong_ordering operator<=>(const RadiusExp& x, const RadiusExp& y) {
    int s = (x - y).sign();
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// "a" or "a+b*sqrt2" with rationals printed as n or n/d.
  std::string str() const;

 private:
  mpq_class a_{0};
  mpq_class b_{0};
};

RadiusExp min(const RadiusExp& x, const RadiusExp& y);
RadiusExp max(const RadiusExp& x, const RadiusExp& y);

/// A non-negative real of the form 0 or p^-e with e a RadiusExp.
///
/// Ordering is by the real value, so a larger exponent means a smaller value.
class AbsVal {
 public:
  static AbsVal zero() { return AbsVal(); }
  static AbsVal one() { return AbsVal(RadiusExp(0)); }
  static AbsVal from_exp(RadiusExp e) { return AbsVal(std::move(e)); }

  bool is_zero() const { return zero_; }
  /// Exponent e with value p^-e. Undefined for zero.
  const RadiusExp& exp() const { return e_; }

  friend AbsVal operator*(const AbsVal& x, const AbsVal& y);
  friend AbsVal operator/(const AbsVal& x, const AbsVal& y);
  /// x^k for integer k (k < 0 requires x nonzero).
  AbsVal pow(long k) const;

  friend bool operator==(const AbsVal& x, const AbsVal& y) {
    return x.zero_ == y.zero_ && (x.zero_ || x.e_ == y.e_);
  }
  friend std::strong_ordering operator<=>(const AbsVal& x, const AbsVal& y);

  /// "0" or "p^-(e)".
  std::string str() const;

 private:
  AbsVal() = default;
  explicit AbsVal(RadiusExp e) : zero_(false), e_(std::move(e)) {}

  bool zero_ = true;
  RadiusExp e_;
};

AbsVal max(const AbsVal& x, const AbsVal& y);
AbsVal min(const AbsVal& x, const AbsVal& y);

/// Parses "n", "n/d", "a+b*sqrt2", "b*sqrt2" forms produced by RadiusExp::str.
RadiusExp parse_radius_exp(const std::string& text);

}  // namespace berkdyn
