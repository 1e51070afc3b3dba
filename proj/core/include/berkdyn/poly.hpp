#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <utility>
#include <vector>

#include "berkdyn/error.hpp"

namespace berkdyn {

/// Ring glue for Poly<T>. Specialised for each coefficient type the library
/// uses; the defaults cover mpq_class.
template <class T>
struct RingTraits {
  static bool is_zero(const T& x) { return x == 0; }
  static T zero_like(const T&) { return T(0); }
  static T from_int(const T&, long n) { return T(n); }
};

/// Dense univariate polynomial, coefficients in ascending degree order.
/// Trailing exact zeros are trimmed, so the zero polynomial has no
/// coefficients and degree -1.
template <class T>
class Poly {
 public:
  using Traits = RingTraits<T>;

  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  static Poly constant(T x) { return Poly(std::vector<T>{std::move(x)}); }
  /// x^k scaled by `one` (which also fixes the coefficient ring).
  static Poly monomial(const T& one, std::size_t k) {
    std::vector<T> v(k + 1, Traits::zero_like(one));
    v[k] = one;
    return Poly(std::move(v));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::size_t size() const { return c_.size(); }
  const std::vector<T>& coeffs() const { return c_; }

  const T& operator[](std::size_t i) const { return c_[i]; }
  /// Coefficient of z^i, zero beyond the degree.
  T coeff(std::size_t i) const {
    if (i < c_.size()) return c_[i];
    return c_.empty() ? T{} : Traits::zero_like(c_[0]);
  }
  const T& leading() const { return c_.back(); }

  void set(std::size_t i, T x) {
    if (i >= c_.size()) {
      T z = c_.empty() ? Traits::zero_like(x) : Traits::zero_like(c_[0]);
      c_.resize(i + 1, z);
    }
    c_[i] = std::move(x);
    trim();
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  friend Poly operator+(const Poly& x, const Poly& y) {
    if (x.c_.size() < y.c_.size()) return y + x;
    std::vector<T> v = x.c_;
    for (std::size_t i = 0; i < y.c_.size(); ++i) v[i] = v[i] + y.c_[i];
    return Poly(std::move(v));
  }
  friend Poly operator-(const Poly& x, const Poly& y) { return x + (-y); }

  friend Poly operator*(const Poly& x, const Poly& y) {
    if (x.is_zero() || y.is_zero()) return Poly();
    T z = Traits::zero_like(x.c_[0]);
    std::vector<T> v(x.c_.size() + y.c_.size() - 1, z);
    for (std::size_t i = 0; i < x.c_.size(); ++i) {
      if (Traits::is_zero(x.c_[i])) continue;
      for (std::size_t j = 0; j < y.c_.size(); ++j) {
        if (Traits::is_zero(y.c_[j])) continue;
        v[i + j] = v[i + j] + x.c_[i] * y.c_[j];
      }
    }
    return Poly(std::move(v));
  }

  friend Poly operator*(const Poly& x, const T& k) {
    std::vector<T> v = x.c_;
    for (auto& a : v) a = a * k;
    return Poly(std::move(v));
  }
  friend Poly operator*(const T& k, const Poly& x) { return x * k; }

  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly pow(unsigned k, const T& one) const {
    Poly result = constant(one);
    Poly base = *this;
    while (k) {
      if (k & 1u) result = result * base;
      k >>= 1u;
      if (k) base = base * base;
    }
    return result;
  }

  /// Horner evaluation at a point of a ring containing T's image.
  template <class U>
  U eval(const U& x, const U& zero) const {
    U acc = zero;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }
  T eval(const T& x) const {
    if (c_.empty()) return Traits::zero_like(x);
    return eval<T>(x, Traits::zero_like(x));
  }

  /// this(q(z)).
  Poly compose(const Poly& q) const {
    Poly acc;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * q + Poly::constant(c_[i]);
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<T> v;
    v.reserve(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) {
      v.push_back(c_[i] * Traits::from_int(c_[i], static_cast<long>(i)));
    }
    return Poly(std::move(v));
  }

  /// Coefficients of this(a + w) as a polynomial in w.
  Poly taylor_shift(const T& a) const {
    std::vector<T> v = c_;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = n - 1; j > i; --j) v[j - 1] = v[j - 1] + a * v[j];
    }
    return Poly(std::move(v));
  }

  /// z^d this(1/z) for d = max(degree, given degree).
  Poly reversed(int as_degree) const {
    std::vector<T> v(static_cast<std::size_t>(as_degree + 1),
                     c_.empty() ? T{} : Traits::zero_like(c_[0]));
    for (std::size_t i = 0; i < c_.size(); ++i) v[static_cast<std::size_t>(as_degree) - i] = c_[i];
    return Poly(std::move(v));
  }

  /// Multiplicity of z = 0 as a root (number of leading exact-zero coefficients).
  std::size_t low_order() const {
    std::size_t k = 0;
    while (k < c_.size() && Traits::is_zero(c_[k])) ++k;
    return k;
  }

  /// Drops the first k coefficients (division by z^k).
  Poly shift_down(std::size_t k) const {
    if (k >= c_.size()) return Poly();
    return Poly(std::vector<T>(c_.begin() + static_cast<long>(k), c_.end()));
  }
  Poly shift_up(std::size_t k) const {
    if (c_.empty()) return Poly();
    std::vector<T> v(k, Traits::zero_like(c_[0]));
    v.insert(v.end(), c_.begin(), c_.end());
    return Poly(std::move(v));
  }

  /// Euclidean division; T must be a field.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw Error(Errc::DivisionByZero, "polynomial division by zero");
    std::vector<T> r = c_;
    if (c_.size() < d.c_.size()) return {Poly(), *this};
    std::vector<T> q(c_.size() - d.c_.size() + 1, Traits::zero_like(d.c_[0]));
    const T& lead = d.leading();
    for (std::size_t k = q.size(); k-- > 0;) {
      T t = r[k + d.c_.size() - 1] / lead;
      q[k] = t;
      for (std::size_t j = 0; j < d.c_.size(); ++j) r[k + j] = r[k + j] - t * d.c_[j];
    }
    r.resize(d.c_.size() - 1);
    return {Poly(std::move(q)), Poly(std::move(r))};
  }

  friend bool operator==(const Poly& x, const Poly& y) { return x.c_ == y.c_; }

 private:
  void trim() {
    while (!c_.empty() && Traits::is_zero(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
};

template <class T>
struct RingTraits<Poly<T>> {
  static bool is_zero(const Poly<T>& x) { return x.is_zero(); }
  static Poly<T> zero_like(const Poly<T>&) { return Poly<T>(); }
  static Poly<T> from_int(const Poly<T>& like, long n) {
    if (n == 0) return Poly<T>();
    T seed = like.is_zero() ? T{} : like[0];
    return Poly<T>::constant(RingTraits<T>::from_int(seed, n));
  }
};

/// Polynomials in the family parameter with exact rational coefficients.
using LambdaPoly = Poly<mpq_class>;
/// Polynomials in z whose coefficients are polynomials in the parameter.
using BiPoly = Poly<LambdaPoly>;

/// Homogeneous binary form sum c_i X^i Y^(degree-i), stored through its
/// dehomogenisation c(z) = sum c_i z^i together with the formal degree.
template <class T>
struct HomPoly {
  Poly<T> dehom;
  int degree = 0;

  friend HomPoly operator*(const HomPoly& x, const HomPoly& y) {
    return {x.dehom * y.dehom, x.degree + y.degree};
  }
  friend HomPoly operator+(const HomPoly& x, const HomPoly& y) {
    if (x.degree != y.degree) throw Error(Errc::Unsupported, "adding forms of unequal degree");
    return {x.dehom + y.dehom, x.degree};
  }
  friend HomPoly operator-(const HomPoly& x, const HomPoly& y) {
    if (x.degree != y.degree) throw Error(Errc::Unsupported, "subtracting forms of unequal degree");
    return {x.dehom - y.dehom, x.degree};
  }
  /// Multiplicity of [1:0] as a root: the drop from formal to actual degree.
  int infinity_order() const { return dehom.is_zero() ? degree : degree - dehom.degree(); }
};

/// F(A, B) for a form F of degree d and forms A, B of a common degree.
template <class T>
HomPoly<T> compose_forms(const HomPoly<T>& form, const HomPoly<T>& a, const HomPoly<T>& b,
                         const T& one) {
  HomPoly<T> acc{Poly<T>(), form.degree * a.degree};
  for (int i = 0; i <= form.degree; ++i) {
    T ci = form.dehom.coeff(static_cast<std::size_t>(i));
    if (RingTraits<T>::is_zero(ci)) continue;
    Poly<T> term = a.dehom.pow(static_cast<unsigned>(i), one) *
                   b.dehom.pow(static_cast<unsigned>(form.degree - i), one) * ci;
    acc.dehom = acc.dehom + term;
  }
  return acc;
}

}  // namespace berkdyn
