#include "berkdyn/parse.hpp"

#include <cctype>
#include <istream>

#include "berkdyn/error.hpp"

namespace berkdyn {

namespace {

struct Frac {
  BiPoly num;
  BiPoly den;
};

BiPoly bconst(const mpq_class& c) { return c == 0 ? BiPoly() : BiPoly::constant(LambdaPoly::constant(c)); }

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  RationalExpr run() {
    Frac f = expr();
    skip();
    if (i_ != s_.size()) throw ParseError(i_, std::string("unexpected '") + s_[i_] + "'");
    return {f.num, f.den, uses_z_, uses_l_};
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  Frac expr() {
    Frac acc = term();
    for (;;) {
      if (eat('+')) acc = add(acc, term(), false);
      else if (eat('-')) acc = add(acc, term(), true);
      else return acc;
    }
  }

  Frac term() {
    Frac acc = unary();
    for (;;) {
      if (eat('*')) {
        Frac r = unary();
        acc = {acc.num * r.num, acc.den * r.den};
      } else {
        skip();
        const std::size_t at = i_;
        if (!eat('/')) return acc;
        Frac r = unary();
        if (r.num.is_zero()) throw ParseError(at, "division by zero");
        acc = {acc.num * r.den, acc.den * r.num};
      }
    }
  }

  Frac unary() {
    if (eat('-')) {
      Frac f = unary();
      return {-f.num, f.den};
    }
    if (eat('+')) return unary();
    return power();
  }

  Frac power() {
    Frac base = atom();
    if (!eat('^')) return base;
    skip();
    const std::size_t at = i_;
    bool neg = eat('-');
    bool paren = eat('(');
    if (paren && !neg) neg = eat('-');
    skip();
    std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) throw ParseError(at, "exponent must be an integer");
    if (i_ - start > 6) throw ParseError(at, "exponent too large");
    const unsigned k = static_cast<unsigned>(std::stoul(s_.substr(start, i_ - start)));
    if (paren && !eat(')')) throw ParseError(i_, "expected ')'");
    const LambdaPoly one = LambdaPoly::constant(1);
    Frac r{base.num.pow(k, one), base.den.pow(k, one)};
    if (neg) {
      if (r.num.is_zero()) throw ParseError(at, "zero to a negative power");
      std::swap(r.num, r.den);
    }
    return r;
  }

  Frac atom() {
    skip();
    if (i_ >= s_.size()) throw ParseError(i_, "unexpected end of input");
    const char c = s_[i_];
    if (c == '(') {
      ++i_;
      Frac f = expr();
      if (!eat(')')) throw ParseError(i_, "expected ')'");
      return f;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return {bconst(mpq_class(mpz_class(s_.substr(start, i_ - start)))), bconst(1)};
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
      const std::string id = s_.substr(start, i_ - start);
      if (id == "z") {
        uses_z_ = true;
        return {BiPoly::monomial(LambdaPoly::constant(1), 1), bconst(1)};
      }
      if (id == "l" || id == "lambda") {
        uses_l_ = true;
        return {BiPoly::constant(LambdaPoly::monomial(mpq_class(1), 1)), bconst(1)};
      }
      throw ParseError(start, "unknown identifier '" + id + "'");
    }
    throw ParseError(i_, std::string("unexpected '") + c + "'");
  }

  static Frac add(const Frac& a, const Frac& b, bool minus) {
    if (a.den == b.den) return {minus ? a.num - b.num : a.num + b.num, a.den};
    BiPoly x = a.num * b.den, y = b.num * a.den;
    return {minus ? x - y : x + y, a.den * b.den};
  }

  const std::string& s_;
  std::size_t i_ = 0;
  bool uses_z_ = false;
  bool uses_l_ = false;
};

QPoly to_q(const BiPoly& P) {
  std::vector<mpq_class> v;
  for (const auto& c : P.coeffs()) v.push_back(c.is_zero() ? mpq_class(0) : c[0]);
  return QPoly(std::move(v));
}

QPoly qgcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool starts_with(const std::string& s, const std::string& pre) { return s.compare(0, pre.size(), pre) == 0; }

long parse_long(const std::string& s, std::size_t pos) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) throw ParseError(pos, "bad integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError(pos, "bad integer '" + s + "'");
  }
}

/// One base-field coordinate: padic(v,digits), O(p^k), or a rational expression.
PadicScalar parse_component(const FieldPtr& f, const std::string& text, std::size_t offset) {
  const std::string t = trim(text);
  bool neg = false;
  std::string body = t;
  if (starts_with(body, "-padic(") || starts_with(body, "-O(")) {
    neg = true;
    body = body.substr(1);
  }
  if (starts_with(body, "padic(") && body.back() == ')') {
    const std::string inner = body.substr(6, body.size() - 7);
    const auto comma = inner.find(',');
    if (comma == std::string::npos) throw ParseError(offset, "padic literal needs (valuation,digits)");
    const long val = parse_long(trim(inner.substr(0, comma)), offset);
    const std::string digits = trim(inner.substr(comma + 1));
    mpz_class unit = 0;
    long count = 0;
    for (char ch : digits) {
      if (ch == '.') continue;
      long d = std::isdigit(static_cast<unsigned char>(ch)) ? ch - '0'
               : std::isalpha(static_cast<unsigned char>(ch)) ? std::tolower(ch) - 'a' + 10
                                                             : -1;
      if (d < 0 || d >= f->p()) throw ParseError(offset, "bad digit in '" + digits + "'");
      unit = unit * f->p() + d;
      ++count;
    }
    if (f->p() > 36) throw ParseError(offset, "digit strings are only read for p <= 36");
    PadicScalar x;
    try {
      x = PadicScalar::from_digits(f, val, unit, count);
    } catch (const Error& e) {
      throw ParseError(offset, e.what());
    }
    return neg ? -x : x;
  }
  if (starts_with(body, "O(p^") && body.back() == ')') {
    return PadicScalar::zero_to(f, parse_long(trim(body.substr(4, body.size() - 5)), offset));
  }
  RationalExpr e;
  try {
    e = parse_expression(t);
  } catch (const ParseError& pe) {
    throw ParseError(offset + pe.position(), "bad scalar '" + t + "'");
  }
  if (e.uses_z || e.uses_lambda) throw ParseError(offset, "scalar literal may not mention z or l");
  const mpq_class n = e.num.is_zero() ? mpq_class(0) : e.num[0][0];
  const mpq_class d = e.den[0][0];
  return PadicScalar(f, mpq_class(n / d));
}

/// Exponent s with radius p^-s.
RadiusExp parse_radius(const FieldPtr& f, const std::string& text, std::size_t offset) {
  const std::string t = trim(text);
  try {
    if (starts_with(t, "p^-(") && t.back() == ')') return parse_radius_exp(t.substr(4, t.size() - 5));
    if (starts_with(t, "p^(") && t.back() == ')') return -parse_radius_exp(t.substr(3, t.size() - 4));
    if (starts_with(t, "p^")) return -parse_radius_exp(t.substr(2));
  } catch (const ParseError&) {
    throw ParseError(offset, "bad radius '" + t + "'");
  }
  RationalExpr e = parse_expression(t);
  if (e.uses_z || e.uses_lambda || e.num.is_zero()) throw ParseError(offset, "bad radius '" + t + "'");
  mpq_class r = e.num[0][0] / e.den[0][0];
  if (r <= 0) throw ParseError(offset, "radius must be positive");
  long k = 0;
  mpz_class num = r.get_num(), den = r.get_den();
  while (mpz_divisible_ui_p(num.get_mpz_t(), static_cast<unsigned long>(f->p()))) {
    num /= f->p();
    ++k;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(f->p()))) {
    den /= f->p();
    --k;
  }
  if (num != 1 || den != 1) throw ParseError(offset, "radius " + r.get_str() + " is not a power of p");
  return RadiusExp(-k);
}

}  // namespace

RationalExpr parse_expression(const std::string& text) { return ExprParser(text).run(); }

RationalMap parse_map(const FieldPtr& f, const std::string& text) {
  RationalExpr e = parse_expression(text);
  if (e.uses_lambda) throw ParseError(0, "a map may not mention the parameter l");
  QPoly num = to_q(e.num), den = to_q(e.den);
  QPoly g = qgcd(num, den);
  if (g.degree() > 0) {
    num = num.divmod(g).first;
    den = den.divmod(g).first;
  }
  return RationalMap::from_rational(f, num, den);
}

AnalyticFamily parse_family(const std::string& text) {
  RationalExpr e = parse_expression(text);
  BiPoly num = e.num, den = e.den;
  if (den.degree() == 0 && den[0].degree() == 0) {
    num = num * LambdaPoly::constant(1 / den[0][0]);
    den = BiPoly::constant(LambdaPoly::constant(1));
  }
  return AnalyticFamily::make(num, den);
}

PadicScalar parse_scalar(const FieldPtr& f, const std::string& text) {
  const std::string t = trim(text);
  const auto s = t.find("sqrt(");
  if (s == std::string::npos) return parse_component(f, t, 0);
  if (f->ext() == ExtKind::None) throw ParseError(s, "sqrt literal needs --ext");
  const auto close = t.find(')', s);
  if (close == std::string::npos || close + 1 != t.size()) throw ParseError(s, "sqrt(d) must end the literal");
  const std::string d = trim(t.substr(s + 5, close - s - 5));
  if (mpz_class(d) != f->ext_d()) throw ParseError(s, "sqrt(" + d + ") is not the configured extension");
  // Split "re + im*sqrt(d)" at the top-level " + ".
  std::string head = t.substr(0, s);
  std::string re;
  const auto plus = head.rfind(" + ");
  if (plus != std::string::npos) {
    re = head.substr(0, plus);
    head = head.substr(plus + 3);
  }
  PadicScalar im = PadicScalar::one(f);
  if (!head.empty()) {
    if (head.back() != '*') throw ParseError(s, "expected '*' before sqrt");
    im = parse_component(f, head.substr(0, head.size() - 1), plus == std::string::npos ? 0 : plus + 3);
  }
  PadicScalar out = im * PadicScalar::alpha(f);
  if (!re.empty()) out = parse_component(f, re, 0) + out;
  return out;
}

BerkPoint parse_point(const FieldPtr& f, const std::string& text) {
  const std::string t = trim(text);
  if (t == "inf" || t == "infinity") return BerkPoint::infinity();
  if (starts_with(t, "zeta(")) {
    if (t.back() != ')') throw ParseError(t.size(), "expected ')'");
    const std::string inner = t.substr(5, t.size() - 6);
    int depth = 0;
    std::size_t comma = std::string::npos;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      else if (inner[i] == ')') --depth;
      else if (inner[i] == ',' && depth == 0) comma = i;
    }
    if (comma == std::string::npos) throw ParseError(5, "zeta needs a centre and a radius");
    PadicScalar c = parse_scalar(f, inner.substr(0, comma));
    return BerkPoint::disc(c, parse_radius(f, inner.substr(comma + 1), 5 + comma + 1));
  }
  return BerkPoint::type1(parse_scalar(f, t));
}

std::vector<BerkPoint> parse_points(const FieldPtr& f, std::istream& in) {
  std::vector<BerkPoint> out;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (trim(line).empty()) continue;
    out.push_back(parse_point(f, line));
  }
  return out;
}

}  // namespace berkdyn
