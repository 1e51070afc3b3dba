#include "berkdyn/exponent.hpp"

#include <cctype>

#include "berkdyn/error.hpp"

namespace berkdyn {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::PrecisionExhausted: return "PrecisionExhausted";
    case Errc::NotIntegral: return "NotIntegral";
    case Errc::NotASquare: return "NotASquare";
    case Errc::OddValuation: return "OddValuation";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::NotSquarefree: return "NotSquarefree";
    case Errc::NoRootsInField: return "NoRootsInField";
    case Errc::InfinityHasNoDiameter: return "InfinityHasNoDiameter";
    case Errc::TypeIPoint: return "TypeIPoint";
    case Errc::SamePoint: return "SamePoint";
    case Errc::NotNested: return "NotNested";
    case Errc::TypeIVLimit: return "TypeIVLimit";
    case Errc::ZeroFunction: return "ZeroFunction";
    case Errc::DegreesSplit: return "DegreesSplit";
    case Errc::HypothesisFails: return "HypothesisFails";
    case Errc::HasZeros: return "HasZeros";
    case Errc::NotFixed: return "NotFixed";
    case Errc::DegenerateMap: return "DegenerateMap";
    case Errc::IrreducibleFactorTooLarge: return "IrreducibleFactorTooLarge";
    case Errc::BranchLeavesField: return "BranchLeavesField";
    case Errc::LeadingCoeffVanishes: return "LeadingCoeffVanishes";
    case Errc::FactorDegreeTooLarge: return "FactorDegreeTooLarge";
    case Errc::NotRepelling: return "NotRepelling";
    case Errc::CollisionRadiusExceeded: return "CollisionRadiusExceeded";
    case Errc::MultipleRoot: return "MultipleRoot";
    case Errc::ParseError: return "ParseError";
    case Errc::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

int RadiusExp::sign() const {
  int sa = sgn(a_);
  int sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // Opposite signs: compare a^2 with 2 b^2.
  mpq_class lhs = a_ * a_;
  mpq_class rhs = 2 * b_ * b_;
  int c = cmp(lhs, rhs);
  if (c == 0) return 0;  // unreachable for rationals, sqrt2 is irrational
  return c > 0 ? sa : sb;
}

RadiusExp& RadiusExp::operator+=(const RadiusExp& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

RadiusExp& RadiusExp::operator-=(const RadiusExp& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

RadiusExp& RadiusExp::operator*=(const mpq_class& k) {
  a_ *= k;
  b_ *= k;
  return *this;
}

std::string RadiusExp::str() const {
  if (b_ == 0) return a_.get_str();
  std::string out;
  if (a_ != 0) out = a_.get_str() + (sgn(b_) > 0 ? "+" : "");
  return out + b_.get_str() + "*sqrt2";
}

RadiusExp min(const RadiusExp& x, const RadiusExp& y) { return x <= y ? x : y; }
RadiusExp max(const RadiusExp& x, const RadiusExp& y) { return x >= y ? x : y; }

AbsVal operator*(const AbsVal& x, const AbsVal& y) {
  if (x.zero_ || y.zero_) return AbsVal::zero();
  return AbsVal(x.e_ + y.e_);
}

AbsVal operator/(const AbsVal& x, const AbsVal& y) {
  if (y.zero_) throw Error(Errc::DivisionByZero, "absolute value quotient by zero");
  if (x.zero_) return AbsVal::zero();
  return AbsVal(x.e_ - y.e_);
}

AbsVal AbsVal::pow(long k) const {
  if (zero_) {
    if (k < 0) throw Error(Errc::DivisionByZero, "negative power of zero");
    return k == 0 ? AbsVal::one() : AbsVal::zero();
  }
  return AbsVal(e_ * mpq_class(k));
}

std::strong_ordering operator<=>(const AbsVal& x, const AbsVal& y) {
  if (x.zero_ || y.zero_) {
    if (x.zero_ && y.zero_) return std::strong_ordering::equal;
    return x.zero_ ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  // Larger exponent is a smaller value.
  return y.e_ <=> x.e_;
}

std::string AbsVal::str() const {
  if (zero_) return "0";
  return "p^-(" + e_.str() + ")";
}

AbsVal max(const AbsVal& x, const AbsVal& y) { return x >= y ? x : y; }
AbsVal min(const AbsVal& x, const AbsVal& y) { return x <= y ? x : y; }

namespace {

mpq_class parse_rational_token(const std::string& s) {
  if (s.empty()) throw ParseError(0, "empty rational");
  for (char ch : s) {
    if (!(std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' || ch == '-' || ch == '+')) {
      throw ParseError(0, "bad rational '" + s + "'");
    }
  }
  std::string t = s[0] == '+' ? s.substr(1) : s;
  mpq_class q;
  if (q.set_str(t, 10) != 0) throw ParseError(0, "bad rational '" + s + "'");
  if (q.get_den() == 0) throw ParseError(0, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace

RadiusExp parse_radius_exp(const std::string& text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  }
  auto pos = s.find("*sqrt2");
  if (pos == std::string::npos) return RadiusExp(parse_rational_token(s));
  std::string head = s.substr(0, pos);
  // Split "a+b" / "a-b" at the last sign that is not a leading sign.
  std::size_t split = std::string::npos;
  for (std::size_t i = head.size(); i-- > 1;) {
    if (head[i] == '+' || head[i] == '-') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return RadiusExp(0, parse_rational_token(head));
  return RadiusExp(parse_rational_token(head.substr(0, split)),
                   parse_rational_token(head.substr(split)));
}

}  // namespace berkdyn
