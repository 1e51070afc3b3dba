#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "berkdyn/berk.hpp"
#include "berkdyn/dynamics.hpp"
#include "berkdyn/families.hpp"

namespace berkdyn {

/// num/den with z the outer variable and the parameter l inside.
struct RationalExpr {
  BiPoly num;
  BiPoly den;
  bool uses_z = false;
  bool uses_lambda = false;
};

/// Infix expression in z and l (or lambda) with integer literals and
/// + - * / ^ and parentheses. Raises ParseError with the byte offset.
RationalExpr parse_expression(const std::string& text);

/// A map in z alone, e.g. "z^2 - 1/9".
RationalMap parse_map(const FieldPtr& f, const std::string& text);
/// A family in z and l, e.g. "z^2 + l*z".
AnalyticFamily parse_family(const std::string& text);

/// A field element: a rational expression, padic(v,digits), O(p^k), or
/// "a + b*sqrt(d)" with those parts.
PadicScalar parse_scalar(const FieldPtr& f, const std::string& text);

/// "inf", a scalar, or zeta(a, r) where r is a power of p written as a
/// rational, p^k, p^-k, p^-(s) or p^-(s + t*sqrt2).
BerkPoint parse_point(const FieldPtr& f, const std::string& text);

/// One point per line; blank lines and '#' comments are skipped.
std::vector<BerkPoint> parse_points(const FieldPtr& f, std::istream& in);

}  // namespace berkdyn
