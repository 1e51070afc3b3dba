#pragma once

#include <optional>
#include <vector>

#include "berkdyn/exponent.hpp"
#include "berkdyn/padic.hpp"

namespace berkdyn {

struct NewtonSegment {
  RadiusExp slope;
  int length = 0;
  int start = 0;
};

/// Lower convex hull of the points (i, E_i). Root valuations are the
/// negated slopes.
struct NewtonPolygon {
  std::vector<NewtonSegment> segments;
  /// Number of leading absent points (order of vanishing at 0).
  int zero_order = 0;

  /// (valuation, count) pairs, valuation ascending.
  std::vector<std::pair<RadiusExp, int>> root_valuations() const;
  /// Number of roots with valuation >= v (strict: > v).
  int count_roots_with_valuation_at_least(const RadiusExp& v, bool strict = false) const;
};

/// Hull of arbitrary exponent points; nullopt marks an absent (zero) term.
NewtonPolygon newton_polygon_points(const std::vector<std::optional<RadiusExp>>& points);

/// Newton polygon of a polynomial over K. Exact-zero coefficients are absent;
/// a coefficient that is zero to precision must lie on or above the hull,
/// otherwise PrecisionExhausted.
NewtonPolygon newton_polygon(const KPoly& poly);
NewtonPolygon newton_polygon(const std::vector<PadicScalar>& coeffs);

struct FoundRoot {
  PadicScalar value;
  int multiplicity = 1;
  /// Simple root refined by Newton's method and checked by residual.
  bool certified = false;
};

/// Roots not located in K: `degree` of them share valuation `valuation`.
struct UnsolvedCluster {
  int degree = 0;
  mpq_class valuation;
};

struct RootSet {
  std::vector<FoundRoot> roots;
  std::vector<UnsolvedCluster> unsolved;

  int located_count() const;
  int unsolved_count() const;
};

/// Every root of a nonzero polynomial over K that the working field
/// contains, with multiplicities, plus clusters whose roots lie outside K.
RootSet find_roots(const KPoly& poly);

/// Roots of the given valuation, each refined by Hensel lifting to full
/// precision. Raises NotSquarefree for a repeated root in that annulus and
/// NoRootsInField when none lie in K.
std::vector<PadicScalar> hensel_roots(const KPoly& poly, const mpq_class& valuation);

}  // namespace berkdyn
