#pragma once

#include <string>
#include <utility>
#include <vector>

#include "berkdyn/field.hpp"

namespace berkdyn {

/// Monic associate; the zero polynomial is returned unchanged.
ResiduePoly monic(const ResiduePoly& f);
ResiduePoly gcd(ResiduePoly a, ResiduePoly b);
/// a^k mod m.
ResiduePoly powmod(const ResiduePoly& a, const mpz_class& k, const ResiduePoly& m);

/// Distinct roots in the residue field, sorted by index, with multiplicities.
std::vector<std::pair<ResidueElem, int>> residue_roots(const ResiduePoly& f);

/// Squarefree decomposition: pairs (squarefree factor, multiplicity) whose
/// product is f up to a constant.
std::vector<std::pair<ResiduePoly, int>> squarefree_decomposition(const ResiduePoly& f);

/// True when f is a constant times the square of a polynomial over the
/// algebraic closure (every factor has even multiplicity).
bool is_square_up_to_constant(const ResiduePoly& f);

/// "c_k*x^k+...+c_0" in the given variable, highest degree first.
std::string to_string(const ResiduePoly& f, const std::string& var);
/// Bivariate polynomial in (outer, inner) variables, e.g. w and L.
std::string to_string(const Poly<ResiduePoly>& f, const std::string& outer, const std::string& inner);

}  // namespace berkdyn
