#include "berkdyn/residue_poly.hpp"

#include <algorithm>
#include <functional>

namespace berkdyn {

namespace {

FieldPtr field_of(const ResiduePoly& f) {
  for (const auto& c : f.coeffs()) {
    if (c.field()) return c.field();
  }
  throw Error(Errc::ZeroPolynomial, "residue polynomial without a field");
}

ResiduePoly x_poly(const FieldPtr& F) {
  return ResiduePoly(std::vector<ResidueElem>{ResidueElem(F, 0), ResidueElem(F, 1)});
}

ResiduePoly one_poly(const FieldPtr& F) { return ResiduePoly::constant(ResidueElem(F, 1)); }

ResiduePoly pth_root(const ResiduePoly& f, const FieldPtr& F) {
  const auto p = static_cast<std::size_t>(F->p());
  std::vector<ResidueElem> v;
  const mpz_class root_exp = mpz_class(F->q()) / F->p();
  for (std::size_t i = 0; i < f.size(); i += p) v.push_back(f[i].pow(root_exp));
  return ResiduePoly(std::move(v));
}

void sqf_rec(const ResiduePoly& f, int mult, const FieldPtr& F, std::vector<std::pair<ResiduePoly, int>>& out) {
  if (f.degree() <= 0) return;
  ResiduePoly d = f.derivative();
  if (d.is_zero()) {
    sqf_rec(pth_root(f, F), mult * static_cast<int>(F->p()), F, out);
    return;
  }
  ResiduePoly c = gcd(f, d);
  ResiduePoly w = f.divmod(c).first;
  int i = 1;
  while (w.degree() > 0) {
    ResiduePoly y = gcd(w, c);
    ResiduePoly z = w.divmod(y).first;
    if (z.degree() > 0) out.emplace_back(monic(z), i * mult);
    ++i;
    w = y;
    c = c.divmod(y).first;
  }
  if (c.degree() > 0) sqf_rec(pth_root(c, F), mult * static_cast<int>(F->p()), F, out);
}

std::string coeff_str(const ResidueElem& c) {
  std::string s = c.str();
  return s.find('+') != std::string::npos ? "(" + s + ")" : s;
}

std::string monomial_str(const std::string& var, std::size_t k) {
  if (k == 0) return "";
  if (k == 1) return var;
  return var + "^" + std::to_string(k);
}

}  // namespace

ResiduePoly monic(const ResiduePoly& f) {
  if (f.is_zero()) return f;
  return f * f.leading().inverse();
}

ResiduePoly gcd(ResiduePoly a, ResiduePoly b) {
  while (!b.is_zero()) {
    ResiduePoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

ResiduePoly powmod(const ResiduePoly& a, const mpz_class& k, const ResiduePoly& m) {
  const FieldPtr F = field_of(m);
  ResiduePoly result = one_poly(F).divmod(m).second;
  ResiduePoly base = a.divmod(m).second;
  const std::size_t bits = mpz_sizeinbase(k.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result).divmod(m).second;
    if (mpz_tstbit(k.get_mpz_t(), i)) result = (result * base).divmod(m).second;
  }
  return result;
}

std::vector<std::pair<ResidueElem, int>> residue_roots(const ResiduePoly& f) {
  if (f.is_zero()) throw Error(Errc::ZeroPolynomial, "roots of the zero polynomial");
  const FieldPtr F = field_of(f);
  std::vector<ResidueElem> found;
  const std::size_t k0 = f.low_order();
  if (k0 > 0) found.push_back(ResidueElem(F, 0));
  ResiduePoly g = f.shift_down(k0);
  if (g.degree() >= 1) {
    if (F->q() <= 512) {
      for (unsigned long i = 1; i < F->q(); ++i) {
        ResidueElem a = ResidueElem::from_index(F, i);
        if (g.eval(a).is_zero()) found.push_back(a);
      }
    } else {
      const ResiduePoly x = x_poly(F);
      ResiduePoly split = gcd(g, powmod(x, mpz_class(F->q()), g) - x);
      const mpz_class half = (mpz_class(F->q()) - 1) / 2;
      std::function<void(const ResiduePoly&)> rec = [&](const ResiduePoly& h) {
        if (h.degree() <= 0) return;
        if (h.degree() == 1) {
          found.push_back(-(h[0] / h[1]));
          return;
        }
        for (unsigned long s = 0; s < F->q(); ++s) {
          ResiduePoly shifted = x + ResiduePoly::constant(ResidueElem::from_index(F, s));
          ResiduePoly t = gcd(h, powmod(shifted, half, h) - one_poly(F));
          if (t.degree() > 0 && t.degree() < h.degree()) {
            rec(t);
            rec(h.divmod(t).first);
            return;
          }
        }
      };
      rec(split);
    }
  }
  std::sort(found.begin(), found.end(),
            [](const ResidueElem& a, const ResidueElem& b) { return a.index() < b.index(); });
  std::vector<std::pair<ResidueElem, int>> out;
  for (const auto& r : found) {
    ResiduePoly lin(std::vector<ResidueElem>{-r, ResidueElem(F, 1)});
    ResiduePoly h = f;
    int m = 0;
    while (h.degree() >= 1) {
      auto [q, rem] = h.divmod(lin);
      if (!rem.is_zero()) break;
      h = q;
      ++m;
    }
    out.emplace_back(r, m);
  }
  return out;
}

std::vector<std::pair<ResiduePoly, int>> squarefree_decomposition(const ResiduePoly& f) {
  std::vector<std::pair<ResiduePoly, int>> out;
  if (f.degree() <= 0) return out;
  sqf_rec(monic(f), 1, field_of(f), out);
  return out;
}

bool is_square_up_to_constant(const ResiduePoly& f) {
  if (f.is_zero()) return true;
  for (const auto& [factor, m] : squarefree_decomposition(f)) {
    if (factor.degree() > 0 && m % 2 != 0) return false;
  }
  return true;
}

std::string to_string(const ResiduePoly& f, const std::string& var) {
  if (f.is_zero()) return "0";
  std::string out;
  for (std::size_t k = f.size(); k-- > 0;) {
    const ResidueElem& c = f[k];
    if (c.is_zero()) continue;
    if (!out.empty()) out += "+";
    std::string mono = monomial_str(var, k);
    if (mono.empty()) {
      out += c.str();
    } else if (c == ResidueElem(c.field(), 1)) {
      out += mono;
    } else {
      out += coeff_str(c) + "*" + mono;
    }
  }
  return out;
}

std::string to_string(const Poly<ResiduePoly>& f, const std::string& outer, const std::string& inner) {
  if (f.is_zero()) return "0";
  std::string out;
  for (std::size_t k = f.size(); k-- > 0;) {
    const ResiduePoly& c = f[k];
    if (c.is_zero()) continue;
    if (!out.empty()) out += "+";
    std::string mono = monomial_str(outer, k);
    std::string cs = to_string(c, inner);
    bool single_term = c.low_order() + 1 == c.size();
    if (mono.empty()) {
      out += cs;
    } else if (cs == "1") {
      out += mono;
    } else {
      out += (single_term ? cs : "(" + cs + ")") + "*" + mono;
    }
  }
  return out;
}

}  // namespace berkdyn
