#include "berkdyn/newton.hpp"

#include <algorithm>
#include <functional>

#include "berkdyn/residue_poly.hpp"

namespace berkdyn {

namespace {

struct HullPoint {
  long i;
  RadiusExp e;
};

/// Value of the hull at abscissa i (i inside the hull's range).
std::optional<RadiusExp> hull_value(const NewtonPolygon& np, const std::vector<HullPoint>& verts, long i) {
  for (std::size_t s = 0; s < np.segments.size(); ++s) {
    const auto& seg = np.segments[s];
    if (i >= seg.start && i <= seg.start + seg.length) {
      return verts[s].e + seg.slope * mpq_class(i - seg.start);
    }
  }
  return std::nullopt;
}

NewtonPolygon build_hull(const std::vector<HullPoint>& pts, std::vector<HullPoint>* verts_out) {
  NewtonPolygon np;
  if (pts.empty()) return np;
  np.zero_order = static_cast<int>(pts.front().i);
  std::vector<HullPoint> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const HullPoint& a = hull[hull.size() - 2];
      const HullPoint& b = hull.back();
      // Drop b when it lies on or above the segment a-pt.
      RadiusExp lhs = (b.e - a.e) * mpq_class(pt.i - a.i);
      RadiusExp rhs = (pt.e - a.e) * mpq_class(b.i - a.i);
      if (lhs >= rhs) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(pt);
  }
  for (std::size_t k = 0; k + 1 < hull.size(); ++k) {
    const long len = hull[k + 1].i - hull[k].i;
    NewtonSegment seg;
    seg.slope = (hull[k + 1].e - hull[k].e) * mpq_class(1, len);
    seg.length = static_cast<int>(len);
    seg.start = static_cast<int>(hull[k].i);
    np.segments.push_back(seg);
  }
  if (verts_out) *verts_out = hull;
  return np;
}

using Back = std::function<PadicScalar(const PadicScalar&)>;

class Finder {
 public:
  explicit Finder(FieldPtr f) : F_(std::move(f)), max_depth_(static_cast<int>(F_->precision() * F_->e())) {}

  void collect(KPoly q, bool integral_only, const Back& back, int depth) {
    const std::size_t k0 = q.low_order();
    if (k0 > 0) {
      out.roots.push_back({back(PadicScalar::zero(F_)), static_cast<int>(k0), true});
      q = q.shift_down(k0);
    }
    if (q.degree() <= 0) return;

    std::size_t j = 0;
    while (j < q.size() && q[j].is_zero_to_precision()) ++j;
    if (j == q.size()) throw Error(Errc::PrecisionExhausted, "every coefficient is zero to precision");
    if (j > 0) {
      if (j == 1) {
        out.roots.push_back({back(-q[0] / q[1]), 1, true});
      } else {
        long bound = LONG_MAX;
        const long vj = q[j].valuation_units();
        for (std::size_t i = 0; i < j; ++i) {
          bound = std::min(bound, (q[i].lower_bound_units() - vj) / static_cast<long>(j - i));
        }
        out.roots.push_back({back(PadicScalar::zero_to(F_, bound / F_->e())), static_cast<int>(j), false});
      }
      q = q.shift_down(j);
      if (q.degree() <= 0) return;
    }

    const NewtonPolygon np = newton_polygon(q);
    const long e = F_->e();
    for (const auto& seg : np.segments) {
      const mpq_class v = -seg.slope.a();
      if (integral_only && v < 0) continue;
      const mpq_class ve = v * e;
      if (ve.get_den() != 1) {
        out.unsolved.push_back({seg.length, v});
        continue;
      }
      const long k = ve.get_num().get_si();
      const long m = q[static_cast<std::size_t>(seg.start)].valuation_units() + k * seg.start;
      std::vector<PadicScalar> cs;
      cs.reserve(q.size());
      for (std::size_t i = 0; i < q.size(); ++i) cs.push_back(q[i].shift(k * static_cast<long>(i) - m));
      KPoly qs(std::move(cs));

      std::vector<ResidueElem> red;
      red.reserve(qs.size());
      for (std::size_t i = 0; i < qs.size(); ++i) red.push_back(qs[i].reduce());
      const auto rr = residue_roots(ResiduePoly(std::move(red)));

      const Back scaled = [back, k](const PadicScalar& y) { return back(y.shift(k)); };
      int accounted = 0;
      for (const auto& [rho, mu] : rr) {
        if (rho.is_zero()) continue;
        accounted += mu;
        const PadicScalar rhat = PadicScalar::lift(F_, rho);
        if (mu == 1) {
          out.roots.push_back({scaled(newton_lift(qs, rhat)), 1, true});
          continue;
        }
        if (depth >= max_depth_) {
          out.roots.push_back({scaled(rhat), mu, false});
          continue;
        }
        const KPoly t = qs.taylor_shift(rhat);
        std::vector<PadicScalar> rc;
        rc.reserve(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) rc.push_back(t[i].shift(static_cast<long>(i)));
        const int before = out.located_count() + out.unsolved_count();
        const Back inner = [scaled, rhat](const PadicScalar& u) { return scaled(rhat + u.shift(1)); };
        collect(KPoly(std::move(rc)), true, inner, depth + 1);
        const int got = out.located_count() + out.unsolved_count() - before;
        if (got < mu) out.unsolved.push_back({mu - got, v});
      }
      if (accounted < seg.length) out.unsolved.push_back({seg.length - accounted, v});
    }
  }

  RootSet out;

 private:
  static PadicScalar newton_lift(const KPoly& q, PadicScalar y) {
    const KPoly d = q.derivative();
    for (int it = 0; it < 64; ++it) {
      PadicScalar val = q.eval(y);
      if (val.is_exact_zero() || val.is_zero_to_precision()) break;
      PadicScalar delta = val / d.eval(y);
      y = y - delta;
      if (delta.is_zero_to_precision()) break;
    }
    return y;
  }

  FieldPtr F_;
  int max_depth_;
};

FieldPtr field_of(const KPoly& p) {
  for (const auto& c : p.coeffs()) {
    if (c.field()) return c.field();
  }
  throw Error(Errc::ZeroPolynomial, "polynomial has no field");
}

}  // namespace

std::vector<std::pair<RadiusExp, int>> NewtonPolygon::root_valuations() const {
  std::vector<std::pair<RadiusExp, int>> out;
  for (auto it = segments.rbegin(); it != segments.rend(); ++it) out.emplace_back(-it->slope, it->length);
  return out;
}

int NewtonPolygon::count_roots_with_valuation_at_least(const RadiusExp& v, bool strict) const {
  int n = zero_order;
  for (const auto& seg : segments) {
    RadiusExp rv = -seg.slope;
    if (strict ? rv > v : rv >= v) n += seg.length;
  }
  return n;
}

NewtonPolygon newton_polygon_points(const std::vector<std::optional<RadiusExp>>& points) {
  std::vector<HullPoint> pts;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i]) pts.push_back({static_cast<long>(i), *points[i]});
  }
  return build_hull(pts, nullptr);
}

NewtonPolygon newton_polygon(const std::vector<PadicScalar>& coeffs) {
  std::vector<HullPoint> pts;
  std::vector<std::size_t> inexact;
  long e = 1;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const PadicScalar& c = coeffs[i];
    if (c.is_exact_zero()) continue;
    e = c.field()->e();
    if (auto v = c.valuation_units_opt()) {
      pts.push_back({static_cast<long>(i), RadiusExp(mpq_class(*v, e))});
    } else {
      inexact.push_back(i);
    }
  }
  if (pts.empty()) throw Error(Errc::ZeroPolynomial, "Newton polygon of a polynomial with no known coefficient");
  std::vector<HullPoint> verts;
  NewtonPolygon np = build_hull(pts, &verts);
  const long last = pts.back().i;
  for (std::size_t i : inexact) {
    const long ii = static_cast<long>(i);
    if (ii > last) throw Error(Errc::PrecisionExhausted, "leading coefficient is zero to precision");
    if (ii < np.zero_order) continue;
    auto hv = hull_value(np, verts, ii);
    RadiusExp bound(mpq_class(coeffs[i].lower_bound_units(), e));
    if (hv && bound < *hv) {
      throw Error(Errc::PrecisionExhausted, "coefficient " + std::to_string(i) + " too imprecise for its Newton polygon");
    }
  }
  return np;
}

NewtonPolygon newton_polygon(const KPoly& poly) { return newton_polygon(poly.coeffs()); }

int RootSet::located_count() const {
  int n = 0;
  for (const auto& r : roots) n += r.multiplicity;
  return n;
}

int RootSet::unsolved_count() const {
  int n = 0;
  for (const auto& c : unsolved) n += c.degree;
  return n;
}

RootSet find_roots(const KPoly& poly) {
  if (poly.is_zero()) throw Error(Errc::ZeroPolynomial, "roots of the zero polynomial");
  Finder finder(field_of(poly));
  finder.collect(poly, false, [](const PadicScalar& x) { return x; }, 0);
  for (auto& r : finder.out.roots) {
    if (r.certified && r.multiplicity == 1 && !r.value.is_exact_zero() && !residual_small(poly, r.value)) {
      r.certified = false;
    }
  }
  return std::move(finder.out);
}

std::vector<PadicScalar> hensel_roots(const KPoly& poly, const mpq_class& valuation) {
  RootSet rs = find_roots(poly);
  std::vector<PadicScalar> out;
  bool repeated = false;
  for (const auto& r : rs.roots) {
    if (r.value.is_exact_zero()) continue;
    auto vu = r.value.valuation_units_opt();
    if (!vu) continue;
    if (mpq_class(*vu, r.value.field()->e()) != valuation) continue;
    if (r.multiplicity > 1 || !r.certified) {
      repeated = true;
    } else {
      out.push_back(r.value);
    }
  }
  if (repeated) throw Error(Errc::NotSquarefree, "repeated root of valuation " + valuation.get_str());
  if (out.empty()) throw Error(Errc::NoRootsInField, "no root of valuation " + valuation.get_str() + " in the working field");
  return out;
}

}  // namespace berkdyn
