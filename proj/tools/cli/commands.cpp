#include "cli/commands.hpp"

#include <algorithm>
#include <istream>

#include "berkdyn/berk.hpp"
#include "berkdyn/dynamics.hpp"
#include "berkdyn/families.hpp"
#include "berkdyn/parse.hpp"

namespace berkdyn::cli {

namespace {

FieldPtr make_field(const RunConfig& cfg) {
  if (cfg.max_period < 1) throw Error(Errc::InvalidConfig, "--max-period must be positive");
  if (cfg.jobs < 1) throw Error(Errc::InvalidConfig, "--jobs must be positive");
  return Field::create(cfg.prime, cfg.precision, cfg.ext_square);
}

std::string kind_name(const BerkPoint& x) {
  if (x.is_infinity()) return "infinity";
  if (x.is_type1()) return "type I";
  return x.is_type2() ? "type II" : "type III";
}

BerkPoint image(const RationalMap& f, const BerkPoint& x) {
  return x.is_disc() ? push_disc_point(f, x) : evaluate(f, x);
}

Json val_or_null(const AbsVal& a) { return a.is_zero() ? Json(nullptr) : Json(a.exp().str()); }

std::string pad_word(unsigned long bits, int len) {
  std::string w;
  for (int i = 0; i < len; ++i) w += ((bits >> (len - 1 - i)) & 1) ? '1' : '0';
  return w;
}

std::string units_str(long units, long e) {
  return mpq_class(units, e).get_str();
}

}  // namespace

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::ParseError:
      return kParse;
    case Errc::Unsupported:
    case Errc::FactorDegreeTooLarge:
    case Errc::IrreducibleFactorTooLarge:
      return kUnsupported;
    default:
      return kDomain;
  }
}

CommandResult cmd_classify(const RunConfig& cfg, const std::string& map, const std::string& point) {
  FieldPtr F = make_field(cfg);
  RationalMap f = parse_map(F, map);
  BerkPoint x = parse_point(F, point);

  Json j;
  j["map"] = f.str();
  j["point"] = x.str();
  j["kind"] = kind_name(x);
  BerkPoint y = image(f, x);
  j["image"] = y.str();
  j["fixed"] = y == x;

  std::optional<int> period;
  BerkPoint cur = y;
  for (int n = 1; n <= cfg.max_period; ++n) {
    if (cur == x) {
      period = n;
      break;
    }
    cur = image(f, cur);
  }
  j["period"] = period ? Json(*period) : Json(nullptr);
  if (!period) {
    j["class"] = nullptr;
    return {j, kOk};
  }
  if (x.is_disc()) {
    LocalDegree ld = local_degree(f.iterate(*period), x);
    j["local_degree"] = ld.degree;
    j["class"] = class_name(ld.cls);
  } else {
    PadicScalar m = cycle_multiplier(f, x, *period);
    j["multiplier"] = m.str();
    j["multiplier_val"] = val_or_null(m.abs());
    j["class"] = class_name(classify_multiplier(m.abs()));
  }
  return {j, kOk};
}

CommandResult cmd_periodic(const RunConfig& cfg, const std::string& map, int n) {
  FieldPtr F = make_field(cfg);
  if (n < 1) throw Error(Errc::InvalidConfig, "period must be positive");
  RationalMap f = parse_map(F, map);
  PeriodicSolve s = periodic_points(f, n);

  Json j;
  j["map"] = f.str();
  j["prime"] = cfg.prime;
  j["precision"] = cfg.precision;
  j["n"] = n;
  Json rows = Json::array();
  for (const auto& r : s.points) {
    Json row;
    row["point"] = r.point.str();
    row["period"] = r.period;
    row["multiplier"] = r.multiplier ? Json(r.multiplier->str()) : Json(nullptr);
    row["multiplier_val"] = val_or_null(r.multiplier_abs);
    row["class"] = class_name(r.cls);
    row["multiplicity"] = r.multiplicity;
    row["certified"] = r.certified;
    rows.push_back(row);
  }
  j["records"] = rows;
  Json unsolved = Json::array();
  bool too_large = false;
  for (const auto& c : s.unsolved) {
    unsolved.push_back({{"degree", c.degree}, {"valuation", c.valuation.get_str()}});
    too_large = too_large || c.degree >= 3;
  }
  j["unsolved"] = unsolved;
  return {j, too_large ? kUnsupported : kOk};
}

CommandResult cmd_scan(const RunConfig& cfg, const std::string& family, std::istream& points, int n_max) {
  FieldPtr F = make_field(cfg);
  if (n_max < 1) throw Error(Errc::InvalidConfig, "n_max must be positive");
  AnalyticFamily fam = parse_family(family);
  std::vector<BerkPoint> pts = parse_points(F, points);
  BifurcationReport rep = stability_scan(fam, n_max, pts, {.jobs = cfg.jobs});

  Json j;
  j["family"] = fam.str();
  j["prime"] = cfg.prime;
  j["precision"] = cfg.precision;
  j["n_max"] = n_max;
  Json rows = Json::array();
  for (const auto& r : rep.rows) {
    Json ev;
    ev["multiplier_val"] = r.multiplier_val ? Json(r.multiplier_val->str()) : Json(nullptr);
    ev["reduction_poly"] = r.reduction_poly;
    ev["m"] = r.m ? Json(*r.m) : Json(nullptr);
    if (r.continuation) ev["continuation"] = *r.continuation;
    if (!r.note.empty()) ev["note"] = r.note;
    Json row;
    row["param"] = r.param.str();
    row["period"] = r.period;
    row["flag"] = flag_name(r.flag);
    row["evidence"] = ev;
    rows.push_back(row);
  }
  j["rows"] = rows;
  return {j, kOk};
}

CommandResult cmd_cantor(const RunConfig& cfg, const std::string& lambda, int len) {
  FieldPtr F = make_field(cfg);
  if (len < 1 || len > 16) throw Error(Errc::InvalidConfig, "word length must be in 1..16");
  PadicScalar lam = parse_scalar(F, lambda);
  if (lam.is_exact_zero() || lam.abs() <= AbsVal::one())
    throw Error(Errc::InvalidConfig, "the coding needs |lambda0| > 1");
  RationalMap f = RationalMap::from_k(F, KPoly({lam, PadicScalar::zero(F), PadicScalar::one(F)}),
                                      KPoly::constant(PadicScalar::one(F)));

  const long e = F->e();
  const long bound = 40 * e;
  const unsigned long count = 1ul << len;
  std::vector<PadicScalar> xs;
  xs.reserve(count);
  for (unsigned long b = 0; b < count; ++b) xs.push_back(cantor_coding(lam, pad_word(b, len)));

  Json words = Json::array();
  long worst = LONG_MAX;
  for (unsigned long b = 0; b < count; ++b) {
    const std::string w = pad_word(b, len);
    const std::string shifted = w.substr(1) + w[0];
    const PadicScalar& y = xs[std::stoul(shifted, nullptr, 2)];
    PadicScalar r = evaluate(f, BerkPoint::type1(xs[b])).center() - y;
    const long v = std::min(r.lower_bound_units(), r.absolute_precision_units());
    worst = std::min(worst, v);
    words.push_back({{"word", w}, {"residual_val", v == LONG_MAX ? Json(nullptr) : Json(units_str(v, e))}});
  }

  std::optional<AbsVal> sep;
  for (unsigned long a = 0; a < count; ++a)
    for (unsigned long b = a + 1; b < count; ++b) {
      AbsVal d = (xs[a] - xs[b]).abs();
      if (!sep || d < *sep) sep = d;
    }

  Json j;
  j["lambda"] = lam.str();
  j["prime"] = cfg.prime;
  j["precision"] = cfg.precision;
  j["word_length"] = len;
  j["words_checked"] = count;
  j["min_residual_val"] = worst == LONG_MAX ? Json(nullptr) : Json(units_str(worst, e));
  j["min_separation"] = sep ? Json(sep->str()) : Json(nullptr);
  j["bound_val"] = units_str(bound, e);
  j["result"] = worst >= bound ? "PASS" : "FAIL";
  j["words"] = words;
  return {j, worst >= bound ? kOk : kDomain};
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace berkdyn::cli
