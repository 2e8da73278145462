#include "nevlab/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace nevlab {
namespace {

[[noreturn]] void schema(const std::string& what) { raise(ErrorKind::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) schema(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <class T>
T as(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception&) {
    schema(std::string("field '") + key + "' has the wrong type");
  }
}

Json real_or_null(Real x, int digits) {
  if (!std::isfinite(x)) return nullptr;
  return rounded(x, digits);
}

Real real_of(const Json& j) { return j.is_null() ? std::numeric_limits<Real>::quiet_NaN() : Real(j.get<double>()); }

}  // namespace

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) schema("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return Json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    // nlohmann reports a byte offset; turn it into line and column.
    const std::string text = ss.str();
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    schema(path + ": line " + std::to_string(line) + ", column " + std::to_string(col) + ": invalid JSON");
  }
}

HoloCurve curve_from_json(const Json& j) {
  const auto n = as<std::size_t>(j, "n");
  const auto& cs = field(j, "coords");
  if (!cs.is_array()) schema("'coords' must be an array of expression strings");
  if (cs.size() != n + 1) raise(ErrorKind::DimensionMismatch, "coords must have n + 1 entries");
  std::vector<CurveExpr> coords;
  for (const auto& c : cs) {
    if (!c.is_string()) schema("'coords' must be an array of expression strings");
    coords.push_back(parse_curve_expr(c.get<std::string>()));
  }
  Real R0 = kInfinity;
  if (j.contains("R0")) {
    const auto& r = j.at("R0");
    if (r.is_number()) {
      R0 = r.get<double>();
    } else if (!(r.is_string() && r.get<std::string>() == "inf") && !r.is_null()) {
      schema("'R0' must be a number or \"inf\"");
    }
  }
  return HoloCurve(std::move(coords), R0);
}

Hypersurface hypersurface_from_json(const Json& j) {
  const auto n = as<std::size_t>(j, "n");
  const auto& t = field(j, "terms");
  std::vector<Monomial> terms;
  if (t.is_string()) {
    terms = parse_monomials(t.get<std::string>(), 'x', 0, n + 1);
  } else if (t.is_array()) {
    for (const auto& s : t) {
      if (!s.is_string()) schema("'terms' entries must be strings");
      for (auto& m : parse_monomials(s.get<std::string>(), 'x', 0, n + 1)) terms.push_back(std::move(m));
    }
  } else {
    schema("'terms' must be a string or an array of strings");
  }
  Hypersurface h(n, std::move(terms));
  if (j.contains("d") && j.at("d").get<std::size_t>() != h.degree()) {
    raise(ErrorKind::ParameterViolation, "declared degree d does not match the terms");
  }
  return h;
}

std::vector<Hypersurface> divisors_from_json(const Json& j) {
  const Json* list = &j;
  if (j.is_object() && j.contains("divisors")) list = &j.at("divisors");
  std::vector<Hypersurface> out;
  if (list->is_array()) {
    for (const auto& h : *list) out.push_back(hypersurface_from_json(h));
  } else {
    out.push_back(hypersurface_from_json(*list));
  }
  if (out.empty()) schema("no divisors given");
  return out;
}

GGJetDifferential jetdiff_from_json(const Json& j) {
  GGJetDifferential P;
  P.k = as<std::size_t>(j, "k");
  P.m = as<std::size_t>(j, "m");
  P.n = as<std::size_t>(j, "n");
  P.chart = j.value("chart", std::size_t{0});
  P.twist.a = j.value("twist", 0L);
  P.log_components = j.value("log_components", std::vector<unsigned>{});
  const auto& ts = field(j, "terms");
  if (!ts.is_array()) schema("'terms' must be an array");
  for (const auto& t : ts) {
    JetDiffTerm term;
    const auto coeff = t.value("coeff_poly", std::string("1"));
    term.coeff = parse_monomials(coeff, 'w', 1, P.n);
    term.alpha = as<std::vector<std::vector<unsigned>>>(t, "alpha");
    term.log_flags = t.value("log_flags", std::vector<unsigned>{});
    for (unsigned c : term.log_flags) {
      if (std::find(P.log_components.begin(), P.log_components.end(), c) == P.log_components.end()) {
        P.log_components.push_back(c);
      }
    }
    P.terms.push_back(std::move(term));
  }
  std::sort(P.log_components.begin(), P.log_components.end());
  P.validate();
  return P;
}

std::string format_real(Real x, int digits) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, static_cast<double>(x));
  return buf;
}

double rounded(Real x, int digits) {
  if (digits >= 17 || !std::isfinite(x)) return static_cast<double>(x);
  return std::strtod(format_real(x, digits).c_str(), nullptr);
}

std::string profiles_to_csv(const std::vector<RadialProfile>& profiles, int digits) {
  std::string out = "r,value,label\n";
  for (const auto& p : profiles) {
    for (std::size_t i = 0; i < p.r.size(); ++i) {
      out += format_real(p.r[i], digits) + "," + format_real(p.values[i], digits) + "," + p.label + "\n";
    }
  }
  return out;
}

Json to_json(const RadialProfile& p, int digits) {
  Json r = Json::array(), v = Json::array();
  for (Real x : p.r) r.push_back(rounded(x, digits));
  for (Real x : p.values) v.push_back(real_or_null(x, digits));
  return Json{{"label", p.label}, {"r", r}, {"values", v}};
}

Json to_json(const ZeroSet& zs, int digits) {
  Json recs = Json::array();
  for (const auto& z : zs.records) {
    recs.push_back(Json{{"re", rounded(z.location.real(), digits)},
                        {"im", rounded(z.location.imag(), digits)},
                        {"order", z.order}});
  }
  return Json{{"r_max", rounded(zs.r_max, digits)},
              {"origin_order", zs.origin_order},
              {"total_order", zs.total_order()},
              {"zeros", recs}};
}

Json to_json(const SMTReport& rep, int digits) {
  return Json{{"margin", to_json(rep.margin, digits)},
              {"violating_measure", rounded(rep.violating_measure, digits)},
              {"tail_clean", rep.tail_clean},
              {"error_case", rep.error_case == ErrorCase::InfiniteRadius ? "infinite_radius" : "finite_radius"},
              {"offset", rounded(rep.offset, digits)}};
}

Json to_json(const DefectEstimate& est, int digits) {
  return Json{{"ratio_profile", to_json(est.ratio_profile, digits)},
              {"liminf_estimate", rounded(est.liminf_estimate, digits)},
              {"mu0", est.mu0},
              {"tail_monotone", est.tail_monotone}};
}

Json to_json(const FmtResidual& res, int digits) {
  return Json{{"residual", to_json(res.residual, digits)}, {"offset", rounded(res.offset, digits)}};
}

RadialProfile profile_from_json(const Json& j) {
  RadialProfile p;
  p.label = as<std::string>(j, "label");
  for (const auto& x : field(j, "r")) p.r.push_back(real_of(x));
  for (const auto& x : field(j, "values")) p.values.push_back(real_of(x));
  if (p.r.size() != p.values.size()) schema("profile 'r' and 'values' differ in length");
  return p;
}

SMTReport smt_report_from_json(const Json& j) {
  SMTReport rep;
  rep.margin = profile_from_json(field(j, "margin"));
  rep.violating_measure = as<double>(j, "violating_measure");
  rep.tail_clean = as<bool>(j, "tail_clean");
  const auto ec = as<std::string>(j, "error_case");
  if (ec != "infinite_radius" && ec != "finite_radius") schema("unknown error_case " + ec);
  rep.error_case = ec == "infinite_radius" ? ErrorCase::InfiniteRadius : ErrorCase::FiniteRadius;
  rep.offset = as<double>(j, "offset");
  return rep;
}

DefectEstimate defect_estimate_from_json(const Json& j) {
  DefectEstimate est;
  est.ratio_profile = profile_from_json(field(j, "ratio_profile"));
  est.liminf_estimate = as<double>(j, "liminf_estimate");
  est.mu0 = as<std::size_t>(j, "mu0");
  est.tail_monotone = as<bool>(j, "tail_monotone");
  return est;
}

std::string to_string(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  return c.get_str();
}

}  // namespace nevlab
