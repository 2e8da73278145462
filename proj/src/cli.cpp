#include "nevlab/cli.hpp"

#include <CLI11.hpp>
#include <ostream>
#include <sstream>

#include "nevlab/io.hpp"

namespace nevlab {
namespace {

std::vector<Real> grid_of(const RunConfig& cfg) { return linear_grid(cfg.r_min, cfg.r_max, cfg.grid_points); }

HoloCurve need_curve(const RunConfig& cfg) {
  if (cfg.curve_path.empty()) raise(ErrorKind::ParseError, "--curve is required");
  return curve_from_json(load_json(cfg.curve_path));
}

std::vector<Hypersurface> need_divisors(const RunConfig& cfg) {
  if (cfg.divisor_path.empty()) raise(ErrorKind::ParseError, "--divisor is required");
  return divisors_from_json(load_json(cfg.divisor_path));
}

Json header(const RunConfig& cfg) { return Json{{"command", cfg.command}, {"seed", cfg.seed}}; }

void emit(const RunConfig& cfg, std::ostream& out, const Json& j, const std::vector<RadialProfile>& csv) {
  if (cfg.format == "json") {
    out << j.dump(2) << "\n";
  } else {
    out << profiles_to_csv(csv, cfg.precision);
  }
}

mpz_class parse_mpz(const std::string& s, const char* flag) {
  try {
    return mpz_class(s);
  } catch (const std::invalid_argument&) {
    raise(ErrorKind::ParseError, std::string(flag) + " expects an integer, got '" + s + "'");
  }
}

int cmd_tfr(const RunConfig& cfg, std::ostream& out) {
  const auto f = need_curve(cfg);
  auto T = characteristic_T(f, cfg.twist, grid_of(cfg));
  auto j = header(cfg);
  j["profile"] = to_json(T, cfg.precision);
  emit(cfg, out, j, {T});
  return kExitOk;
}

int cmd_count(const RunConfig& cfg, std::ostream& out) {
  const auto f = need_curve(cfg);
  const auto grid = grid_of(cfg);
  auto j = header(cfg);
  j["divisors"] = Json::array();
  std::vector<RadialProfile> csv;
  std::size_t idx = 0;
  for (const auto& Q : need_divisors(cfg)) {
    const auto zs = zero_set(f, Q, grid.back());
    Json item{{"divisor", Q.to_string()}, {"zero_set", to_json(zs, cfg.precision)}};
    auto N = counting_N(zs, grid);
    N.label = "N[" + std::to_string(idx) + "]";
    item["N"] = to_json(N, cfg.precision);
    csv.push_back(N);
    if (cfg.trunc) {
      auto Nt = counting_N(zs, grid, cfg.trunc);
      Nt.label = "N_trunc(" + std::to_string(*cfg.trunc) + ")[" + std::to_string(idx) + "]";
      item["N_trunc"] = to_json(Nt, cfg.precision);
      csv.push_back(Nt);
    }
    if (cfg.k_jet) {
      Json orders = Json::array();
      for (const auto& z : zs.records) orders.push_back(truncation_order(f, Q, z.location, *cfg.k_jet));
      if (zs.origin_order > 0) item["origin_truncation_order"] = truncation_order(f, Q, 0, *cfg.k_jet);
      item["truncation_orders"] = orders;
    }
    j["divisors"].push_back(item);
    ++idx;
  }
  emit(cfg, out, j, csv);
  return kExitOk;
}

int cmd_fmt(const RunConfig& cfg, std::ostream& out) {
  const auto f = need_curve(cfg);
  const auto divs = need_divisors(cfg);
  const auto res = fmt_residual(f, divs.front(), grid_of(cfg));
  auto j = header(cfg);
  j["fmt"] = to_json(res, cfg.precision);
  emit(cfg, out, j, {res.residual});
  return kExitOk;
}

int cmd_smt(const RunConfig& cfg, std::ostream& out) {
  const auto f = need_curve(cfg);
  const auto divs = need_divisors(cfg);
  SMTSpec spec;
  if (cfg.cartan) {
    spec = CartanWronskian{divs};
  } else {
    if (cfg.jetdiff_path.empty()) raise(ErrorKind::ParseError, "smt needs --cartan or --jetdiff");
    auto P = jetdiff_from_json(load_json(cfg.jetdiff_path));
    const std::size_t m = P.m;
    spec = GeneralJetDiff{std::move(P), divs.front(), m, cfg.m_tilde};
  }
  const auto rep = smt_margin(f, spec, grid_of(cfg), cfg.eps);
  auto j = header(cfg);
  j["report"] = to_json(rep, cfg.precision);
  emit(cfg, out, j, {rep.margin});
  return kExitOk;
}

int cmd_defect(const RunConfig& cfg, std::ostream& out) {
  const auto f = need_curve(cfg);
  const auto grid = grid_of(cfg);
  auto j = header(cfg);
  j["estimates"] = Json::array();
  std::vector<RadialProfile> csv;
  std::vector<Real> defects;
  bool hyperplanes = true;
  std::size_t idx = 0;
  for (const auto& Q : need_divisors(cfg)) {
    auto est = defect_estimate(f, Q, cfg.twist, cfg.mu0, grid);
    est.ratio_profile.label = "defect_ratio[" + std::to_string(idx++) + "]";
    Json item{{"divisor", Q.to_string()}, {"estimate", to_json(est, cfg.precision)}};
    if (!cfg.mu.empty()) {
      const auto mu = cfg.mu == "inf" ? std::nullopt : std::optional<std::size_t>(std::stoul(cfg.mu));
      const auto g = gamma(LineBundleO{static_cast<long>(Q.degree())}, LineBundleO{-cfg.twist});
      item["gamma"] = to_string(*g);
      item["lower_bound"] = rounded(defect_lower_bound(cfg.mu0, mu, *g), cfg.precision);
      item["consistent"] = defect_consistency(f, Q, cfg.mu0, mu, *g, grid);
    }
    j["estimates"].push_back(item);
    csv.push_back(est.ratio_profile);
    defects.push_back(std::max<Real>(0, est.liminf_estimate));
    hyperplanes = hyperplanes && Q.degree() == 1;
  }
  if (hyperplanes) {
    j["fujimoto_margin"] = rounded(defect_relation_margin(defects, Fujimoto{f.n(), 0}), cfg.precision);
  }
  j["gamma_bound_margin"] = rounded(defect_relation_margin(defects, GammaBound{Real(f.n() + 1), 0, 1}), cfg.precision);
  emit(cfg, out, j, csv);
  return kExitOk;
}

int cmd_loglemma(const RunConfig& cfg, std::ostream& out) {
  const auto grid = grid_of(cfg);
  RadialProfile lhs{grid, {}, "lhs"}, rhs{grid, {}, "rhs_core"}, ratio{grid, {}, "ratio"}, outer{grid, {}, "R"};
  std::optional<CurveExpr> phi;
  std::optional<HoloCurve> f;
  std::optional<GGJetDifferential> P;
  if (!cfg.phi.empty()) {
    phi = parse_curve_expr(cfg.phi);
  } else {
    if (cfg.jetdiff_path.empty()) raise(ErrorKind::ParseError, "loglemma needs --phi or --jetdiff with --curve");
    f = need_curve(cfg);
    P = jetdiff_from_json(load_json(cfg.jetdiff_path));
  }
  for (Real r : grid) {
    const Real R = r + cfg.gap;
    const auto c = phi ? logderiv_bound_check(*phi, cfg.l, cfg.t, cfg.p, r, R)
                       : main_lemma_check(*P, *f, cfg.t, cfg.p, r, R, cfg.twisted);
    lhs.values.push_back(c.lhs);
    rhs.values.push_back(c.rhs_core);
    ratio.values.push_back(c.ratio);
    outer.values.push_back(R);
  }
  auto j = header(cfg);
  j["R"] = to_json(outer, cfg.precision);
  j["lhs"] = to_json(lhs, cfg.precision);
  j["rhs_core"] = to_json(rhs, cfg.precision);
  j["ratio"] = to_json(ratio, cfg.precision);
  emit(cfg, out, j, {outer, lhs, rhs, ratio});
  return kExitOk;
}

int cmd_degree_bound(const RunConfig& cfg, std::ostream& out) {
  const auto p = params(cfg.n, cfg.c);
  const auto bound = degree_bound(cfg.n, cfg.c);
  const auto thr = degree_threshold(p);
  const auto checks = verify_chain(cfg.n, cfg.c);
  mpz_class d;
  if (cfg.d.empty()) {
    mpz_cdiv_q(d.get_mpz_t(), bound.get_num_mpz_t(), bound.get_den_mpz_t());
  } else {
    d = parse_mpz(cfg.d, "--d");
  }
  const auto dec = decompose(d, cfg.n, cfg.c);
  const auto alpha = alpha_threshold(p, dec.eps, dec.r, parse_mpz(cfg.beta, "--beta"),
                                     parse_mpz(cfg.beta_tilde, "--beta-tilde"));

  Json j = header(cfg);
  j["n"] = cfg.n;
  j["c"] = cfg.c;
  j["k"] = p.k.get_str();
  j["k_prime"] = p.kp.get_str();
  j["delta"] = p.delta.get_str();
  j["r0"] = to_string(p.r0);
  j["r0_factored"] = to_string(p.r0_alt);
  j["r0_forms_equal"] = p.r0 == p.r0_alt;
  j["threshold"] = thr.get_str();
  j["degree_bound"] = to_string(bound);
  j["checks"] = Json::array();
  for (const auto& ch : checks) {
    j["checks"].push_back(Json{{"name", ch.name},
                               {"lhs", to_string(ch.lhs)},
                               {"relation", ch.relation},
                               {"rhs", to_string(ch.rhs)},
                               {"pass", ch.pass}});
  }
  j["decomposition"] = Json{{"d", d.get_str()}, {"eps", dec.eps.get_str()}, {"r", dec.r.get_str()},
                            {"r_bound", dec.r_bound.get_str()}};
  j["alpha"] = Json{{"beta", cfg.beta},
                    {"beta_tilde", cfg.beta_tilde},
                    {"alpha_min", alpha.alpha_min.get_str()},
                    {"m_alpha", alpha.m_alpha.get_str()},
                    {"m_tilde_alpha", alpha.m_tilde_alpha.get_str()},
                    {"ratio_limit", to_string(alpha.ratio_limit)}};

  if (cfg.format == "json") {
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "quantity,value\n";
  for (const char* key : {"k", "k_prime", "delta", "r0", "r0_factored", "threshold", "degree_bound"}) {
    out << key << "," << j[key].get<std::string>() << "\n";
  }
  for (const auto& ch : checks) {
    out << "check_" << ch.name << "," << to_string(ch.lhs) << " " << ch.relation << " " << to_string(ch.rhs) << " "
        << (ch.pass ? "pass" : "FAIL") << "\n";
  }
  out << "d," << d.get_str() << "\neps," << dec.eps.get_str() << "\nr," << dec.r.get_str() << "\nr_bound,"
      << dec.r_bound.get_str() << "\nalpha_min," << alpha.alpha_min.get_str() << "\nratio_limit,"
      << to_string(alpha.ratio_limit) << "\n";
  return kExitOk;
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (cfg.command == "degree-bound") return;
  if (!(cfg.r_min >= 1)) raise(ErrorKind::ParameterViolation, "--rmin must be >= 1");
  if (cfg.grid_points < 8) raise(ErrorKind::ParameterViolation, "--grid must be >= 8");
  if (!(cfg.r_max > cfg.r_min)) raise(ErrorKind::ParameterViolation, "--rmax must exceed --rmin");
  if (cfg.format != "csv" && cfg.format != "json") raise(ErrorKind::ParseError, "--format must be csv or json");
  if (cfg.precision < 1 || cfg.precision > 17) raise(ErrorKind::ParameterViolation, "--precision must be in [1, 17]");
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    // Build the whole artifact first so that a failure leaves no partial output.
    std::ostringstream buf;
    int code = kExitUsage;
    if (cfg.command == "tfr") code = cmd_tfr(cfg, buf);
    else if (cfg.command == "count") code = cmd_count(cfg, buf);
    else if (cfg.command == "fmt") code = cmd_fmt(cfg, buf);
    else if (cfg.command == "smt") code = cmd_smt(cfg, buf);
    else if (cfg.command == "defect") code = cmd_defect(cfg, buf);
    else if (cfg.command == "loglemma") code = cmd_loglemma(cfg, buf);
    else if (cfg.command == "degree-bound") code = cmd_degree_bound(cfg, buf);
    else raise(ErrorKind::ParseError, "unknown command '" + cfg.command + "'");
    out << buf.str();
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    if (e.kind() == ErrorKind::ParseError) return kExitUsage;
    return is_numeric_failure(e.kind()) ? kExitNumeric : kExitHypothesis;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Numerical value-distribution checks for holomorphic curves"};
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--curve", cfg.curve_path, "curve JSON file");
  app.add_option("--divisor", cfg.divisor_path, "hypersurface or arrangement JSON file");
  app.add_option("--jetdiff", cfg.jetdiff_path, "jet differential JSON file");
  app.add_option("--rmin", cfg.r_min, "smallest radius")->capture_default_str();
  app.add_option("--rmax", cfg.r_max, "largest radius")->capture_default_str();
  app.add_option("--grid", cfg.grid_points, "number of radii")->capture_default_str();
  app.add_option("--eps", cfg.eps, "epsilon in the error term")->capture_default_str();
  app.add_option("--mu0", cfg.mu0, "truncation level of the defect")->capture_default_str();
  app.add_option("--trunc", cfg.trunc, "truncation level of N");
  app.add_option("--k", cfg.k_jet, "jet order for truncated contact orders");
  app.add_option("--precision", cfg.precision, "significant digits in the output")->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed recorded with the output")->capture_default_str();
  app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();

  app.add_subcommand("tfr", "characteristic function profile")
      ->add_option("--twist", cfg.twist, "degree of the twisting bundle O(d)");
  app.add_subcommand("count", "zero set and counting functions");
  app.add_subcommand("fmt", "first main theorem residual");
  auto* smt = app.add_subcommand("smt", "second main theorem margin");
  smt->add_flag("--cartan", cfg.cartan, "Wronskian of the hyperplane arrangement");
  smt->add_option("--m-tilde", cfg.m_tilde, "coefficient of T in the jet differential margin");
  auto* def = app.add_subcommand("defect", "defect estimates and defect relation margins");
  def->add_option("--twist", cfg.twist, "degree of the reference bundle A");
  def->add_option("--mu", cfg.mu, "claimed minimal multiplicity of the zeros, or inf");
  auto* lem = app.add_subcommand("loglemma", "logarithmic derivative lemma ratio sweep");
  lem->add_option("--phi", cfg.phi, "meromorphic function expression");
  lem->add_option("--l", cfg.l, "derivative order");
  lem->add_option("--t", cfg.t, "exponent t");
  lem->add_option("--p", cfg.p, "exponent p");
  lem->add_option("--gap", cfg.gap, "R - r");
  lem->add_flag("--twisted", cfg.twisted, "use the Fubini-Study norm of the value");
  auto* deg = app.add_subcommand("degree-bound", "exact degree bound arithmetic");
  deg->add_option("--n", cfg.n, "dimension");
  deg->add_option("--c", cfg.c, "number of components");
  deg->add_option("--d", cfg.d, "degree to decompose (default: the bound itself)");
  deg->add_option("--beta", cfg.beta, "beta");
  deg->add_option("--beta-tilde", cfg.beta_tilde, "beta tilde");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, eo;
    const int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? kExitOk : kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return run(cfg, out, err);
}

}  // namespace nevlab
