#include "hftlab/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <map>
#include <set>

#include "CLI11.hpp"
#include "hftlab/baire.hpp"
#include "hftlab/continuation.hpp"
#include "hftlab/error.hpp"
#include "hftlab/function_spec.hpp"
#include "hftlab/serialize.hpp"
#include "hftlab/transform.hpp"

namespace hftlab::cli {
namespace {

struct Payload {
  Json result;
  CsvTable csv;
  Json provenance = Json::object();
  bool inconclusive = false;
};

double resolve_tol(const CommandRequest& req) {
  double tol = kDefaultTol;
  if (req.tol) {
    tol = *req.tol;
  } else if (const char* env = std::getenv(kTolEnv)) {
    char* end = nullptr;
    tol = std::strtod(env, &end);
    if (end == env || *end != '\0') throw Error(ErrorKind::parse, std::string(kTolEnv) + " is not a number");
  }
  if (!(tol > 0.0 && tol < 1.0)) throw Error(ErrorKind::precondition, "tolerance must lie in (0, 1)");
  return tol;
}

TableMethod table_method(const std::string& s) {
  if (s == "auto") return TableMethod::automatic;
  if (s == "closed") return TableMethod::closed;
  if (s == "quadrature") return TableMethod::quadrature;
  throw Error(ErrorKind::parse, "unknown method " + s + " (auto|closed|quadrature)");
}

const HalfLineFunction& need_function(const HalfLineFunction& f, const CommandRequest& req) {
  if (req.function.empty()) throw Error(ErrorKind::precondition, req.subcommand + " needs --function");
  return f;
}

std::string formula_id(const Atom& atom, Method m) {
  const std::string fam = family_name(atom);
  switch (m) {
    case Method::closed_form: return fam == "polyexp" ? "polyexp.transform" : fam + ".derivative_law";
    case Method::continuation_identity: return "phi.identity";
    case Method::cauchy_contour: return "phi.cauchy_contour";
    case Method::quadrature: return fam + ".ray_quadrature";
  }
  return fam;
}

// Names the formula behind every atom of f at the point alpha, plus the
// per-method entry counts of the table when there is one.
Json provenance_for(const HalfLineFunction& f, double alpha, const TaylorTable* table, TableMethod how) {
  std::map<std::string, std::set<std::string>> by_method;
  for (const auto& term : f.terms()) {
    Method m = Method::quadrature;
    if (how != TableMethod::quadrature) {
      if (std::holds_alternative<PolyExp>(term.atom)) {
        m = Method::closed_form;
      } else if (alpha == modulation(term.atom) && closed_form_verified(term.atom)) {
        m = std::holds_alternative<Phi>(term.atom) ? Method::continuation_identity : Method::closed_form;
      }
    }
    by_method[to_string(m)].insert(formula_id(term.atom, m));
  }
  Json out = Json::object();
  for (Method m : {Method::closed_form, Method::continuation_identity, Method::cauchy_contour, Method::quadrature}) {
    Json ids = Json::array();
    for (const auto& id : by_method[to_string(m)]) ids.push_back(id);
    out[to_string(m)] = ids;
  }
  if (table) {
    Json counts = Json::object();
    for (const auto& e : table->entries) {
      const std::string key = to_string(e.method);
      counts[key] = counts.value(key, 0) + 1;
    }
    out["entries_by_method"] = counts;
  }
  return out;
}

Json frozen_constants() {
  return {{"chi0.continuation", chi0_frozen_variant().name},
          {"psi.continuation", "oracle_derived (checked against quadrature on every call)"},
          {"polyexp.constant", "oracle_derived"}};
}

CsvTable single_row(const std::vector<std::pair<std::string, std::string>>& cells) {
  CsvTable t;
  std::vector<std::string> row;
  for (const auto& [k, v] : cells) {
    t.header.push_back(k);
    row.push_back(v);
  }
  t.rows.push_back(row);
  return t;
}

Payload do_eval(const CommandRequest& req, const HalfLineFunction& f, double tol) {
  need_function(f, req);
  if (req.n < 0) throw Error(ErrorKind::precondition, "--n must be >= 0");
  const cplx z = parse_complex(req.z);
  const TransformValue v = hft_derivative_detail(f, req.n, z, tol);
  Payload p;
  p.result = {{"function", format_function(f)},
              {"n", req.n},
              {"z", complex_json(z)},
              {"value", to_json(v.value)},
              {"value_plain", complex_json(v.value.to_complex())},
              {"method", to_string(v.method)},
              {"rel_error", number_json(v.rel_error)}};
  const cplx plain = v.value.to_complex();
  p.csv = single_row({{"n", std::to_string(req.n)},
                      {"z_re", csv_number(z.real())},
                      {"z_im", csv_number(z.imag())},
                      {"log_abs", csv_number(v.value.log_abs())},
                      {"phase", csv_number(v.value.phase())},
                      {"re", csv_number(plain.real())},
                      {"im", csv_number(plain.imag())},
                      {"method", to_string(v.method)},
                      {"rel_error", csv_number(v.rel_error)}});
  const bool at_point = z.imag() == 0.0;
  p.provenance = provenance_for(f, at_point ? z.real() : std::nan(""), nullptr, TableMethod::automatic);
  return p;
}

Payload do_taylor(const CommandRequest& req, const HalfLineFunction& f, double tol) {
  need_function(f, req);
  const double alpha = req.alpha.value_or(distinguished_point(f));
  const TableMethod how = table_method(req.method);
  const TaylorTable t = taylor_table(f, alpha, req.nmax, how, tol);
  Payload p;
  p.result = to_json(t);
  p.csv = table_csv(t);
  p.provenance = provenance_for(f, alpha, &t, how);
  for (const auto& e : t.entries) p.inconclusive = p.inconclusive || e.flagged;
  return p;
}

CsvTable radius_csv(const TaylorTable& t, const RadiusEstimate& est) {
  std::set<int> fit;
  for (const auto& pt : est.fit_points) fit.insert(pt.first);
  CsvTable csv{{"n", "C", "log_C", "log_n", "in_fit"}, {}};
  for (int n = est.n_lo; n <= est.n_hi; ++n) {
    const double c = t.entries[n].C;
    csv.rows.push_back({std::to_string(n), csv_number(c), csv_number(std::log(c)), csv_number(std::log(double(n))),
                        fit.count(n) ? "1" : "0"});
  }
  return csv;
}

Payload do_radius(const CommandRequest& req, const HalfLineFunction& f, double tol) {
  need_function(f, req);
  Payload p;
  TaylorTable table;
  Json extra = Json::object();
  int n_lo = 0, n_hi = 0;
  if (req.source == "taylor") {
    const double alpha = req.alpha.value_or(distinguished_point(f));
    const TableMethod how = table_method(req.method);
    table = taylor_table(f, alpha, req.nmax, how, tol);
    n_lo = req.n_lo.value_or(std::max(1, req.nmax / 4));
    n_hi = req.n_hi.value_or(req.nmax);
    p.provenance = provenance_for(f, alpha, &table, how);
  } else if (req.source == "cauchy") {
    const auto* phi = std::get_if<Phi>(&f.variant());
    if (!phi) throw Error(ErrorKind::precondition, "--source cauchy needs a single phi atom");
    if (!req.sigma) throw Error(ErrorKind::precondition, "--source cauchy needs --sigma");
    const CauchyTable ct = phi_cauchy_table(phi->alpha, *req.sigma, req.r, req.nmax);
    table = ct.table;
    n_lo = req.n_lo.value_or(3);
    n_hi = req.n_hi.value_or(std::min(req.nmax, ct.reliable_through));
    extra = {{"r", number_json(ct.r)}, {"nodes", ct.nodes}, {"reliable_through", ct.reliable_through}};
    p.provenance = {{"cauchy_contour", {"phi.continuation", "chi0.continuation"}},
                    {"frozen_constants", frozen_constants()}};
  } else {
    throw Error(ErrorKind::parse, "unknown source " + req.source + " (taylor|cauchy)");
  }
  const RadiusEstimate est = estimate_radius(table, n_lo, n_hi);
  p.result = to_json(est);
  p.result["function"] = format_function(f);
  p.result["alpha"] = number_json(table.alpha);
  p.result["source"] = req.source;
  if (!extra.empty()) p.result["cauchy"] = extra;
  const auto expected = expected_growth_exponent(f);
  p.result["expected_growth_exponent"] = expected ? number_json(*expected) : Json(nullptr);
  p.csv = radius_csv(table, est);
  p.inconclusive = est.classification == RadiusClass::inconclusive;
  return p;
}

Payload do_continue(const CommandRequest& req, const HalfLineFunction& f) {
  need_function(f, req);
  const cplx z = parse_complex(req.z);
  Payload p;
  SeriesEvaluation s;
  bool series = true;
  LogComplex value;
  if (const auto* chi = std::get_if<Chi>(&f.variant())) {
    const CutPlanePoint at(z, chi->alpha);
    s = chi0_continuation(CutPlanePoint(z - chi->alpha, 0.0));
    value = s.value;
  } else if (const auto* phi = std::get_if<Phi>(&f.variant())) {
    value = phi_continuation(phi->alpha, CutPlanePoint(z, phi->alpha));
    series = false;
  } else if (const auto* psi = std::get_if<PsiP>(&f.variant())) {
    s = psi_p_continuation(psi->p, CutPlanePoint(z, 0.0));
    value = s.value;
  } else {
    throw Error(ErrorKind::precondition, "continue supports single chi, phi or psi atoms");
  }
  if (series) {
    p.result = to_json(s);
  } else {
    p.result = {{"value", to_json(value)}, {"value_plain", complex_json(value.to_complex())}};
  }
  p.result["function"] = format_function(f);
  p.result["z"] = complex_json(z);
  const cplx plain = value.to_complex();
  p.csv = single_row({{"z_re", csv_number(z.real())},
                      {"z_im", csv_number(z.imag())},
                      {"log_abs", csv_number(value.log_abs())},
                      {"phase", csv_number(value.phase())},
                      {"re", csv_number(plain.real())},
                      {"im", csv_number(plain.imag())},
                      {"terms_used", std::to_string(series ? s.terms_used : 0)},
                      {"truncation_bound", csv_number(series ? s.truncation_bound : 0.0)}});
  p.provenance = {{"continuation", {family_name(f.terms().front().atom) + ".continuation"}},
                  {"frozen_constants", frozen_constants()}};
  return p;
}

PerturbFamily perturb_family(const std::string& s) {
  if (s == "phi") return PerturbFamily::phi;
  if (s == "x") return PerturbFamily::x;
  throw Error(ErrorKind::parse, "unknown kind " + s + " (phi|x)");
}

Payload do_perturb(const CommandRequest& req, const HalfLineFunction& f) {
  const double alpha = req.alpha.value_or(0.0);
  const HalfLineFunction g = perturb(f, alpha, req.j, perturb_family(req.kind), req.M.value_or(2));
  const double d = metric_rho(g, f, 20);
  Payload p;
  p.result = {{"function", format_function(f)},
              {"alpha", number_json(alpha)},
              {"j", req.j},
              {"kind", req.kind},
              {"perturbed", format_function(g)},
              {"metric_rho_L20", number_json(d)}};
  p.csv = single_row({{"perturbed", format_function(g)}, {"j", std::to_string(req.j)}, {"metric_rho_L20", csv_number(d)}});
  return p;
}

CsvTable witness_csv(const std::vector<WitnessReport>& reports) {
  CsvTable csv{{"alpha", "n", "value", "is_witness"}, {}};
  for (const auto& r : reports) {
    for (int n = 1; n <= r.last_inspected(); ++n)
      csv.rows.push_back({csv_number(r.alpha), std::to_string(n), csv_number(r.value_at(n)),
                          r.witness_n && *r.witness_n == n ? "1" : "0"});
  }
  return csv;
}

Payload do_witness(const CommandRequest& req, const HalfLineFunction& f, double tol) {
  Payload p;
  if (!req.alphas.empty()) {
    const DenseGridReport d = dense_grid_demo(f, req.alphas, req.N, req.budget);
    Json reports = Json::array();
    for (const auto& r : d.reports) {
      reports.push_back(to_json(r));
      p.inconclusive = p.inconclusive || r.status == WitnessStatus::inconclusive;
    }
    Json eps = Json::array();
    for (double e : d.epsilons) eps.push_back(number_json(e));
    p.result = {{"mode", "dense_grid"},
                {"function", format_function(d.function)},
                {"epsilons", eps},
                {"retried", d.retried},
                {"reports", reports}};
    p.csv = witness_csv(d.reports);
    p.provenance = provenance_for(d.function, std::nan(""), nullptr, TableMethod::automatic);
    return p;
  }
  need_function(f, req);
  const double alpha = req.alpha.value_or(distinguished_point(f));
  const WitnessReport r =
      req.M ? theta_witness(f, alpha, req.N, *req.M, req.budget, tol) : omega_witness(f, alpha, req.N, req.budget, tol);
  p.result = to_json(r);
  p.result["mode"] = req.M ? "theta" : "omega";
  p.csv = witness_csv({r});
  p.inconclusive = r.status == WitnessStatus::inconclusive;
  p.provenance = provenance_for(f, alpha, &r.table, TableMethod::automatic);
  return p;
}

Payload do_gap(const CommandRequest& req) {
  const int M = req.M.value_or(2);
  const FactorialGap g = factorial_gap(M, req.N, req.j);
  Json chain = Json::array();
  for (int k = 0; k < 10; ++k) {
    const int n = g.n0 + 5 * k;
    chain.push_back({{"n", n}, {"margin", number_json(chain_link_margin(M, n))}});
  }
  Payload p;
  p.result = to_json(g);
  p.result["M"] = M;
  p.result["N"] = number_json(req.N);
  p.result["j"] = req.j;
  p.result["fails_before_n0"] = g.margin_before ? Json(*g.margin_before < 0.0) : Json(nullptr);
  p.result["chain_link"] = chain;
  p.csv = single_row({{"M", std::to_string(M)},
                      {"N", csv_number(req.N)},
                      {"j", std::to_string(req.j)},
                      {"n0", std::to_string(g.n0)},
                      {"verified_through", std::to_string(g.verified_through)},
                      {"margin_at_n0", csv_number(g.margin_at_n0)},
                      {"margin_before", g.margin_before ? csv_number(*g.margin_before) : ""}});
  p.provenance = {{"closed_form", {"gap.log_gamma"}}};
  return p;
}

Payload do_verify(const CommandRequest& req) {
  const std::vector<LedgerLine> lines = run_verification();
  const std::string text = format_ledger(lines);
  std::ofstream out(req.ledger_path, std::ios::binary);
  if (!out) throw Error(ErrorKind::precondition, "cannot write ledger to " + req.ledger_path);
  out << text;

  // Variants passing at every grid point survive.
  std::map<std::string, std::map<std::string, bool>> survive;
  int pass = 0, fail = 0;
  Json jl = Json::array();
  for (const auto& l : lines) {
    auto [it, inserted] = survive[l.formula_id].try_emplace(l.variant, true);
    it->second = it->second && l.pass;
    (l.pass ? pass : fail)++;
    jl.push_back(to_json(l));
  }
  Json decisions = Json::object();
  for (const auto& [id, variants] : survive) {
    Json ok = Json::array(), rejected = Json::array();
    for (const auto& [v, s] : variants) (s ? ok : rejected).push_back(v);
    decisions[id] = {{"surviving", ok}, {"rejected", rejected}};
  }
  Payload p;
  p.result = {{"ledger_path", req.ledger_path},
              {"summary", {{"pass", pass}, {"fail", fail}}},
              {"decisions", decisions},
              {"frozen_constants", frozen_constants()},
              {"lines", jl}};
  p.csv = {{"formula_id", "variant", "grid_point", "status", "abs_discrepancy"}, {}};
  for (const auto& l : lines)
    p.csv.rows.push_back({l.formula_id, l.variant, l.grid_point, l.pass ? "pass" : "fail", csv_number(l.abs_discrepancy)});
  p.provenance = {{"oracle", "ray quadrature of the defining integrals"}};
  return p;
}

Payload do_report(const CommandRequest& req, const HalfLineFunction& f, double tol) {
  need_function(f, req);
  if (req.levels < 0 || req.levels > 20) throw Error(ErrorKind::precondition, "--levels must lie in [0, 20]");
  const double alpha = req.alpha.value_or(distinguished_point(f));
  Payload p;
  const SmoothnessReport sr = smoothness_report(f);
  Json smooth = {{"schwartz_member", sr.schwartz_member},
                 {"first_failing_derivative",
                  sr.first_failing_derivative ? Json(*sr.first_failing_derivative) : Json(nullptr)}};
  Json norms = Json::array();
  for (int l = 0; l <= req.levels; ++l) {
    Json n = to_json(seminorm_rho(f, l));
    n["l"] = l;
    norms.push_back(n);
  }
  const TaylorTable t = taylor_table(f, alpha, req.nmax, TableMethod::automatic, tol);
  Json radius;
  try {
    const int n_lo = req.n_lo.value_or(std::max(1, req.nmax / 4));
    const RadiusEstimate est = estimate_radius(t, n_lo, req.n_hi.value_or(req.nmax));
    radius = to_json(est);
    p.inconclusive = est.classification == RadiusClass::inconclusive;
  } catch (const Error& e) {
    if (e.is_validation()) throw;
    radius = {{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
    p.inconclusive = true;
  }
  const auto expected = expected_growth_exponent(f);
  p.result = {{"function", format_function(f)},
              {"alpha", number_json(alpha)},
              {"smoothness", smooth},
              {"seminorms", norms},
              {"expected_growth_exponent", expected ? number_json(*expected) : Json(nullptr)},
              {"radius", radius},
              {"taylor", to_json(t)}};
  p.csv = table_csv(t);
  p.provenance = provenance_for(f, alpha, &t, TableMethod::automatic);
  return p;
}

std::string timestamp_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json request_json(const CommandRequest& req) {
  auto opt = [](const auto& o) { return o ? Json(*o) : Json(nullptr); };
  Json alphas = Json::array();
  for (double a : req.alphas) alphas.push_back(number_json(a));
  return {{"subcommand", req.subcommand},
          {"function", req.function},
          {"alpha", req.alpha ? number_json(*req.alpha) : Json(nullptr)},
          {"nmax", req.nmax},
          {"n", req.n},
          {"n_lo", opt(req.n_lo)},
          {"n_hi", opt(req.n_hi)},
          {"z", req.z},
          {"method", req.method},
          {"source", req.source},
          {"sigma", req.sigma ? number_json(*req.sigma) : Json(nullptr)},
          {"r", number_json(req.r)},
          {"N", number_json(req.N)},
          {"M", opt(req.M)},
          {"j", req.j},
          {"kind", req.kind},
          {"budget", req.budget},
          {"alphas", alphas},
          {"levels", req.levels},
          {"output", req.output == Output::csv ? "csv" : "json"}};
}

std::string error_line(ErrorKind kind, const std::string& message, int code) {
  return Json{{"error", {{"kind", std::string(to_string(kind))}, {"message", message}}}, {"exit_code", code}}.dump();
}

std::string plain_error_line(const std::string& kind, const std::string& message, int code) {
  return Json{{"error", {{"kind", kind}, {"message", message}}}, {"exit_code", code}}.dump();
}

const std::set<std::string> kSubcommands = {"eval",    "taylor", "radius", "continue", "perturb",
                                            "witness", "gap",    "verify", "report"};

}  // namespace

CommandResult run(const CommandRequest& req) {
  CommandResult res;
  try {
    if (!kSubcommands.count(req.subcommand)) throw Error(ErrorKind::parse, "unknown subcommand " + req.subcommand);
    if (req.nmax < 1) throw Error(ErrorKind::precondition, "--nmax must be >= 1");
    const double tol = resolve_tol(req);
    const HalfLineFunction f = req.function.empty() ? HalfLineFunction::zero() : parse_function(req.function);

    Payload p;
    const std::string& s = req.subcommand;
    if (s == "eval") p = do_eval(req, f, tol);
    else if (s == "taylor") p = do_taylor(req, f, tol);
    else if (s == "radius") p = do_radius(req, f, tol);
    else if (s == "continue") p = do_continue(req, f);
    else if (s == "perturb") p = do_perturb(req, f);
    else if (s == "witness") p = do_witness(req, f, tol);
    else if (s == "gap") p = do_gap(req);
    else if (s == "verify") p = do_verify(req);
    else p = do_report(req, f, tol);

    if (req.output == Output::csv) {
      res.payload = p.csv.str();
    } else {
      Json j = {{"schema_version", kSchemaVersion},
                {"subcommand", req.subcommand},
                {"status", p.inconclusive ? "inconclusive" : "ok"},
                {"request", request_json(req)},
                {"tolerance", number_json(tol)},
                {"provenance", p.provenance},
                {"result", p.result}};
      if (req.timestamp) j["generated_at"] = timestamp_now();
      res.payload = j.dump(2) + "\n";
    }
    if (req.out_path) {
      std::ofstream out(*req.out_path, std::ios::binary);
      if (!out) throw Error(ErrorKind::precondition, "cannot write to " + *req.out_path);
      out << res.payload;
      res.written_to_file = true;
    }
  } catch (const Error& e) {
    res.payload.clear();
    res.exit_code = e.is_validation() ? kExitValidation : kExitNumerical;
    res.error = error_line(e.kind(), e.what(), res.exit_code);
  } catch (const std::exception& e) {
    res.payload.clear();
    res.exit_code = kExitNumerical;
    res.error = plain_error_line("internal", e.what(), res.exit_code);
  }
  return res;
}

CommandResult run_args(const std::vector<std::string>& args) {
  CLI::App app{"Half-line Fourier-Laplace transform laboratory", "hftlab"};
  app.require_subcommand(1);
  CommandRequest req;
  std::string output = "json";
  bool no_timestamp = false;
  std::string out_path;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--output", output, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", out_path, "write the payload to this file");
    sub->add_flag("--no-timestamp", no_timestamp, "omit generated_at");
    sub->add_option("--tol", req.tol, std::string("relative tolerance (default from ") + kTolEnv + ")");
  };
  auto function = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--function", req.function, "function spec, e.g. chi:alpha=0");
    if (required) o->required();
  };

  auto* eval = app.add_subcommand("eval", "transform value or derivative at z");
  function(eval, true);
  eval->add_option("--z", req.z, "complex point a+bi with Im z <= 0");
  eval->add_option("--n", req.n, "derivative order");

  auto* taylor = app.add_subcommand("taylor", "derivative table at alpha");
  function(taylor, true);
  taylor->add_option("--alpha", req.alpha);
  taylor->add_option("--nmax", req.nmax);
  taylor->add_option("--method", req.method, "auto|closed|quadrature");

  auto* radius = app.add_subcommand("radius", "radius of convergence estimate");
  function(radius, true);
  radius->add_option("--alpha", req.alpha);
  radius->add_option("--nmax", req.nmax);
  radius->add_option("--nlo", req.n_lo);
  radius->add_option("--nhi", req.n_hi);
  radius->add_option("--method", req.method, "auto|closed|quadrature");
  radius->add_option("--source", req.source, "taylor|cauchy");
  radius->add_option("--sigma", req.sigma, "expansion point for --source cauchy");
  radius->add_option("--r", req.r, "Cauchy circle radius (default: half the distance to the cut)");

  auto* cont = app.add_subcommand("continue", "analytic continuation off the cut");
  function(cont, true);
  cont->add_option("--z", req.z)->required();

  auto* pert = app.add_subcommand("perturb", "f + (1/j) Phi(alpha) or f + (1/j) X(alpha, M)");
  function(pert, true);
  pert->add_option("--alpha", req.alpha);
  pert->add_option("--j", req.j);
  pert->add_option("--kind", req.kind, "phi|x");
  pert->add_option("--M", req.M);

  auto* wit = app.add_subcommand("witness", "Omega / Theta_M membership within a budget");
  function(wit, false);
  wit->add_option("--alpha", req.alpha);
  wit->add_option("--N", req.N);
  wit->add_option("--M", req.M, "use K_M (Theta_M) instead of C (Omega)");
  wit->add_option("--budget", req.budget);
  wit->add_option("--alphas", req.alphas, "dense-grid demo over these points")->delimiter(',');

  auto* gap = app.add_subcommand("gap", "factorial-gap threshold n0");
  gap->add_option("--M", req.M);
  gap->add_option("--N", req.N);
  gap->add_option("--j", req.j);

  auto* verify = app.add_subcommand("verify", "constant-verification protocol");
  verify->add_option("--ledger", req.ledger_path, "where to write the provenance ledger");

  auto* report = app.add_subcommand("report", "smoothness, seminorms, table and radius");
  function(report, true);
  report->add_option("--alpha", req.alpha);
  report->add_option("--nmax", req.nmax);
  report->add_option("--nlo", req.n_lo);
  report->add_option("--nhi", req.n_hi);
  report->add_option("--levels", req.levels, "seminorm levels 0..L");

  for (auto* sub : {eval, taylor, radius, cont, pert, wit, gap, verify, report}) common(sub);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    return {kExitOk, app.help(), "", false};
  } catch (const CLI::ParseError& e) {
    return {kExitValidation, "", plain_error_line("usage", e.what(), kExitValidation), false};
  }
  for (auto* sub : app.get_subcommands()) req.subcommand = sub->get_name();
  req.output = output == "csv" ? Output::csv : Output::json;
  req.timestamp = !no_timestamp;
  if (!out_path.empty()) req.out_path = out_path;
  return run(req);
}

}  // namespace hftlab::cli
