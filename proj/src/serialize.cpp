#include "hftlab/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "hftlab/error.hpp"
#include "hftlab/function_spec.hpp"

namespace hftlab {

Json number_json(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double number_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw Error(ErrorKind::parse, "expected a number, got " + j.dump());
}

Json to_json(const LogComplex& v) { return {{"log_abs", number_json(v.log_abs())}, {"phase", number_json(v.phase())}}; }

LogComplex log_complex_from_json(const Json& j) {
  return {number_from_json(j.at("log_abs")), number_from_json(j.at("phase"))};
}

Json complex_json(cplx z) { return {{"re", number_json(z.real())}, {"im", number_json(z.imag())}}; }

cplx complex_from_json(const Json& j) { return {number_from_json(j.at("re")), number_from_json(j.at("im"))}; }

Method method_from_string(const std::string& s) {
  for (Method m : {Method::closed_form, Method::quadrature, Method::continuation_identity, Method::cauchy_contour})
    if (to_string(m) == s) return m;
  throw Error(ErrorKind::parse, "unknown method " + s);
}

RadiusClass radius_class_from_string(const std::string& s) {
  for (RadiusClass c : {RadiusClass::regular, RadiusClass::divergent, RadiusClass::inconclusive})
    if (to_string(c) == s) return c;
  throw Error(ErrorKind::parse, "unknown classification " + s);
}

WitnessStatus witness_status_from_string(const std::string& s) {
  for (WitnessStatus w : {WitnessStatus::found, WitnessStatus::none, WitnessStatus::inconclusive})
    if (to_string(w) == s) return w;
  throw Error(ErrorKind::parse, "unknown witness status " + s);
}

Json to_json(const TaylorEntry& e) {
  Json j = {{"n", e.n},
            {"log_abs", number_json(e.derivative.log_abs())},
            {"phase", number_json(e.derivative.phase())},
            {"C", number_json(e.C)},
            {"method", to_string(e.method)},
            {"flagged", e.flagged}};
  if (!e.note.empty()) j["note"] = e.note;
  return j;
}

Json to_json(const TaylorTable& t) {
  Json entries = Json::array();
  for (const auto& e : t.entries) entries.push_back(to_json(e));
  return {{"function", format_function(t.function)},
          {"alpha", number_json(t.alpha)},
          {"n_max", t.n_max},
          {"entries", entries}};
}

TaylorTable taylor_table_from_json(const Json& j) {
  TaylorTable t;
  t.function = parse_function(j.at("function").get<std::string>());
  t.alpha = number_from_json(j.at("alpha"));
  t.n_max = j.at("n_max").get<int>();
  for (const auto& e : j.at("entries")) {
    TaylorEntry x;
    x.n = e.at("n").get<int>();
    x.derivative = {number_from_json(e.at("log_abs")), number_from_json(e.at("phase"))};
    x.C = number_from_json(e.at("C"));
    x.method = method_from_string(e.at("method").get<std::string>());
    x.flagged = e.at("flagged").get<bool>();
    if (e.contains("note")) x.note = e.at("note").get<std::string>();
    t.entries.push_back(x);
  }
  return t;
}

Json to_json(const RadiusEstimate& r) {
  Json pts = Json::array();
  for (const auto& [n, lc] : r.fit_points) pts.push_back({{"n", n}, {"log_C", number_json(lc)}});
  Json series = Json::array();
  for (double c : r.series_C) series.push_back(number_json(c));
  return {{"classification", to_string(r.classification)},
          {"radius_hat", number_json(r.radius_hat)},
          {"growth_exponent_hat", number_json(r.growth_exponent_hat)},
          {"n_lo", r.n_lo},
          {"n_hi", r.n_hi},
          {"residual", number_json(r.residual)},
          {"fit_points", pts},
          {"series_C", series}};
}

RadiusEstimate radius_estimate_from_json(const Json& j) {
  RadiusEstimate r;
  r.classification = radius_class_from_string(j.at("classification").get<std::string>());
  r.radius_hat = number_from_json(j.at("radius_hat"));
  r.growth_exponent_hat = number_from_json(j.at("growth_exponent_hat"));
  r.n_lo = j.at("n_lo").get<int>();
  r.n_hi = j.at("n_hi").get<int>();
  r.residual = number_from_json(j.at("residual"));
  for (const auto& p : j.at("fit_points")) r.fit_points.emplace_back(p.at("n").get<int>(), number_from_json(p.at("log_C")));
  for (const auto& c : j.at("series_C")) r.series_C.push_back(number_from_json(c));
  return r;
}

Json to_json(const WitnessReport& r) {
  Json values = Json::array();
  for (double v : r.values) values.push_back(number_json(v));
  Json j = {{"function", format_function(r.function)},
            {"alpha", number_json(r.alpha)},
            {"N", number_json(r.N)},
            {"M", r.M},
            {"budget", r.budget},
            {"status", to_string(r.status)},
            {"witness_n", r.witness_n ? Json(*r.witness_n) : Json(nullptr)},
            {"values_start_n", 1},
            {"values", values},
            {"scope", "within budget n <= " + std::to_string(r.budget)}};
  if (!r.note.empty()) j["note"] = r.note;
  j["table"] = to_json(r.table);
  return j;
}

WitnessReport witness_report_from_json(const Json& j) {
  WitnessReport r;
  r.function = parse_function(j.at("function").get<std::string>());
  r.alpha = number_from_json(j.at("alpha"));
  r.N = number_from_json(j.at("N"));
  r.M = j.at("M").get<int>();
  r.budget = j.at("budget").get<int>();
  r.status = witness_status_from_string(j.at("status").get<std::string>());
  if (!j.at("witness_n").is_null()) r.witness_n = j.at("witness_n").get<int>();
  for (const auto& v : j.at("values")) r.values.push_back(number_from_json(v));
  if (j.contains("note")) r.note = j.at("note").get<std::string>();
  r.table = taylor_table_from_json(j.at("table"));
  return r;
}

Json to_json(const SeriesEvaluation& s) {
  Json j = {{"value", to_json(s.value)},
            {"value_plain", complex_json(s.value.to_complex())},
            {"terms_used", s.terms_used},
            {"truncation_bound", number_json(s.truncation_bound)},
            {"variant", to_string(s.variant)}};
  if (s.other_variant) j["other_variant"] = to_json(*s.other_variant);
  return j;
}

Json to_json(const FactorialGap& g) {
  return {{"n0", g.n0},
          {"verified_through", g.verified_through},
          {"margin_at_n0", number_json(g.margin_at_n0)},
          {"margin_before", g.margin_before ? number_json(*g.margin_before) : Json(nullptr)}};
}

Json to_json(const SeminormValue& s) {
  return {{"value", number_json(s.value)},
          {"attained_at", s.attained_at ? number_json(*s.attained_at) : Json(nullptr)}};
}

Json to_json(const LedgerLine& l) {
  return {{"formula_id", l.formula_id},
          {"variant", l.variant},
          {"grid_point", l.grid_point},
          {"status", l.pass ? "pass" : "fail"},
          {"abs_discrepancy", number_json(l.abs_discrepancy)}};
}

std::string csv_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string CsvTable::str() const {
  std::ostringstream os;
  auto row_out = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      const std::string& cell = row[i];
      if (cell.find_first_of(",\"\n") == std::string::npos) {
        os << cell;
      } else {
        os << '"';
        for (char c : cell) os << (c == '"' ? std::string("\"\"") : std::string(1, c));
        os << '"';
      }
    }
    os << '\n';
  };
  row_out(header);
  for (const auto& r : rows) row_out(r);
  return os.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> row;
  std::string cell;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
      any = true;
    } else if (c == ',') {
      row.push_back(cell);
      cell.clear();
      any = true;
    } else if (c == '\n') {
      row.push_back(cell);
      out.push_back(row);
      row.clear();
      cell.clear();
      any = false;
    } else {
      cell += c;
      any = true;
    }
  }
  if (any) {
    row.push_back(cell);
    out.push_back(row);
  }
  return out;
}

CsvTable table_csv(const TaylorTable& t) {
  CsvTable csv{{"n", "log_abs", "phase", "C", "log_C", "log_n", "method", "flagged"}, {}};
  for (const auto& e : t.entries) {
    csv.rows.push_back({std::to_string(e.n), csv_number(e.derivative.log_abs()), csv_number(e.derivative.phase()),
                        csv_number(e.C), csv_number(std::log(e.C)),
                        csv_number(e.n > 0 ? std::log(double(e.n)) : -std::numeric_limits<double>::infinity()),
                        to_string(e.method), e.flagged ? "1" : "0"});
  }
  return csv;
}

TaylorTable taylor_table_from_csv(const std::string& text, const HalfLineFunction& f, double alpha) {
  const auto rows = parse_csv(text);
  if (rows.empty()) throw Error(ErrorKind::parse, "empty csv");
  TaylorTable t;
  t.function = f;
  t.alpha = alpha;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto& r = rows[i];
    if (r.size() != 8) throw Error(ErrorKind::parse, "csv row " + std::to_string(i) + " has the wrong width");
    TaylorEntry e;
    e.n = std::stoi(r[0]);
    e.derivative = {std::strtod(r[1].c_str(), nullptr), std::strtod(r[2].c_str(), nullptr)};
    e.C = std::strtod(r[3].c_str(), nullptr);
    e.method = method_from_string(r[6]);
    e.flagged = r[7] == "1";
    t.entries.push_back(e);
  }
  t.n_max = int(t.entries.size()) - 1;
  return t;
}

}  // namespace hftlab
