#pragma once

#include <string>
#include <vector>

#include "hftlab/baire.hpp"
#include "hftlab/continuation.hpp"
#include "hftlab/transform.hpp"
#include "json.hpp"

namespace hftlab {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Schema notes (version 1):
//   - finite floats are JSON numbers printed as the shortest decimal that
//     round-trips; non-finite floats are the strings "inf", "-inf", "nan"
//   - LogComplex is {"log_abs": x, "phase": y}; plain complex is {"re": x, "im": y}
//   - functions are spec strings (see function_spec.hpp)

Json number_json(double x);
double number_from_json(const Json& j);

Json to_json(const LogComplex& v);
LogComplex log_complex_from_json(const Json& j);
Json complex_json(cplx z);
cplx complex_from_json(const Json& j);

Json to_json(const TaylorEntry& e);
Json to_json(const TaylorTable& t);
TaylorTable taylor_table_from_json(const Json& j);

Json to_json(const RadiusEstimate& r);
RadiusEstimate radius_estimate_from_json(const Json& j);

Json to_json(const WitnessReport& r);
WitnessReport witness_report_from_json(const Json& j);

Json to_json(const SeriesEvaluation& s);
Json to_json(const FactorialGap& g);
Json to_json(const SeminormValue& s);
Json to_json(const LedgerLine& l);

Method method_from_string(const std::string& s);
RadiusClass radius_class_from_string(const std::string& s);
WitnessStatus witness_status_from_string(const std::string& s);

/// Header row plus data rows; every float printed with %.17g.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string str() const;
};
std::string csv_number(double x);
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

/// Columns n, log_abs, phase, C, log_C, log_n, method, flagged. The last two
/// numeric columns are the plot-ready (n, log C_n) and (log n, log C_n) data.
CsvTable table_csv(const TaylorTable& t);
TaylorTable taylor_table_from_csv(const std::string& text, const HalfLineFunction& f, double alpha);

}  // namespace hftlab
