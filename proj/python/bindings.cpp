#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hftlab/baire.hpp"
#include "hftlab/cli.hpp"
#include "hftlab/continuation.hpp"
#include "hftlab/error.hpp"
#include "hftlab/function_spec.hpp"
#include "hftlab/serialize.hpp"

namespace py = pybind11;
using namespace hftlab;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

py::dict value_dict(const LogComplex& v) {
  py::dict d;
  d["log_abs"] = v.log_abs();
  d["phase"] = v.phase();
  d["value"] = v.to_complex();
  return d;
}

py::dict series_dict(const SeriesEvaluation& s) {
  py::dict d = value_dict(s.value);
  d["terms_used"] = s.terms_used;
  d["truncation_bound"] = s.truncation_bound;
  d["variant"] = to_string(s.variant);
  return d;
}

TableMethod table_method(const std::string& m) {
  if (m == "auto") return TableMethod::automatic;
  if (m == "closed") return TableMethod::closed;
  if (m == "quadrature") return TableMethod::quadrature;
  throw Error(ErrorKind::parse, "unknown table method " + m);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Half-line Fourier transforms, Taylor tables and witness searches";
  m.attr("SCHEMA_VERSION") = kSchemaVersion;
  m.attr("DEFAULT_TOL") = kDefaultTol;

  static py::exception<Error> hft_error(m, "HftlabError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(hft_error)(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      exc.attr("is_validation") = e.is_validation();
      PyErr_SetObject(hft_error.ptr(), exc.ptr());
    }
  });

  m.def("normalize_function", [](const std::string& spec) { return format_function(parse_function(spec)); },
        py::arg("spec"));

  m.def("eval", [](const std::string& spec, double t) { return eval(parse_function(spec), t); }, py::arg("spec"),
        py::arg("t"));

  m.def(
      "hft_eval",
      [](const std::string& spec, cplx z, double tol) { return value_dict(hft_eval(parse_function(spec), z, tol)); },
      py::arg("spec"), py::arg("z"), py::arg("tol") = kDefaultTol);

  m.def(
      "hft_derivative",
      [](const std::string& spec, int n, cplx z, double tol) {
        const TransformValue v = hft_derivative_detail(parse_function(spec), n, z, tol);
        py::dict d = value_dict(v.value);
        d["method"] = to_string(v.method);
        return d;
      },
      py::arg("spec"), py::arg("n"), py::arg("z"), py::arg("tol") = kDefaultTol);

  m.def(
      "taylor_table",
      [](const std::string& spec, double alpha, int n_max, const std::string& method, double tol) {
        return to_py(to_json(taylor_table(parse_function(spec), alpha, n_max, table_method(method), tol)));
      },
      py::arg("spec"), py::arg("alpha"), py::arg("n_max"), py::arg("method") = "auto",
      py::arg("tol") = kDefaultTol);

  m.def(
      "taylor_table_csv",
      [](const std::string& spec, double alpha, int n_max) {
        return table_csv(taylor_table(parse_function(spec), alpha, n_max)).str();
      },
      py::arg("spec"), py::arg("alpha"), py::arg("n_max"));

  m.def(
      "estimate_radius",
      [](const std::string& spec, double alpha, int n_max, int n_lo, int n_hi) {
        return to_py(to_json(estimate_radius(taylor_table(parse_function(spec), alpha, n_max), n_lo, n_hi)));
      },
      py::arg("spec"), py::arg("alpha"), py::arg("n_max"), py::arg("n_lo"), py::arg("n_hi"));

  m.def(
      "phi_cauchy_table",
      [](double alpha, double sigma, double r, int n_max) {
        const CauchyTable c = phi_cauchy_table(alpha, sigma, r, n_max);
        py::dict d;
        d["table"] = to_py(to_json(c.table));
        d["reliable_through"] = c.reliable_through;
        d["nodes"] = c.nodes;
        d["r"] = c.r;
        return d;
      },
      py::arg("alpha"), py::arg("sigma"), py::arg("r") = 0.0, py::arg("n_max") = 40);

  m.def(
      "radius_from_cauchy",
      [](double alpha, double sigma, double r, int n_max, int n_lo, int n_hi) {
        const CauchyTable c = phi_cauchy_table(alpha, sigma, r, n_max);
        return to_py(to_json(estimate_radius(c.table, n_lo, n_hi < 0 ? c.reliable_through : n_hi)));
      },
      py::arg("alpha"), py::arg("sigma"), py::arg("r") = 0.0, py::arg("n_max") = 60, py::arg("n_lo") = 3,
      py::arg("n_hi") = -1);

  m.def(
      "chi0_continuation", [](cplx z) { return series_dict(chi0_continuation(CutPlanePoint(z))); }, py::arg("z"));
  m.def(
      "psi_continuation", [](double p, cplx z) { return series_dict(psi_p_continuation(p, CutPlanePoint(z))); },
      py::arg("p"), py::arg("z"));
  m.def(
      "phi_continuation",
      [](double alpha, cplx z) { return value_dict(phi_continuation(alpha, CutPlanePoint(z, alpha))); },
      py::arg("alpha"), py::arg("z"));

  m.def(
      "omega_witness",
      [](const std::string& spec, double alpha, double N, int budget) {
        return to_py(to_json(omega_witness(parse_function(spec), alpha, N, budget)));
      },
      py::arg("spec"), py::arg("alpha"), py::arg("N"), py::arg("budget") = 30);
  m.def(
      "theta_witness",
      [](const std::string& spec, double alpha, double N, int M, int budget) {
        return to_py(to_json(theta_witness(parse_function(spec), alpha, N, M, budget)));
      },
      py::arg("spec"), py::arg("alpha"), py::arg("N"), py::arg("M"), py::arg("budget") = 30);

  m.def(
      "perturb",
      [](const std::string& spec, double alpha, int j, const std::string& kind, int M) {
        if (kind != "phi" && kind != "x") throw Error(ErrorKind::parse, "kind must be phi or x");
        return format_function(
            perturb(parse_function(spec), alpha, j, kind == "phi" ? PerturbFamily::phi : PerturbFamily::x, M));
      },
      py::arg("spec"), py::arg("alpha"), py::arg("j"), py::arg("kind") = "phi", py::arg("M") = 2);

  m.def(
      "factorial_gap", [](int M, double N, int j) { return to_py(to_json(factorial_gap(M, N, j))); }, py::arg("M"),
      py::arg("N"), py::arg("j"));
  m.def("gap_margin", &gap_margin, py::arg("M"), py::arg("N"), py::arg("j"), py::arg("n"));

  m.def("run_verification", [] {
    py::list out;
    for (const auto& line : run_verification()) out.append(to_py(to_json(line)));
    return out;
  });
  m.def("format_ledger", [] { return format_ledger(run_verification()); });

  m.def(
      "cli_run",
      [](const std::vector<std::string>& args) {
        const cli::CommandResult r = cli::run_args(args);
        return py::make_tuple(r.exit_code, r.payload, r.error);
      },
      py::arg("args"));
}
