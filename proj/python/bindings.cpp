#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "sisres/cli.hpp"
#include "sisres/report.hpp"

namespace py = pybind11;
using namespace sisres;

namespace {

GraphMode parse_mode(const std::string& m) {
  if (m == "min") return GraphMode::Min;
  if (m == "inner") return GraphMode::Inner;
  fail(ErrorKind::InvalidArgument, "mode must be 'min' or 'inner'");
}

RunOptions options(const std::string& mode, bool rates, bool partials, unsigned long seed, int samples) {
  RunOptions o;
  o.mode = parse_mode(mode);
  o.rates = rates;
  o.partials = partials;
  o.seed = seed;
  o.samples = samples;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact resolution graphs of superisolated surface singularities";

  static py::exception<Error> error(m, "SisresError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = error;
      py::object inst = exc(e.what());
      inst.attr("kind") = error_name(e.kind());
      PyErr_SetObject(error.ptr(), inst.ptr());
    }
  });

  // Graph documents travel as JSON text; the package wrapper decodes them.
  m.def("resolve_germ", [](const std::string& h, bool rates, unsigned long seed) {
    return to_json(germ_document(h, rates, seed));
  }, py::arg("h"), py::arg("rates") = false, py::arg("seed") = 1);

  m.def("sis_graph", [](const std::string& F, const std::string& mode, bool rates, bool partials, unsigned long seed) {
    return to_json(sis_document(F, options(mode, rates, partials, seed, 5)));
  }, py::arg("F"), py::arg("mode") = "min", py::arg("rates") = false, py::arg("partials") = false,
     py::arg("seed") = 1);

  m.def("polar", [](const std::string& F, unsigned long seed, int samples) {
    return to_json(polar_document(F, options("inner", false, false, seed, samples)));
  }, py::arg("F"), py::arg("seed") = 1, py::arg("samples") = 5);

  m.def("compare", [](const std::string& F1, const std::string& F2, bool polar, unsigned long seed, int samples) {
    return compare_report(F1, F2, polar, options("inner", false, false, seed, samples)).dump();
  }, py::arg("F1"), py::arg("F2"), py::arg("polar") = false, py::arg("seed") = 1, py::arg("samples") = 5);

  m.def("check", [](const std::string& F) { return check_report(F).dump(); }, py::arg("F"));

  m.def("to_dot", [](const std::string& json) { return to_dot(from_json(json)); }, py::arg("document"));
  m.def("normalize_json", [](const std::string& json) { return to_json(from_json(json)); }, py::arg("document"));

  m.def("isomorphic", [](const std::string& a, const std::string& b, bool rates, bool mults) {
    IsoOptions o;
    o.rates = rates;
    o.mults = mults;
    return isomorphic(from_json(a).graph, from_json(b).graph, o);
  }, py::arg("a"), py::arg("b"), py::arg("rates") = true, py::arg("mults") = false);

  m.def("cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int rc;
    {
      py::gil_scoped_release release;
      rc = run_cli(args, out, err);
    }
    return py::make_tuple(rc, out.str(), err.str());
  }, py::arg("args"));

  m.attr("SCHEMA_VERSION") = kSchemaVersion;
}
