#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "whmf/cache.hpp"
#include "whmf/errors.hpp"
#include "whmf/theorems.hpp"

namespace py = pybind11;
using namespace whmf;
using nlohmann::json;

namespace {

// Results cross the boundary as JSON text; the Python side turns the
// coefficient strings into Fractions.
std::string series_doc(const QSeries& s) { return series_to_json(s).dump(); }

std::string eisenstein_plus(int n, int k, const std::string& chi, int precision) {
  const LevelData level(n);
  const QuadraticSeries e = plus_series_quadratic(level, k, parse_character(level, chi), precision);
  if (e.d == 1 && e.b.is_zero()) return series_doc(e.a);
  return json{{"sqrt", e.d}, {"rational_part", series_to_json(e.a)}, {"sqrt_part", series_to_json(e.b)}}.dump();
}

std::string f_basis_doc(int n, int k, const std::string& chi, int m, int precision) {
  const LevelData level(n);
  const BasisElement f = f_basis(level, parse_character(level, chi), k, m, precision);
  json j = series_to_json(f.series);
  json faber = json::array();
  for (const Rational& c : f.faber) faber.push_back(c.get_str());
  j["faber"] = faber;
  j["k_prime"] = f.k_prime;
  j["ell"] = f.ell;
  return j.dump();
}

std::string verify_doc(const std::string& suite, int n, const std::string& chi, std::optional<int> k, int precision) {
  json reports = json::array();
  for (const VerificationReport& r : run_suite(suite, LevelData(n), chi, k, precision)) reports.push_back(r.to_json());
  return reports.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact q-expansions for the genus zero groups Gamma_0(N)^+";
  static py::exception<MathError> error(m, "MathError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const MathError& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.attr("__version__") = artifact_version();
  m.def("admitted_levels", &admitted_levels);
  m.def("k1", [](int n) { return LevelData(n).k1(); });
  m.def("delta", [](int n, int precision) { return series_doc(delta_N(LevelData(n), precision)); }, py::arg("level"),
        py::arg("precision") = 200);
  m.def("hauptmodul", [](int n, int precision) { return series_doc(hauptmodul(LevelData(n), precision).series); },
        py::arg("level"), py::arg("precision") = 200);
  m.def("eisenstein_plus", &eisenstein_plus, py::arg("level"), py::arg("weight"), py::arg("chi") = "1",
        py::arg("precision") = 200);
  m.def("f_basis", &f_basis_doc, py::arg("level"), py::arg("weight"), py::arg("chi") = "1", py::arg("m") = 0,
        py::arg("precision") = 200);
  m.def(
      "k_min",
      [](int n, const std::string& chi, int k) {
        const LevelData level(n);
        return whmf::k_min(level, parse_character(level, chi), k);
      },
      py::arg("level"), py::arg("chi"), py::arg("weight"));
  m.def("suite_names", &suite_names);
  m.def("verify", &verify_doc, py::arg("suite"), py::arg("level"), py::arg("chi") = "", py::arg("weight") = std::nullopt,
        py::arg("precision") = 200);
}
