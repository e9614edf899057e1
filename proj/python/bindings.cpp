// Thin pybind11 layer.  Reports cross the boundary as JSON text; the Python
// package turns them into dicts and big integers.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <sstream>

#include "selfsim/cli.hpp"
#include "selfsim/dynamics.hpp"
#include "selfsim/errors.hpp"
#include "selfsim/group_spec.hpp"
#include "selfsim/invariants.hpp"
#include "selfsim/structure.hpp"

namespace py = pybind11;
using namespace selfsim;

namespace {

DisplayBase base_of(unsigned long b) { return b >= 2 ? DisplayBase::of(b) : DisplayBase::natural(); }

std::string dump(const json& j) { return j.dump(); }

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.attr("__version__") = std::string(kVersion);
  static py::exception<Error> exc(mod, "SelfsimError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(exc.ptr(), py::make_tuple(std::string(to_string(e.kind())), e.what()).ptr());
    }
  });

  py::class_<QuotientTower>(mod, "Tower")
      .def(py::init([](const std::string& spec_json, std::uint64_t max_enum, std::uint64_t max_states) {
             return std::make_unique<QuotientTower>(parse_spec(json::parse(spec_json)), Limits{max_enum, max_states});
           }),
           py::arg("spec_json"), py::arg("max_enum") = Limits{}.max_enum,
           py::arg("max_states") = Limits{}.max_states)
      .def_property_readonly("arity", &QuotientTower::arity)
      .def_property_readonly("name", [](const QuotientTower& t) { return t.spec().name; })
      .def("spec_json", [](const QuotientTower& t) { return dump(t.spec().to_json()); })
      .def("order", [](const QuotientTower& t, int n) { return t.order(n).get_str(); })
      .def("log_order", [](const QuotientTower& t, int n, unsigned long base) {
             return dump(to_json(t.log_order(n), base_of(base)));
           }, py::arg("n"), py::arg("base") = 0);

  mod.def("preset_json", [](const std::string& j) { return dump(parse_spec(json::parse(j)).to_json()); });
  mod.def("f_invariant", [](const QuotientTower& t, int n_max, unsigned long base) {
    return dump(to_json(f_invariant(t, n_max), base_of(base)));
  }, py::arg("tower"), py::arg("n_max"), py::arg("base") = 0);
  mod.def("hausdorff_dimension", [](const QuotientTower& t, int n_max, const std::string& ambient,
                                    unsigned long base) {
    return dump(to_json(hausdorff_dimension(t, n_max, parse_ambient(ambient)), base_of(base)));
  }, py::arg("tower"), py::arg("n_max"), py::arg("ambient") = "full", py::arg("base") = 0);
  mod.def("big_f_direct", [](const QuotientTower& t, int n, const std::string& method, unsigned long base) {
    return dump(to_json(big_f_direct(t, n, parse_method(method)), base_of(base)));
  }, py::arg("tower"), py::arg("n"), py::arg("method") = "enumerate", py::arg("base") = 0);
  mod.def("big_f_formula", [](const QuotientTower& t, int n, int D, unsigned long base) {
    return dump(to_json(big_f_formula(t, n, D), base_of(base)));
  }, py::arg("tower"), py::arg("n"), py::arg("D"), py::arg("base") = 0);
  mod.def("check_markov", [](const QuotientTower& t, int k, const std::string& v, int x, const std::string& method) {
    return dump(to_json(check_markov(t, k, Vertex::parse(v), x, parse_method(method))));
  }, py::arg("tower"), py::arg("k"), py::arg("v"), py::arg("x"), py::arg("method") = "enumerate");
  mod.def("check_measure_preserving", [](const QuotientTower& t, const std::string& v, int d,
                                         const std::string& method) {
    return dump(to_json(check_measure_preserving(t, Vertex::parse(v), d, parse_method(method))));
  }, py::arg("tower"), py::arg("v"), py::arg("d"), py::arg("method") = "enumerate");
  mod.def("count_pattern_closed", [](const QuotientTower& t, int D, int n, const std::string& method) {
    const PatternSet P = extract_pattern_set(t, D, D + 1, parse_method(method));
    return count_pattern_closed(P, n, t.limits().max_states).get_str();
  }, py::arg("tower"), py::arg("D"), py::arg("n"), py::arg("method") = "stabilizer");
  mod.def("haar_sample", [](const QuotientTower& t, int n, std::uint64_t seed) {
    return haar_sample(t, n, seed).serialize();
  });
  mod.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  });
}
