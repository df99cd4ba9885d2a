#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qwalk/errors.hpp"
#include "qwalk/expansion.hpp"
#include "qwalk/group.hpp"
#include "qwalk/model.hpp"
#include "qwalk/oracle.hpp"
#include "qwalk/report.hpp"

namespace py = pybind11;
using namespace qwalk;

namespace {

py::object to_python(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

}  // namespace

PYBIND11_MODULE(_qwalk, m) {
  m.doc() = "Asymptotics of orbit-summable lattice walks";

  static py::exception<Error> error(m, "QwalkError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error)(e.what());
      exc.attr("exit_code") = e.exit_code();
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  py::class_<Model>(m, "Model")
      .def_static("parse", &parse_model, py::arg("text"))
      .def_static("load", &load_model, py::arg("path"))
      .def_property_readonly("name", &Model::name)
      .def_property_readonly("dimension", &Model::dimension)
      .def_property_readonly("steps",
                             [](const Model& model) {
                               py::list out;
                               for (auto& s : model.steps()) out.append(py::make_tuple(s.offset, s.weight.to_string()));
                               return out;
                             })
      .def("drift",
           [](const Model& model) {
             std::vector<std::string> out;
             for (auto& x : drift(model)) out.push_back(x.to_string());
             return out;
           })
      .def("periodicity", &periodicity)
      .def("nondegenerate", &check_nondegenerate)
      .def("reverse", &reverse)
      .def("serialize", &serialize_model)
      .def("__repr__", [](const Model& model) { return "<Model " + model.name() + ">"; });

  m.def(
      "counts",
      [](const Model& model, const Point& start, const std::vector<Point>& ends, int n_max) {
        std::vector<std::vector<py::int_>> out;
        for (auto& row : count_at_endpoints(model, start, ends, n_max)) {
          out.emplace_back();
          for (auto& q : row) out.back().push_back(py::int_(py::str(q.get_num().get_str())));
        }
        return out;
      },
      py::arg("model"), py::arg("start"), py::arg("ends"), py::arg("n_max"),
      "Exact path counts q(start, end; n) for n = 0..n_max, one list per endpoint");

  m.def(
      "expand",
      [](const Model& model, const Point& start, int order) {
        return to_python(expansion_to_json(expand_from_start(model, start, order)));
      },
      py::arg("model"), py::arg("start"), py::arg("order") = 3);

  m.def(
      "analyze",
      [](const Model& model, int depth) {
        AnalysisOptions opt;
        opt.certificate_depth = depth;
        return to_python(analyze_model(model, opt));
      },
      py::arg("model"), py::arg("depth") = 8);

  m.def(
      "certify",
      [](const Model& model, int depth) { return certify_orbit_summable(model, 0, 0, depth).pass; },
      py::arg("model"), py::arg("depth") = 8);
}
