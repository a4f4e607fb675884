#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "partcat/diagram_ops.hpp"
#include "partcat/partition.hpp"

namespace py = pybind11;
using namespace partcat;

PYBIND11_MODULE(_core, m) {
  m.doc() = "colored set partition categories and their tensor realizations";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<Error>(m, "PartcatError", PyExc_RuntimeError);

  m.def("parse", &parse_partition, py::arg("literal"));
  m.def("format", &format_partition, py::arg("partition"));
  m.def(
      "tensor",
      [](const std::string& p, const std::string& q) {
        return format_partition(tensor(parse_partition(p), parse_partition(q)));
      },
      py::arg("p"), py::arg("q"));
  m.def(
      "compose",
      [](const std::string& top, const std::string& bottom) {
        auto [result, loops] = compose(parse_partition(top), parse_partition(bottom));
        return py::make_tuple(format_partition(result), loops);
      },
      py::arg("top"), py::arg("bottom"));
  m.def(
      "involute",
      [](const std::string& p) { return format_partition(involute(parse_partition(p))); },
      py::arg("p"));
  m.def(
      "signature",
      [](const std::string& p) { return signature(parse_partition(p)); }, py::arg("p"));

  py::class_<Partition>(m, "Partition")
      .def(py::init([](const std::string& literal) { return parse_partition(literal); }))
      .def("__str__", &format_partition)
      .def("__repr__",
           [](const Partition& p) { return "Partition('" + format_partition(p) + "')"; })
      .def("__eq__", [](const Partition& a, const Partition& b) { return a == b; })
      .def_property_readonly("upper", [](const Partition& p) { return format_color_word(p.upper); })
      .def_property_readonly("lower", [](const Partition& p) { return format_color_word(p.lower); })
      .def_property_readonly("blocks", [](const Partition& p) { return p.blocks.blocks; });
}
