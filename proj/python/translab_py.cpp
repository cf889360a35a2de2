// SPDX-License-Identifier: Apache-2.0
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "translab/analysis.hpp"
#include "translab/catalog.hpp"
#include "translab/csf.hpp"
#include "translab/elliptic.hpp"
#include "translab/errors.hpp"
#include "translab/io.hpp"
#include "translab/radial.hpp"

namespace py = pybind11;
using namespace translab;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

py::object to_py(const nlohmann::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Array grid_values(const GridFunction& u) {
  Array a({u.nx, u.ny});
  std::copy(u.values.begin(), u.values.end(), a.mutable_data());
  return a;
}

Array vec(const std::vector<double>& v) {
  Array a(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), a.mutable_data());
  return a;
}

GridFunction to_grid(const Array& values, double x0, double y0, double hx, double hy) {
  if (values.ndim() != 2) throw Error(ErrorCode::InvalidArgument, "values must be a 2-D array indexed [i, j]");
  GridFunction u;
  u.nx = static_cast<int>(values.shape(0));
  u.ny = static_cast<int>(values.shape(1));
  u.x0 = x0;
  u.y0 = y0;
  u.hx = hx;
  u.hy = hy;
  u.values.assign(values.data(), values.data() + values.size());
  u.validate();
  return u;
}

py::dict grid_dict(const GridFunction& u) {
  py::dict d;
  d["u"] = grid_values(u);
  d["x0"] = u.x0;
  d["y0"] = u.y0;
  d["hx"] = u.hx;
  d["hy"] = u.hy;
  return d;
}

AnalyticTranslator translator(const std::string& kind, double theta) {
  if (kind == "grim") return AnalyticTranslator::grim_reaper();
  if (kind == "tilted") return AnalyticTranslator::tilted(theta);
  if (kind == "plane") return AnalyticTranslator::vertical_plane();
  throw Error(ErrorCode::InvalidArgument, "kind must be grim, tilted or plane");
}

}  // namespace

PYBIND11_MODULE(_translab, m) {
  m.doc() = "Translating solitons and curve shortening flow";
  m.attr("__version__") = kVersion;
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  m.def(
      "residual_at",
      [](const std::string& kind, double theta, double x, double y) { return residual_at(translator(kind, theta), x, y).value; },
      py::arg("kind"), py::arg("theta") = 0.0, py::arg("x"), py::arg("y"));

  py::class_<RadialProfile>(m, "RadialProfile")
      .def_readonly("n", &RadialProfile::n)
      .def_readonly("h", &RadialProfile::h)
      .def_property_readonly("r", [](const RadialProfile& p) {
        std::vector<double> v;
        for (const RadialSample& s : p.samples) v.push_back(s.r);
        return vec(v);
      })
      .def_property_readonly("u", [](const RadialProfile& p) {
        std::vector<double> v;
        for (const RadialSample& s : p.samples) v.push_back(s.u);
        return vec(v);
      })
      .def_property_readonly("psi", [](const RadialProfile& p) {
        std::vector<double> v;
        for (const RadialSample& s : p.samples) v.push_back(s.psi);
        return vec(v);
      })
      .def("slope_at", [](const RadialProfile& p, double r) { return slope_at(p, r); })
      .def("__len__", [](const RadialProfile& p) { return p.samples.size(); });

  m.def("shoot_bowl", &shoot_bowl, py::arg("n"), py::arg("r_max"), py::arg("h"));
  m.def(
      "shoot_catenoid",
      [](int n, double lambda, double r_max, double h) {
        CatenoidPair c = shoot_catenoid(n, lambda, r_max, h);
        return py::make_tuple(c.upper, c.lower);
      },
      py::arg("n"), py::arg("lam"), py::arg("r_max"), py::arg("h"));
  m.def(
      "fit_asymptotics", [](const RadialProfile& p, double lo, double hi) { return to_py(to_json(fit_asymptotics(p, lo, hi))); },
      py::arg("profile"), py::arg("r_lo"), py::arg("r_hi"));

  m.def(
      "delta_wing",
      [](double b, double L, int nx, int ny) {
        const SolveResult r = delta_wing(b, L, nx, ny, SolverConfig{});
        py::dict d = grid_dict(r.u);
        d["report"] = to_py(to_json(r.report));
        return d;
      },
      py::arg("b"), py::arg("L"), py::arg("nx"), py::arg("ny"));

  m.def(
      "spruck_xiao",
      [](const Array& u, double x0, double y0, double hx, double hy) {
        const GridFunction g = to_grid(u, x0, y0, hx, hy);
        return to_py(to_json(spruck_xiao_report(g, graph_geometry(g))));
      },
      py::arg("u"), py::arg("x0"), py::arg("y0"), py::arg("hx"), py::arg("hy"));

  m.def(
      "csf_run",
      [](const std::string& shape, double a, double b, int n) {
        const CurveState c = shape == "circle" ? CurveState::circle(a, n) : CurveState::ellipse(a, b, n);
        return to_py(to_json(run(c, FlowConfig{})));
      },
      py::arg("shape"), py::arg("a") = 1.0, py::arg("b") = 1.0, py::arg("n") = 128);
}
