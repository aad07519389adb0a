#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "cubicsplit/error.hpp"
#include "cubicsplit/report.hpp"
#include "cubicsplit/verify.hpp"

namespace py = pybind11;
using namespace cubicsplit;

namespace {

struct Analysis {
  Pipeline p;
  const SplittingModel& model() const { return *p.model; }
};

std::shared_ptr<Analysis> make_analysis(const std::string& preset, const std::string& config_json) {
  AnalysisConfig cfg = config_json.empty() ? preset_config(preset) : parse_config(config_json);
  validate(cfg);
  py::gil_scoped_release release;
  return std::make_shared<Analysis>(Analysis{build_pipeline(cfg)});
}

py::dict descriptor_dict(const Descriptor& d) {
  py::dict out;
  out["Z"] = d.Z;
  out["Y"] = d.Y;
  out["q"] = py::make_tuple(d.q[0].convert_to<long>(), d.q[1].convert_to<long>());
  out["n"] = d.n;
  return out;
}

}  // namespace

PYBIND11_MODULE(_cubicsplit, m) {
  m.doc() = "Koch matrices, quasi-resonances and splitting exponents for complex cubic frequencies";
  m.attr("__version__") = kVersion;

  static py::exception<Error> exc(m, "CubicsplitError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr ptr) {
    try {
      if (ptr) std::rethrow_exception(ptr);
    } catch (const Error& e) {
      PyObject* type = exc.ptr();
      py::object inst = py::reinterpret_steal<py::object>(PyObject_CallFunction(type, "s", e.what()));
      inst.attr("code") = std::string(error_name(e.code()));
      PyErr_SetObject(type, inst.ptr());
    }
  });

  m.def("preset_names", &preset_names);
  m.def("lg", &lg, py::arg("x"), py::arg("lam"));
  m.def("c0", &c0_function, py::arg("t"), py::arg("lam"));
  m.def("cc", &cc, py::arg("zeta"), py::arg("Z"), py::arg("Y"), py::arg("lam"));
  m.def("intersect", &intersect, py::arg("Z1"), py::arg("Y1"), py::arg("Z2"), py::arg("Y2"), py::arg("lam"));

  py::class_<Estimate>(m, "Estimate")
      .def_readonly("estimate", &Estimate::estimate)
      .def_readonly("log_estimate", &Estimate::log_estimate)
      .def_readonly("h1", &Estimate::h1)
      .def_readonly("h2", &Estimate::h2)
      .def_readonly("eta21", &Estimate::eta21)
      .def_readonly("near_corner", &Estimate::near_corner)
      .def_readonly("r", &Estimate::r)
      .def_readonly("r_condition_met", &Estimate::r_condition_met)
      .def_readonly("zeta", &Estimate::zeta);

  py::class_<J1Star>(m, "J1Star")
      .def_readonly("value", &J1Star::value)
      .def_readonly("x", &J1Star::x)
      .def_readonly("y", &J1Star::y)
      .def_readonly("confluence", &J1Star::confluence)
      .def_readonly("grid_value", &J1Star::grid_value);

  py::class_<Analysis, std::shared_ptr<Analysis>>(m, "Analysis")
      .def(py::init(&make_analysis), py::arg("preset") = "cubic-golden", py::arg("config_json") = "")
      .def("koch_json", [](const Analysis& a) { return koch_json(a.p); })
      .def("constants_json", [](const Analysis& a) { return constants_json(a.p); })
      .def("primitives_csv", [](const Analysis& a) { return primitives_csv(a.p); })
      .def("config_hash", [](const Analysis& a) { return config_hash(a.p.config); })
      .def_property_readonly("lam", [](const Analysis& a) { return a.p.params.lambda; })
      .def_property_readonly("delta", [](const Analysis& a) { return a.p.params.delta; })
      .def_property_readonly("xi0", [](const Analysis& a) { return a.p.params.xi0; })
      .def_property_readonly("zeta0", [](const Analysis& a) { return a.model().zeta0(); })
      .def_property_readonly("strong_sep", [](const Analysis& a) { return a.model().strong_sep(); })
      .def_property_readonly("J1_plus", [](const Analysis& a) { return a.model().J1_plus(); })
      .def_property_readonly("B0_minus", [](const Analysis& a) { return a.model().B0_minus(); })
      .def("zeta_of_eps", [](const Analysis& a, double eps) { return zeta_of_eps(a.p.params, eps); })
      .def("f1_bar", [](const Analysis& a, double zeta) { return a.model().f1_bar(zeta); })
      .def("evaluate",
           [](const Analysis& a, double zeta) {
             Evaluation e = a.model().evaluate(zeta);
             py::dict out;
             out["zeta"] = e.zeta;
             out["F1"] = e.F1;
             out["F1_bar"] = e.F1_bar;
             out["h2"] = e.h2;
             out["S1"] = descriptor_dict(e.S1);
             out["S2"] = descriptor_dict(e.S2);
             return out;
           })
      .def("profile_csv",
           [](const Analysis& a, double zmin, double zmax, double step) {
             return profile_csv(a.model().h_profile(zmin, zmax, step));
           },
           py::arg("zeta_min"), py::arg("zeta_max"), py::arg("step") = 1e-3)
      .def("corners",
           [](const Analysis& a, double zmin, double zmax) {
             py::list out;
             for (const auto& c : a.model().h_profile(zmin, zmax, 1e-2).corners)
               out.append(py::make_tuple(c.zeta, c.gap));
             return out;
           })
      .def("upsilon", [](const Analysis& a, double x, double y) { return a.model().upsilon(x, y); })
      .def("chi", [](const Analysis& a, long n, double x, double y) { return a.model().chi(n, x, y); })
      .def("j1_star",
           [](const Analysis& a, int res) {
             py::gil_scoped_release release;
             return a.model().j1_star(res);
           },
           py::arg("resolution") = 512)
      .def("estimate", [](const Analysis& a, double eps, double mu) { return a.model().estimate(eps, mu); },
           py::arg("eps"), py::arg("mu"));

  m.def(
      "analyze",
      [](const std::string& preset, const std::string& out_dir) {
        AnalysisConfig cfg = preset_config(preset);
        cfg.out_dir = out_dir;
        py::gil_scoped_release release;
        return run_analyze(cfg).config_hash;
      },
      py::arg("preset"), py::arg("out_dir"));

  m.def(
      "verify",
      [](const std::string& preset, double tolerance_scale) {
        VerifyOptions opt;
        opt.tolerance_scale = tolerance_scale;
        std::vector<CriterionResult> results;
        {
          py::gil_scoped_release release;
          results = run_verify(preset, opt);
        }
        py::list out;
        for (const auto& r : results) {
          py::dict d;
          d["id"] = r.id;
          d["title"] = r.title;
          d["applicable"] = r.applicable;
          d["passed"] = r.passed;
          d["check"] = r.check;
          d["measured"] = r.measured;
          d["expected"] = r.expected;
          d["line"] = format_line(r);
          out.append(d);
        }
        return out;
      },
      py::arg("preset") = "cubic-golden", py::arg("tolerance_scale") = 1.0);
}
