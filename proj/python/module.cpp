#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "dads/certify.hpp"
#include "dads/config.hpp"
#include "dads/controller.hpp"
#include "dads/error.hpp"
#include "dads/output.hpp"
#include "dads/runner.hpp"

namespace py = pybind11;

namespace {

struct Run {
  dads::ScenarioConfig config;
  dads::RunResult result;
};

Run execute(dads::ScenarioConfig cfg, std::optional<double> dt, std::optional<double> horizon) {
  Run r{std::move(cfg), {}};
  dads::RunOverrides ov;
  ov.dt = dt;
  ov.horizon = horizon;
  {
    py::gil_scoped_release release;
    r.result = dads::run_config(r.config, ov);
  }
  return r;
}

py::array_t<double> as_array(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

py::dict check_dict(const dads::CheckRecord& c) {
  py::dict d;
  d["name"] = c.name;
  d["status"] = std::string(dads::to_string(c.status));
  d["passed"] = c.passed();
  d["slack"] = c.worst_slack;
  d["worst_t"] = c.worst_t;
  d["tolerance"] = c.tolerance;
  d["constants"] = c.constants;
  d["note"] = c.note;
  return d;
}

}  // namespace

PYBIND11_MODULE(_dadslab, m) {
  m.doc() = "Deadzone-adapted disturbance suppression: simulation and certification";

  py::register_exception<dads::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<dads::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<dads::DadsParams>(m, "DadsParams")
      .def(py::init<>())
      .def(py::init([](double epsilon, double gamma, double kappa, double a, double c_decay) {
             return dads::DadsParams{epsilon, gamma, kappa, a, c_decay};
           }),
           py::kw_only(), py::arg("epsilon") = 5e-5, py::arg("gamma") = 100.0, py::arg("kappa") = 2.1,
           py::arg("a") = 1.0, py::arg("c_decay") = 80.0)
      .def_readwrite("epsilon", &dads::DadsParams::epsilon)
      .def_readwrite("gamma", &dads::DadsParams::gamma)
      .def_readwrite("kappa", &dads::DadsParams::kappa)
      .def_readwrite("a", &dads::DadsParams::a)
      .def_readwrite("c_decay", &dads::DadsParams::c_decay)
      .def("violations", [](const dads::DadsParams& p) { return dads::validate_params(p); });

  m.def(
      "min_gain_bounds",
      [](const dads::DadsParams& p, double y, std::vector<double> phi) {
        if (phi.size() > 5) throw dads::ConfigError("phi takes at most 5 even coefficients");
        std::array<double, 5> c{};
        std::copy(phi.begin(), phi.end(), c.begin());
        const auto g = dads::min_gain_bounds(p, dads::PhiSpec(c), y);
        return py::make_tuple(g.p1, g.p2, g.p3);
      },
      py::arg("params"), py::arg("y") = 0.0, py::arg("phi") = std::vector<double>{},
      "Lower bounds (P1, P2, P3) of the gain inequalities at y.");
  m.def(
      "control",
      [](double y, double z, const dads::DadsParams& p, std::array<double, 3> k) {
        return dads::control(y, z, p, dads::GainProfile::constant(k[0], k[1], k[2]));
      },
      py::arg("y"), py::arg("z"), py::arg("params"), py::arg("gains"), "Feedback u for constant gains.");
  m.def("update_rate", &dads::update_rate, py::arg("y"), py::arg("z"), py::arg("params"));
  m.def("g_excess", &dads::g_excess, py::arg("s"), py::arg("l"), py::arg("params"));
  m.def("small_gain_threshold", &dads::small_gain_threshold, py::arg("theta1"), py::arg("theta2"),
        py::arg("p_bar"), py::arg("b_min"));
  m.def("planar_linear_matrix", &dads::planar_linear_matrix, py::arg("theta1"), py::arg("theta2"),
        py::arg("p_bar"), py::arg("b"), py::arg("k"));
  m.def("is_hurwitz", &dads::is_hurwitz_2x2, py::arg("matrix"));

  py::class_<Run>(m, "Run")
      .def_property_readonly("t", [](const Run& r) { return as_array(r.result.trajectory.t); })
      .def_property_readonly("y", [](const Run& r) { return as_array(r.result.trajectory.y); })
      .def_property_readonly("z", [](const Run& r) { return as_array(r.result.trajectory.z); })
      .def_property_readonly("u", [](const Run& r) { return as_array(r.result.trajectory.u); })
      .def_property_readonly("w_norm", [](const Run& r) { return as_array(r.result.trajectory.w_norm); })
      .def_property_readonly("phi", [](const Run& r) { return as_array(r.result.trajectory.phi); })
      .def_property_readonly("v", [](const Run& r) { return as_array(r.result.trajectory.v); })
      .def_property_readonly("dt", [](const Run& r) { return r.result.trajectory.dt; })
      .def_property_readonly("aborted", [](const Run& r) { return r.result.trajectory.aborted; })
      .def_property_readonly("fingerprint", [](const Run& r) { return r.result.trajectory.fingerprint; })
      .def_property_readonly("passed", [](const Run& r) { return r.result.passed(); })
      .def_property_readonly("constants", [](const Run& r) { return r.result.report.constants; })
      .def_property_readonly("checks",
                             [](const Run& r) {
                               py::list out;
                               for (const auto& c : r.result.report.checks) out.append(check_dict(c));
                               return out;
                             })
      .def_property_readonly(
          "dichotomy",
          [](const Run& r) { return std::string(dads::to_string(r.result.report.dichotomy.classification)); })
      .def("csv", [](const Run& r) { return dads::trajectory_csv(r.result.trajectory); })
      .def("report_json", [](const Run& r) { return dads::report_json(r.config, r.result); })
      .def(
          "write",
          [](const Run& r, const std::string& dir) {
            std::vector<std::string> out;
            for (const auto& p : dads::write_run_outputs(dir, r.config, r.result)) out.push_back(p.string());
            return out;
          },
          py::arg("directory"), "Writes the CSV, SVG plots and report.json.");

  m.def(
      "run_config",
      [](const std::string& text, std::optional<double> dt, std::optional<double> horizon) {
        return execute(dads::parse_config(text), dt, horizon);
      },
      py::arg("text"), py::kw_only(), py::arg("dt") = py::none(), py::arg("horizon") = py::none(),
      "Parses a scenario from text, simulates and certifies it.");
  m.def(
      "run_config_file",
      [](const std::string& path, std::optional<double> dt, std::optional<double> horizon) {
        return execute(dads::load_config(path), dt, horizon);
      },
      py::arg("path"), py::kw_only(), py::arg("dt") = py::none(), py::arg("horizon") = py::none());
  m.def(
      "validate_config", [](const std::string& text) { return dads::describe(dads::parse_config(text).scenario); },
      py::arg("text"), "Returns the canonical scenario description or raises ConfigError.");
}
