#include <sstream>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "etlqr/comparison.hpp"
#include "etlqr/config.hpp"
#include "etlqr/csv_log.hpp"
#include "etlqr/model.hpp"
#include "etlqr/sim.hpp"
#include "etlqr/synthesis.hpp"

namespace py = pybind11;
using namespace etlqr;

namespace {

using RowsX4 = Eigen::Matrix<double, Eigen::Dynamic, 4, Eigen::RowMajor>;

RowsX4 stack(const std::vector<Vec4>& rows) {
  RowsX4 out(static_cast<Eigen::Index>(rows.size()), 4);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Event-triggered LQR lateral control: synthesis, trigger and simulation";

  py::register_exception<InvalidParameter>(m, "InvalidParameter", PyExc_ValueError);
  py::register_exception<ConfigParseError>(m, "ConfigParseError", PyExc_ValueError);
  py::register_exception<SynthesisError>(m, "SynthesisError", PyExc_RuntimeError);
  py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_RuntimeError);

  py::class_<VehicleParams>(m, "VehicleParams")
      .def(py::init<>())
      .def_readwrite("m", &VehicleParams::m)
      .def_readwrite("mu", &VehicleParams::mu)
      .def_readwrite("Vx", &VehicleParams::Vx)
      .def_readwrite("Iz", &VehicleParams::Iz)
      .def_readwrite("Cf", &VehicleParams::Cf)
      .def_readwrite("Cr", &VehicleParams::Cr)
      .def_readwrite("lf", &VehicleParams::lf)
      .def_readwrite("lr", &VehicleParams::lr)
      .def_readwrite("rho", &VehicleParams::rho)
      .def("validate", &VehicleParams::validate);

  py::class_<PlantMatrices>(m, "PlantMatrices")
      .def(py::init<>())
      .def_readwrite("A", &PlantMatrices::A)
      .def_readwrite("B", &PlantMatrices::B)
      .def_readwrite("G", &PlantMatrices::G);

  py::class_<Equilibrium>(m, "Equilibrium")
      .def_readonly("beta_star", &Equilibrium::beta_star)
      .def_readonly("psidot_star", &Equilibrium::psidot_star)
      .def_readonly("delta_star", &Equilibrium::delta_star);

  m.def("build_plant", &build_plant, py::arg("params"), py::arg("G") = py::none());
  m.def("equilibrium", &equilibrium, py::arg("params"));

  py::class_<LqrWeights>(m, "LqrWeights")
      .def(py::init<>())
      .def_readwrite("Q", &LqrWeights::Q)
      .def_readwrite("R", &LqrWeights::R);

  py::class_<EtmDesign>(m, "EtmDesign")
      .def(py::init<>())
      .def(py::init([](double z_bar, double epsilon, double theta_l, double theta_r) {
             return EtmDesign{z_bar, epsilon, theta_l, theta_r};
           }),
           py::arg("z_bar") = 1.0, py::arg("epsilon") = 1.0, py::arg("theta_l") = 8.0, py::arg("theta_r") = 0.1)
      .def_readwrite("z_bar", &EtmDesign::z_bar)
      .def_readwrite("epsilon", &EtmDesign::epsilon)
      .def_readwrite("theta_l", &EtmDesign::theta_l)
      .def_readwrite("theta_r", &EtmDesign::theta_r)
      .def_static("original", &EtmDesign::original, py::arg("z_bar") = 1.0, py::arg("epsilon") = 1.0);

  py::class_<SynthesisResult>(m, "SynthesisResult")
      .def_readonly("K", &SynthesisResult::K)
      .def_readonly("P", &SynthesisResult::P)
      .def_readonly("M", &SynthesisResult::M)
      .def_readonly("N", &SynthesisResult::N)
      .def_readonly("sigma", &SynthesisResult::sigma)
      .def_readonly("tau", &SynthesisResult::tau)
      .def_readonly("lambda_min_M", &SynthesisResult::lambda_min_M)
      .def_readonly("lambda_min_N", &SynthesisResult::lambda_min_N)
      .def_readonly("mbk_norm", &SynthesisResult::mbk_norm)
      .def_readonly("care_residual", &SynthesisResult::care_residual)
      .def_readonly("lyapunov_residual", &SynthesisResult::lyapunov_residual);

  m.def("solve_care", [](const Mat4& A, const Vec4& B, const Mat4& Q, double R) { return solve_care(A, B, Q, R); },
        py::arg("A"), py::arg("B"), py::arg("Q"), py::arg("R"));
  m.def("lqr_gain", &lqr_gain, py::arg("P"), py::arg("B"), py::arg("R"));
  m.def("solve_lyapunov", &solve_lyapunov, py::arg("Acl"), py::arg("N"));
  m.def("care_residual", &care_residual, py::arg("A"), py::arg("B"), py::arg("Q"), py::arg("R"), py::arg("P"));
  m.def("lyapunov_residual", &lyapunov_residual, py::arg("Acl"), py::arg("N"), py::arg("M"));
  m.def("compute_sigma", &compute_sigma, py::arg("M"), py::arg("B"), py::arg("K"), py::arg("N"), py::arg("theta_l"),
        py::arg("theta_r"));
  m.def("min_iet", &min_iet, py::arg("sigma"), py::arg("epsilon"), py::arg("z_bar"));
  m.def("synthesize", &synthesize, py::arg("plant"), py::arg("weights"), py::arg("N"), py::arg("design"));

  py::class_<TimeTriggered>(m, "TimeTriggered")
      .def(py::init([](double period) { return TimeTriggered{period}; }), py::arg("period") = 0.01)
      .def_readwrite("period", &TimeTriggered::period);
  py::class_<EventTriggered>(m, "EventTriggered")
      .def(py::init([](const EtmDesign& d) { return EventTriggered{d}; }), py::arg("design") = EtmDesign{})
      .def_readwrite("design", &EventTriggered::design);

  py::class_<Disturbance>(m, "Disturbance")
      .def(py::init<>())
      .def_static("seeded", &Disturbance::seeded, py::arg("xi_bar"), py::arg("decay_rate"), py::arg("frequencies"),
                  py::arg("seed"))
      .def_readwrite("xi_bar", &Disturbance::xi_bar)
      .def_readwrite("decay_rate", &Disturbance::decay_rate)
      .def_readwrite("frequencies", &Disturbance::frequencies)
      .def_readonly("seed", &Disturbance::seed)
      .def_readwrite("phases", &Disturbance::phases)
      .def("at", [](const Disturbance& d, double t) { return disturbance_at(d, t); }, py::arg("t"));

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("t_end", &SimConfig::t_end)
      .def_readwrite("dt", &SimConfig::dt)
      .def_readwrite("initial_state", &SimConfig::initial_state)
      .def_readwrite("strategy", &SimConfig::strategy)
      .def_readwrite("disturbance", &SimConfig::disturbance)
      .def_readwrite("divergence_limit", &SimConfig::divergence_limit)
      .def("validate", &SimConfig::validate);

  py::class_<SimLog>(m, "SimLog")
      .def_readonly("times", &SimLog::times)
      .def_property_readonly("states", [](const SimLog& l) { return stack(l.states); })
      .def_readonly("inputs", &SimLog::inputs)
      .def_readonly("clock", &SimLog::clock)
      .def_readonly("triggered", &SimLog::triggered)
      .def_readonly("triggers", &SimLog::triggers)
      .def_property_readonly("disturbances", [](const SimLog& l) { return stack(l.disturbances); })
      .def_property_readonly("trigger_count", &SimLog::trigger_count)
      .def("inter_event_times", &SimLog::inter_event_times)
      .def("to_csv", [](const SimLog& l) {
        std::ostringstream out;
        write_log_csv(out, l);
        return out.str();
      });

  m.def("run", &run, py::arg("config"), py::arg("plant"), py::arg("synthesis"),
        py::call_guard<py::gil_scoped_release>());

  py::class_<Scenario>(m, "Scenario")
      .def(py::init<>())
      .def_readwrite("vehicle", &Scenario::vehicle)
      .def_readwrite("weights", &Scenario::weights)
      .def_readwrite("N", &Scenario::N)
      .def_readwrite("G", &Scenario::G)
      .def_readwrite("design", &Scenario::design)
      .def_readwrite("t_end", &Scenario::t_end)
      .def_readwrite("dt", &Scenario::dt)
      .def_readwrite("period", &Scenario::period)
      .def_readwrite("x0", &Scenario::x0)
      .def_readwrite("disturbance", &Scenario::disturbance)
      .def("validate", &Scenario::validate)
      .def("plant", &Scenario::plant)
      .def("sim_config", &Scenario::sim_config, py::arg("strategy"))
      .def("reseed", &Scenario::reseed, py::arg("seed"));

  m.def("parse_config", [](const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
  }, py::arg("text"));
  m.def("load_config", [](const std::string& path) { return load_config(path); }, py::arg("path"));

  py::enum_<StrategyKind>(m, "StrategyKind")
      .value("time", StrategyKind::time)
      .value("etm_original", StrategyKind::etm_original)
      .value("etm_improved", StrategyKind::etm_improved);

  py::class_<SummaryRow>(m, "SummaryRow")
      .def_readonly("strategy", &SummaryRow::strategy)
      .def_readonly("triggers", &SummaryRow::triggers)
      .def_readonly("min_iet", &SummaryRow::min_iet)
      .def_readonly("mean_iet", &SummaryRow::mean_iet)
      .def_readonly("tau", &SummaryRow::tau)
      .def_readonly("savings_pct", &SummaryRow::savings_pct);

  py::class_<StrategyRun>(m, "StrategyRun")
      .def_readonly("kind", &StrategyRun::kind)
      .def_readonly("synthesis", &StrategyRun::synthesis)
      .def_readonly("log", &StrategyRun::log)
      .def_readonly("summary", &StrategyRun::summary);

  m.def("simulate_strategies", &simulate_strategies, py::arg("scenario"),
        py::arg("kinds") = std::vector<StrategyKind>{StrategyKind::time, StrategyKind::etm_original,
                                                     StrategyKind::etm_improved},
        py::call_guard<py::gil_scoped_release>());
  m.def("emit_certificate", &emit_certificate, py::arg("plant"), py::arg("synthesis"), py::arg("design"));
}
