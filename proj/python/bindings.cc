// Copyright 2026 The agvctl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Python bindings. Results cross the boundary as plain dicts and lists so
// the Python side needs nothing beyond the standard library.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "agv/errors.h"
#include "agv/reso.h"
#include "agv/scenario.h"
#include "agv/sim.h"
#include "cli.h"
#include "selftest.h"

namespace py = pybind11;

namespace {

agv::ScenarioConfig Build(const std::string& scenario,
                          const std::vector<std::string>& overrides) {
  agv::ScenarioConfig config = agv::LoadScenario(scenario);
  for (const std::string& o : overrides) agv::ApplyOverride(o, &config);
  config.Validate();
  return config;
}

py::dict MetricsDict(const agv::Metrics& m) {
  py::dict d;
  d["e_max"] = m.e_max;
  d["e_mean"] = m.e_mean;
  d["e_rmse"] = m.e_rmse;
  d["rmse_v"] = m.rmse_v;
  d["rmse_w"] = m.rmse_w;
  d["saturation_fraction"] = m.saturation_fraction;
  d["psi_bound_exceeded"] = m.psi_bound_exceeded;
  d["wheel_overshoot"] = m.wheel_overshoot;
  d["xi_error_v"] = m.xi_error_v;
  d["xi_error_w"] = m.xi_error_w;
  d["max_command_violation"] = m.max_command_violation;
  d["max_reference_violation"] = m.max_reference_violation;
  d["solver_solves"] = m.solver_solves;
  d["solver_iterations_mean"] = m.solver_iterations_mean;
  d["solver_iterations_max"] = m.solver_iterations_max;
  d["duration"] = m.duration;
  d["goal_error"] = m.goal_error;
  d["goal_reached"] = m.goal_reached;
  d["timed_out"] = m.timed_out;
  return d;
}

py::dict TrajectoryDict(const agv::ReferenceTrajectory& traj) {
  std::vector<double> x, y, theta, v, w, t;
  for (const agv::ReferencePoint& p : traj.points) {
    x.push_back(p.pose.x);
    y.push_back(p.pose.y);
    theta.push_back(p.pose.theta);
    v.push_back(p.v);
    w.push_back(p.w);
    t.push_back(p.t);
  }
  py::dict d;
  d["x"] = x;
  d["y"] = y;
  d["theta"] = theta;
  d["v_ref"] = v;
  d["w_ref"] = w;
  d["t"] = t;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Planning, tracking and disturbance-rejection simulator core";

  // Translators are tried newest first, so the subclass goes last.
  py::register_exception<agv::Error>(m, "AgvError", PyExc_RuntimeError);
  py::register_exception<agv::ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("config_keys", []() {
    std::vector<std::pair<std::string, std::string>> keys;
    for (const agv::ConfigKey& k : agv::ConfigKeys()) keys.emplace_back(k.name, k.units);
    return keys;
  }, "(name, units) for every scenario key.");

  m.def("plan", [](const std::string& scenario, const std::vector<std::string>& overrides) {
    agv::PlanResult plan;
    {
      py::gil_scoped_release release;
      plan = agv::PlanScenario(Build(scenario, overrides));
    }
    return TrajectoryDict(plan.trajectory);
  }, py::arg("scenario"), py::arg("overrides") = std::vector<std::string>{},
     "Plan only; returns the reference trajectory as column lists.");

  m.def("run", [](const std::string& scenario, const std::vector<std::string>& overrides) {
    agv::RunResult run;
    {
      py::gil_scoped_release release;
      run = agv::RunScenario(Build(scenario, overrides));
    }
    return MetricsDict(run.metrics);
  }, py::arg("scenario"), py::arg("overrides") = std::vector<std::string>{},
     "Closed-loop run; returns the metrics.");

  m.def("compare", [](const std::string& scenario, const std::vector<std::string>& overrides) {
    std::vector<agv::SchemeResult> schemes;
    {
      py::gil_scoped_release release;
      schemes = agv::CompareSchemes(Build(scenario, overrides));
    }
    py::dict out;
    for (const agv::SchemeResult& s : schemes) out[py::str(s.name)] = MetricsDict(s.metrics);
    return out;
  }, py::arg("scenario"), py::arg("overrides") = std::vector<std::string>{},
     "The three tracking schemes on one scenario, keyed by scheme name.");

  m.def("sat_eps", &agv::SatEps, py::arg("x"), py::arg("eps"));

  m.def("selftest", [](std::uint64_t seed) {
    std::vector<std::tuple<std::string, bool, std::string>> out;
    for (const auto& r : agv::selftest::RunAll(seed)) out.emplace_back(r.name, r.passed, r.detail);
    return out;
  }, py::arg("seed") = 1);

  m.def("cli", [](const std::vector<std::string>& args) {
    std::vector<const char*> argv{"agvsim"};
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = agv::RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Runs agvsim in-process; returns (exit code, stdout, stderr).");
}
