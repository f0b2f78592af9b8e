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


#include "agv/scenario.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <toml.hpp>

#include "agv/errors.h"

namespace agv {

namespace {

template <typename F>
ConfigKey Key(std::string name, std::string units, std::string help, F f) {
  return ConfigKey{std::move(name), std::move(units), std::move(help),
                   [f](ScenarioConfig& c) -> ConfigRef { return f(c); }};
}

std::vector<ConfigKey> BuildKeys() {
  using C = ScenarioConfig;
  std::vector<ConfigKey> k;
  k.push_back(Key("scenario.name", "", "label used in outputs",
                  [](C& c) { return &c.name; }));
  k.push_back(Key("map.file", "path", "occupancy map, relative to the scenario",
                  [](C& c) { return &c.map_file; }));
  k.push_back(Key("route.waypoints", "m", "start, via points and goal [[x, y], ...]",
                  [](C& c) { return &c.route; }));

  k.push_back(Key("planner.path", "", "tracked path: smoothed | raw",
                  [](C& c) { return &c.path_mode; }));
  k.push_back(Key("planner.smoothing_spacing", "m", "waypoint spacing fed to the smoother",
                  [](C& c) { return &c.planner.smoothing_spacing; }));
  k.push_back(Key("planner.spacing", "m", "waypoint spacing of the tracked trajectory",
                  [](C& c) { return &c.planner.spacing; }));
  k.push_back(Key("planner.v_c", "m/s", "constant speed of the smoothing reference",
                  [](C& c) { return &c.planner.v_c; }));
  k.push_back(Key("planner.c_v", "", "safety factor of the velocity constraint, >= 1",
                  [](C& c) { return &c.planner.c_v; }));
  k.push_back(Key("planner.v_max", "m/s", "maximal linear speed",
                  [](C& c) { return &c.planner.v_max; }));
  k.push_back(Key("planner.w_max", "rad/s", "maximal angular speed",
                  [](C& c) { return &c.planner.w_max; }));
  k.push_back(Key("planner.horizon", "steps", "smoothing horizon H",
                  [](C& c) { return &c.planner.horizon; }));
  k.push_back(Key("planner.update_horizon", "steps", "poses kept per window H_u",
                  [](C& c) { return &c.planner.update_horizon; }));
  k.push_back(Key("planner.q", "", "state weights [x, y, theta]",
                  [](C& c) { return std::span<double>(c.planner.weights.q); }));
  k.push_back(Key("planner.r", "", "input weights [v, w]",
                  [](C& c) { return std::span<double>(c.planner.weights.r); }));
  k.push_back(Key("planner.s", "", "input increment weights [v, w]",
                  [](C& c) { return std::span<double>(c.planner.weights.s); }));
  k.push_back(Key("planner.segment_len", "m", "arc length of one heading-fit segment",
                  [](C& c) { return &c.planner.segment_len; }));
  k.push_back(Key("planner.stop_distance", "m", "terminal speed taper length",
                  [](C& c) { return &c.planner.stop_distance; }));
  k.push_back(Key("planner.reference_scale", "", "reference speed ceiling as a fraction of v_max",
                  [](C& c) { return &c.planner.reference_scale; }));
  k.push_back(Key("planner.goal_blend", "m", "terminal blend length into the goal pose",
                  [](C& c) { return &c.planner.goal_blend; }));

  k.push_back(Key("solver.tolerance", "", "projected-gradient stopping norm",
                  [](C& c) { return &c.planner.solver.tolerance; }));
  k.push_back(Key("solver.max_iterations", "iterations", "iteration budget per solve",
                  [](C& c) { return &c.planner.solver.max_iterations; }));

  k.push_back(Key("tracking.kind", "", "kinematic tracker: mpc | pid",
                  [](C& c) { return &c.tracking; }));
  k.push_back(Key("tracking.horizon", "steps", "tracking horizon H",
                  [](C& c) { return &c.tracking_horizon; }));
  k.push_back(Key("tracking.q", "", "state weights [x, y, theta]",
                  [](C& c) { return std::span<double>(c.tracking_weights.q); }));
  k.push_back(Key("tracking.r", "", "input weights [v, w]",
                  [](C& c) { return std::span<double>(c.tracking_weights.r); }));
  k.push_back(Key("tracking.s", "", "input increment weights [v, w]",
                  [](C& c) { return std::span<double>(c.tracking_weights.s); }));
  k.push_back(Key("tracking.pid_v", "", "along-track PID gains [kp, ki, kd]",
                  [](C& c) { return std::span<double>(c.pid_v); }));
  k.push_back(Key("tracking.pid_w", "", "heading PID gains [kp, ki, kd]",
                  [](C& c) { return std::span<double>(c.pid_w); }));
  k.push_back(Key("tracking.pid_integral_limit", "", "PID integral clamp",
                  [](C& c) { return &c.pid_integral_limit; }));
  k.push_back(Key("tracking.pid_lookahead", "m", "lateral error lookahead",
                  [](C& c) { return &c.pid_lookahead; }));

  k.push_back(Key("dynamic.kind", "", "velocity-level controller: reso | pid | none",
                  [](C& c) { return &c.dynamic; }));
  k.push_back(Key("reso.epsilon", "", "observer and saturation parameter, 0 < eps < 1",
                  [](C& c) { return &c.reso_epsilon; }));
  k.push_back(Key("reso.gain_l", "", "observer gain L",
                  [](C& c) { return &c.reso_gain_l; }));
  k.push_back(Key("reso.b0_v", "1/(kg m)", "nominal input gain, v channel",
                  [](C& c) { return &c.reso_b0_v; }));
  k.push_back(Key("reso.b0_w", "1/(kg m^2)", "nominal input gain, w channel",
                  [](C& c) { return &c.reso_b0_w; }));
  k.push_back(Key("reso.k_v", "1/s", "feedback gain K, v channel, < 0",
                  [](C& c) { return &c.reso_k_v; }));
  k.push_back(Key("reso.k_w", "1/s", "feedback gain K, w channel, < 0",
                  [](C& c) { return &c.reso_k_w; }));
  k.push_back(Key("reso.bound_v", "N m", "command bound M, v channel",
                  [](C& c) { return &c.reso_bound_v; }));
  k.push_back(Key("reso.bound_w", "N m", "command bound M, w channel",
                  [](C& c) { return &c.reso_bound_w; }));
  k.push_back(Key("reso.slew_v", "m/s^2", "reference-rate clamp, v channel",
                  [](C& c) { return &c.slew_v; }));
  k.push_back(Key("reso.slew_w", "rad/s^2", "reference-rate clamp, w channel",
                  [](C& c) { return &c.slew_w; }));
  k.push_back(Key("pid.kp", "N m s/m", "dynamic PID proportional gain",
                  [](C& c) { return &c.dyn_pid.kp; }));
  k.push_back(Key("pid.ki", "N m/m", "dynamic PID integral gain",
                  [](C& c) { return &c.dyn_pid.ki; }));
  k.push_back(Key("pid.kd", "N m s^2/m", "dynamic PID derivative gain",
                  [](C& c) { return &c.dyn_pid.kd; }));
  k.push_back(Key("pid.kn", "1/s", "derivative filter coefficient",
                  [](C& c) { return &c.dyn_pid.kn; }));
  k.push_back(Key("pid.integral_limit", "N m", "integral term clamp",
                  [](C& c) { return &c.dyn_pid_integral_limit; }));

  k.push_back(Key("plant.mass", "kg", "nominal mass M0",
                  [](C& c) { return &c.plant.mass; }));
  k.push_back(Key("plant.inertia", "kg m^2", "nominal inertia I0",
                  [](C& c) { return &c.plant.inertia; }));
  k.push_back(Key("plant.half_track", "m", "half wheel separation l_w",
                  [](C& c) { return &c.plant.half_track; }));
  k.push_back(Key("plant.wheel_radius", "m", "wheel radius r_w",
                  [](C& c) { return &c.plant.wheel_radius; }));
  k.push_back(Key("plant.mass_multiplier", "", "truth mass over M0",
                  [](C& c) { return &c.mass_multiplier; }));
  k.push_back(Key("plant.inertia_multiplier", "", "truth inertia over I0",
                  [](C& c) { return &c.inertia_multiplier; }));

  k.push_back(Key("disturbance.force_kind", "", "constant | step | sine",
                  [](C& c) { return &c.force_kind; }));
  k.push_back(Key("disturbance.force_per_mass", "m/s^2", "f_e divided by the truth mass",
                  [](C& c) { return &c.force_per_mass; }));
  k.push_back(Key("disturbance.force_t0", "s", "step onset",
                  [](C& c) { return &c.force_t0; }));
  k.push_back(Key("disturbance.force_period", "s", "sine period",
                  [](C& c) { return &c.force_period; }));
  k.push_back(Key("disturbance.torque_kind", "", "constant | step | sine",
                  [](C& c) { return &c.torque_kind; }));
  k.push_back(Key("disturbance.torque_per_inertia", "rad/s^2", "tau_e divided by the truth inertia",
                  [](C& c) { return &c.torque_per_inertia; }));
  k.push_back(Key("disturbance.torque_t0", "s", "step onset",
                  [](C& c) { return &c.torque_t0; }));
  k.push_back(Key("disturbance.torque_period", "s", "sine period",
                  [](C& c) { return &c.torque_period; }));

  k.push_back(Key("rates.high_hz", "Hz", "kinematic tracker rate",
                  [](C& c) { return &c.high_hz; }));
  k.push_back(Key("rates.low_hz", "Hz", "dynamic controller and plant rate",
                  [](C& c) { return &c.low_hz; }));

  k.push_back(Key("noise.seed", "", "random seed",
                  [](C& c) { return &c.seed; }));
  k.push_back(Key("noise.sigma_xy", "m", "position measurement noise",
                  [](C& c) { return &c.sigma_xy; }));
  k.push_back(Key("noise.sigma_theta", "rad", "heading measurement noise",
                  [](C& c) { return &c.sigma_theta; }));
  k.push_back(Key("noise.sigma_v", "m/s", "linear speed measurement noise",
                  [](C& c) { return &c.sigma_v; }));
  k.push_back(Key("noise.sigma_w", "rad/s", "angular speed measurement noise",
                  [](C& c) { return &c.sigma_w; }));

  k.push_back(Key("sim.duration_cap", "s", "simulated time limit",
                  [](C& c) { return &c.duration_cap; }));
  k.push_back(Key("sim.goal_tolerance", "m", "goal reached below this distance",
                  [](C& c) { return &c.goal_tolerance; }));
  k.push_back(Key("sim.transient", "s", "start-up interval left out of observer statistics",
                  [](C& c) { return &c.transient; }));
  return k;
}

std::string FormatDouble(double v) {
  std::ostringstream os;
  os << std::setprecision(9) << v;
  std::string s = os.str();
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

double NumberOf(const toml::node& node, const std::string& key, int line) {
  if (auto d = node.value_exact<double>()) return *d;
  if (auto i = node.value_exact<std::int64_t>()) return static_cast<double>(*i);
  throw ConfigError(key, line, "expected a number");
}

int LineOf(const toml::node& node) {
  return static_cast<int>(node.source().begin.line);
}

void Assign(const ConfigKey& key, const toml::node& node, int line,
            ScenarioConfig* config) {
  const ConfigRef ref = key.bind(*config);
  const std::string& name = key.name;
  struct Visitor {
    const toml::node& node;
    const std::string& name;
    int line;

    void operator()(double* p) const { *p = NumberOf(node, name, line); }
    void operator()(int* p) const {
      auto v = node.value_exact<std::int64_t>();
      if (!v) throw ConfigError(name, line, "expected an integer");
      *p = static_cast<int>(*v);
    }
    void operator()(std::int64_t* p) const {
      auto v = node.value_exact<std::int64_t>();
      if (!v) throw ConfigError(name, line, "expected an integer");
      *p = *v;
    }
    void operator()(bool* p) const {
      auto v = node.value_exact<bool>();
      if (!v) throw ConfigError(name, line, "expected true or false");
      *p = *v;
    }
    void operator()(std::string* p) const {
      auto v = node.value_exact<std::string>();
      if (!v) throw ConfigError(name, line, "expected a string");
      *p = *v;
    }
    void operator()(std::span<double> p) const {
      const toml::array* arr = node.as_array();
      if (arr == nullptr || arr->size() != p.size()) {
        throw ConfigError(name, line,
                          "expected an array of " + std::to_string(p.size()) +
                              " numbers");
      }
      for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = NumberOf(*arr->get(i), name, line);
      }
    }
    void operator()(std::vector<Waypoint>* p) const {
      const toml::array* arr = node.as_array();
      if (arr == nullptr) {
        throw ConfigError(name, line, "expected an array of [x, y] pairs");
      }
      std::vector<Waypoint> out;
      for (const toml::node& item : *arr) {
        const toml::array* xy = item.as_array();
        if (xy == nullptr || xy->size() != 2) {
          throw ConfigError(name, line, "expected an array of [x, y] pairs");
        }
        out.push_back({NumberOf(*xy->get(0), name, line),
                       NumberOf(*xy->get(1), name, line)});
      }
      *p = std::move(out);
    }
  };
  std::visit(Visitor{node, name, line}, ref);
}

void Walk(const toml::table& table, const std::string& prefix,
          ScenarioConfig* config) {
  for (const auto& [k, node] : table) {
    const std::string name =
        prefix.empty() ? std::string(k.str()) : prefix + "." + std::string(k.str());
    if (const toml::table* sub = node.as_table()) {
      Walk(*sub, name, config);
      continue;
    }
    const ConfigKey* key = FindConfigKey(name);
    if (key == nullptr) throw ConfigError(name, LineOf(node), "unknown key");
    Assign(*key, node, LineOf(node), config);
  }
}

void Require(bool ok, const char* key, const std::string& what) {
  if (!ok) throw ConfigError(key, 0, what);
}

bool OneOf(const std::string& value, std::initializer_list<const char*> set) {
  return std::any_of(set.begin(), set.end(),
                     [&](const char* s) { return value == s; });
}

DisturbanceProfile::Kind KindOf(const std::string& s) {
  if (s == "step") return DisturbanceProfile::Kind::kStep;
  if (s == "sine") return DisturbanceProfile::Kind::kSine;
  return DisturbanceProfile::Kind::kConstant;
}

}  // namespace

const std::vector<ConfigKey>& ConfigKeys() {
  static const std::vector<ConfigKey> keys = BuildKeys();
  return keys;
}

const ConfigKey* FindConfigKey(const std::string& name) {
  for (const ConfigKey& k : ConfigKeys()) {
    if (k.name == name) return &k;
  }
  return nullptr;
}

std::string FormatConfigValue(const ConfigKey& key,
                              const ScenarioConfig& config) {
  ScenarioConfig copy = config;
  const ConfigRef ref = key.bind(copy);
  struct Visitor {
    std::string operator()(double* p) const { return FormatDouble(*p); }
    std::string operator()(int* p) const { return std::to_string(*p); }
    std::string operator()(std::int64_t* p) const { return std::to_string(*p); }
    std::string operator()(bool* p) const { return *p ? "true" : "false"; }
    std::string operator()(std::string* p) const { return "\"" + *p + "\""; }
    std::string operator()(std::span<double> p) const {
      std::string s = "[";
      for (std::size_t i = 0; i < p.size(); ++i) {
        s += (i ? ", " : "") + FormatDouble(p[i]);
      }
      return s + "]";
    }
    std::string operator()(std::vector<Waypoint>* p) const {
      std::string s = "[";
      for (std::size_t i = 0; i < p->size(); ++i) {
        s += (i ? ", [" : "[") + FormatDouble((*p)[i].x) + ", " +
             FormatDouble((*p)[i].y) + "]";
      }
      return s + "]";
    }
  };
  return std::visit(Visitor{}, ref);
}

void ApplyScenarioText(const std::string& text, const std::string& source,
                       ScenarioConfig* config) {
  toml::table table;
  try {
    table = toml::parse(text, source);
  } catch (const toml::parse_error& e) {
    throw ConfigError("", static_cast<int>(e.source().begin.line),
                      std::string(e.description()));
  }
  Walk(table, "", config);
}

ScenarioConfig LoadScenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", 0, "cannot open scenario file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  ScenarioConfig config;
  config.base_dir = std::filesystem::path(path).parent_path().string();
  if (config.base_dir.empty()) config.base_dir = ".";
  ApplyScenarioText(buffer.str(), path, &config);
  config.Validate();
  return config;
}

void ApplyOverride(const std::string& assignment, ScenarioConfig* config) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigError(assignment, 0, "override must look like key=value");
  }
  const std::string name = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);
  const ConfigKey* key = FindConfigKey(name);
  if (key == nullptr) throw ConfigError(name, 0, "unknown key");
  toml::table table;
  try {
    table = toml::parse("v = " + value);
  } catch (const toml::parse_error&) {
    if (!std::holds_alternative<std::string*>(key->bind(*config))) {
      throw ConfigError(name, 0, "cannot parse value '" + value + "'");
    }
    table = toml::table{{"v", value}};
  }
  Assign(*key, *table.get("v"), 0, config);
}

std::string DescribeConfigKeys() {
  const ScenarioConfig defaults;
  std::ostringstream os;
  for (const ConfigKey& k : ConfigKeys()) {
    os << "  " << std::left << std::setw(32) << k.name << std::setw(12)
       << (k.units.empty() ? "-" : "[" + k.units + "]") << k.help
       << " (default " << FormatConfigValue(k, defaults) << ")\n";
  }
  return os.str();
}

void ScenarioConfig::Validate() const {
  Require(!map_file.empty(), "map.file", "a map file is required");
  Require(route.size() >= 2, "route.waypoints",
          "need at least a start and a goal");
  Require(OneOf(path_mode, {"smoothed", "raw"}), "planner.path",
          "must be smoothed or raw");
  Require(planner.smoothing_spacing > 0.0, "planner.smoothing_spacing",
          "must be > 0");
  Require(planner.spacing > 0.0, "planner.spacing", "must be > 0");
  Require(planner.v_c > 0.0, "planner.v_c", "must be > 0");
  Require(planner.c_v >= 1.0, "planner.c_v", "must be >= 1");
  Require(planner.v_max > 0.0, "planner.v_max", "must be > 0");
  Require(planner.w_max > 0.0, "planner.w_max", "must be > 0");
  Require(planner.horizon >= 2, "planner.horizon", "must be >= 2");
  Require(planner.update_horizon >= 1 &&
              planner.update_horizon <= planner.horizon,
          "planner.update_horizon", "must satisfy 1 <= H_u <= H");
  for (double w : planner.weights.q) Require(w > 0.0, "planner.q", "weights must be > 0");
  for (double w : planner.weights.r) Require(w > 0.0, "planner.r", "weights must be > 0");
  for (double w : planner.weights.s) Require(w > 0.0, "planner.s", "weights must be > 0");
  Require(planner.segment_len > 0.0, "planner.segment_len", "must be > 0");
  Require(planner.stop_distance >= 0.0, "planner.stop_distance", "must be >= 0");
  Require(planner.reference_scale > 0.0 && planner.reference_scale <= 1.0,
          "planner.reference_scale", "must lie in (0, 1]");
  Require(planner.goal_blend > 0.0, "planner.goal_blend", "must be > 0");
  Require(planner.solver.tolerance > 0.0, "solver.tolerance", "must be > 0");
  Require(planner.solver.max_iterations >= 1, "solver.max_iterations", "must be >= 1");

  Require(OneOf(tracking, {"mpc", "pid"}), "tracking.kind", "must be mpc or pid");
  Require(tracking_horizon >= 1, "tracking.horizon", "must be >= 1");
  for (double w : tracking_weights.q) Require(w > 0.0, "tracking.q", "weights must be > 0");
  for (double w : tracking_weights.r) Require(w > 0.0, "tracking.r", "weights must be > 0");
  for (double w : tracking_weights.s) Require(w > 0.0, "tracking.s", "weights must be > 0");
  Require(pid_integral_limit >= 0.0, "tracking.pid_integral_limit", "must be >= 0");
  Require(pid_lookahead > 0.0, "tracking.pid_lookahead", "must be > 0");

  Require(OneOf(dynamic, {"reso", "pid", "none"}), "dynamic.kind",
          "must be reso, pid or none");
  Require(reso_epsilon > 0.0 && reso_epsilon < 1.0, "reso.epsilon",
          "must lie in (0, 1)");
  Require(reso_gain_l > 0.0, "reso.gain_l", "must be > 0");
  Require(reso_b0_v != 0.0, "reso.b0_v", "must be nonzero");
  Require(reso_b0_w != 0.0, "reso.b0_w", "must be nonzero");
  Require(reso_k_v < 0.0, "reso.k_v", "must be < 0");
  Require(reso_k_w < 0.0, "reso.k_w", "must be < 0");
  Require(reso_bound_v > 0.0, "reso.bound_v", "must be > 0");
  Require(reso_bound_w > 0.0, "reso.bound_w", "must be > 0");
  Require(slew_v >= 0.0, "reso.slew_v", "must be >= 0");
  Require(slew_w >= 0.0, "reso.slew_w", "must be >= 0");
  Require(dyn_pid.kn > 0.0, "pid.kn", "must be > 0");
  Require(dyn_pid_integral_limit >= 0.0, "pid.integral_limit", "must be >= 0");

  Require(plant.mass > 0.0, "plant.mass", "must be > 0");
  Require(plant.inertia > 0.0, "plant.inertia", "must be > 0");
  Require(plant.half_track > 0.0, "plant.half_track", "must be > 0");
  Require(plant.wheel_radius > 0.0, "plant.wheel_radius", "must be > 0");
  Require(mass_multiplier > 0.0, "plant.mass_multiplier", "must be > 0");
  Require(inertia_multiplier > 0.0, "plant.inertia_multiplier", "must be > 0");
  Require(OneOf(force_kind, {"constant", "step", "sine"}),
          "disturbance.force_kind", "must be constant, step or sine");
  Require(OneOf(torque_kind, {"constant", "step", "sine"}),
          "disturbance.torque_kind", "must be constant, step or sine");
  Require(force_period > 0.0, "disturbance.force_period", "must be > 0");
  Require(torque_period > 0.0, "disturbance.torque_period", "must be > 0");

  Require(high_hz > 0.0, "rates.high_hz", "must be > 0");
  Require(low_hz > 0.0, "rates.low_hz", "must be > 0");
  const double ratio = low_hz / high_hz;
  Require(ratio >= 1.0 && std::abs(ratio - std::round(ratio)) < 1e-9,
          "rates.low_hz", "must be an integer multiple of rates.high_hz");

  Require(sigma_xy >= 0.0, "noise.sigma_xy", "must be >= 0");
  Require(sigma_theta >= 0.0, "noise.sigma_theta", "must be >= 0");
  Require(sigma_v >= 0.0, "noise.sigma_v", "must be >= 0");
  Require(sigma_w >= 0.0, "noise.sigma_w", "must be >= 0");
  Require(duration_cap > 0.0, "sim.duration_cap", "must be > 0");
  Require(goal_tolerance > 0.0, "sim.goal_tolerance", "must be > 0");
  Require(transient >= 0.0, "sim.transient", "must be >= 0");
}

int ScenarioConfig::RateRatio() const {
  return static_cast<int>(std::lround(low_hz / high_hz));
}

PlannerConfig ScenarioConfig::PlannerSettings() const {
  PlannerConfig p = planner;
  p.half_track = plant.half_track;
  return p;
}

DynamicParams ScenarioConfig::TruthParams() const {
  DynamicParams p = plant;
  p.mass *= mass_multiplier;
  p.inertia *= inertia_multiplier;
  p.v_max = planner.v_max;
  return p;
}

Disturbance ScenarioConfig::TruthDisturbance() const {
  const DynamicParams truth = TruthParams();
  Disturbance d;
  d.force = {KindOf(force_kind), force_per_mass * truth.mass, force_t0,
             force_period};
  d.torque = {KindOf(torque_kind), torque_per_inertia * truth.inertia,
              torque_t0, torque_period};
  return d;
}

std::string ScenarioConfig::ResolvedMapPath() const {
  const std::filesystem::path p(map_file);
  if (p.is_absolute()) return p.string();
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

}  // namespace agv
