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


#ifndef AGV_SCENARIO_H_
#define AGV_SCENARIO_H_

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "agv/agv_model.h"
#include "agv/planner.h"
#include "agv/reso.h"
#include "agv/tracker.h"
#include "agv/world.h"

namespace agv {

// One closed-loop experiment. Strings holding a choice are checked by
// Validate(); the admissible values are listed next to each field.
struct ScenarioConfig {
  std::string name = "scenario";
  std::string map_file;  // relative paths resolve against base_dir
  std::string base_dir = ".";
  std::vector<Waypoint> route;

  PlannerConfig planner;
  std::string path_mode = "smoothed";  // smoothed | raw

  std::string tracking = "mpc";  // mpc | pid
  int tracking_horizon = 20;
  CostWeights tracking_weights;
  std::array<double, 3> pid_v = {0.065, 0.0, 0.13};  // kp, ki, kd
  std::array<double, 3> pid_w = {0.1, 0.05, 0.2};
  double pid_integral_limit = 1.0;
  double pid_lookahead = 0.2;

  std::string dynamic = "reso";  // reso | pid | none
  double reso_epsilon = 0.02;
  double reso_gain_l = 1.0;
  double reso_b0_v = 1.0;
  double reso_b0_w = 1.0;
  double reso_k_v = -5.0;
  double reso_k_w = -5.0;
  double reso_bound_v = 10.0;
  double reso_bound_w = 10.0;
  double slew_v = 2.0;
  double slew_w = 2.0;
  FilteredPidGains dyn_pid;
  double dyn_pid_integral_limit = 10.0;

  DynamicParams plant;  // nominal M0, I0 and geometry
  double mass_multiplier = 1.0;
  double inertia_multiplier = 1.0;
  std::string force_kind = "constant";  // constant | step | sine
  double force_per_mass = 0.0;          // f_e / M_true
  double force_t0 = 0.0;
  double force_period = 1.0;
  std::string torque_kind = "constant";
  double torque_per_inertia = 0.0;      // tau_e / I_true
  double torque_t0 = 0.0;
  double torque_period = 1.0;

  double high_hz = 20.0;
  double low_hz = 100.0;

  std::int64_t seed = 1;
  double sigma_xy = 0.0;
  double sigma_theta = 0.0;
  double sigma_v = 0.0;
  double sigma_w = 0.0;

  double duration_cap = 300.0;
  double goal_tolerance = 0.05;
  double transient = 1.0;  // excluded from observer-error statistics

  // Throws ConfigError naming the offending key.
  void Validate() const;

  // Low-rate ticks per high-rate tick.
  int RateRatio() const;
  // Planner settings with the plant geometry applied.
  PlannerConfig PlannerSettings() const;
  // Truth plant: nominal parameters scaled by the multipliers.
  DynamicParams TruthParams() const;
  // Disturbance in physical units for the truth plant.
  Disturbance TruthDisturbance() const;
  std::string ResolvedMapPath() const;
};

// A reference to one configurable field.
using ConfigRef =
    std::variant<double*, int*, std::int64_t*, bool*, std::string*,
                 std::span<double>, std::vector<Waypoint>*>;

struct ConfigKey {
  std::string name;   // dotted path, e.g. "reso.epsilon"
  std::string units;  // "" when dimensionless
  std::string help;
  std::function<ConfigRef(ScenarioConfig&)> bind;
};

// Every key accepted in scenario files and overrides, in display order.
const std::vector<ConfigKey>& ConfigKeys();
const ConfigKey* FindConfigKey(const std::string& name);

// Text form of the field's current value (TOML literal syntax).
std::string FormatConfigValue(const ConfigKey& key,
                              const ScenarioConfig& config);

// Parses TOML text into `config` on top of its current values. Unknown
// keys, type mismatches and syntax errors raise ConfigError with the line.
void ApplyScenarioText(const std::string& text, const std::string& source,
                       ScenarioConfig* config);

// Loads a scenario file; base_dir becomes the file's directory.
ScenarioConfig LoadScenario(const std::string& path);

// Applies "dotted.key=value". The value uses TOML literal syntax; bare
// words are accepted for string keys.
void ApplyOverride(const std::string& assignment, ScenarioConfig* config);

// Full key listing with units, defaults and help, one key per line.
std::string DescribeConfigKeys();

}  // namespace agv

#endif  // AGV_SCENARIO_H_
