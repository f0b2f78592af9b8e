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


#ifndef AGV_SIM_H_
#define AGV_SIM_H_

#include <string>
#include <vector>

#include "agv/agv_model.h"
#include "agv/planner.h"
#include "agv/scenario.h"

namespace agv {

// One low-rate tick. Commands and torques are those applied over
// [t, t + dt]; xi is the true lumped uncertainty of each channel over the
// interval that ended at t.
struct RunRecord {
  double t = 0.0;
  bool high = false;  // a kinematic command was issued at this tick
  Pose truth;
  VelocityState velocity;  // truth (v, w)
  Pose measured;
  VelocityState command;  // (v_r, w_r) from the kinematic tracker
  VelocityState command_rate;
  Pose reference;  // reference pose at t
  double xi_hat_v = 0.0;
  double xi_hat_w = 0.0;
  double xi_v = 0.0;
  double xi_w = 0.0;
  double psi_v = 0.0;
  double psi_w = 0.0;
  double u_v = 0.0;
  double u_w = 0.0;
  WheelTorques torques;
};

using RunLog = std::vector<RunRecord>;

struct Metrics {
  double e_max = 0.0;   // position error over high-rate samples [m]
  double e_mean = 0.0;
  double e_rmse = 0.0;
  double rmse_v = 0.0;  // truth v against v_r, every low-rate sample
  double rmse_w = 0.0;
  double saturation_fraction = 0.0;  // ticks with |psi| > M on any channel
  bool psi_bound_exceeded = false;
  double wheel_overshoot = 0.0;      // max wheel speed / v_max - 1, >= 0
  double xi_error_v = 0.0;           // mean |xi - xi_hat| after the transient
  double xi_error_w = 0.0;
  double max_command_violation = 0.0;    // of |v| + l_w c_v |w| <= v_max
  double max_reference_violation = 0.0;
  int solver_solves = 0;
  double solver_iterations_mean = 0.0;
  int solver_iterations_max = 0;
  int smoothing_windows = 0;
  int smoothing_iterations_max = 0;
  double duration = 0.0;
  double goal_error = 0.0;
  bool goal_reached = false;
  bool timed_out = false;
};

struct RunResult {
  PlanResult plan;
  ReferenceTrajectory reference;  // the trajectory that was tracked
  RunLog log;
  Metrics metrics;
};

// Global plan and reference for the configured path mode. The raw mode
// skips smoothing and tracks the same timed grid path the smoother would
// receive, at the capped reference speed.
PlanResult PlanScenario(const ScenarioConfig& config);

// Two-rate closed loop. The kinematic command is held across the low-rate
// ticks between updates. Stops once the reference is exhausted and the
// truth position is within the goal tolerance, or at the duration cap
// (metrics.timed_out). Deterministic for a given config.
RunResult RunScenario(const ScenarioConfig& config);

// Tracking and velocity statistics of a log. Solver and planner fields are
// left at zero.
Metrics ComputeMetrics(const RunLog& log, const ReferenceTrajectory& reference,
                       const ScenarioConfig& config);

// Largest violation of |v| + l_w c_v |w| <= v_max or of 0 <= v <= v_max;
// zero or negative when every pair is admissible.
double ConstraintViolation(const VelocityState& u, double v_max,
                           double half_track, double c_v);

struct SchemeResult {
  std::string name;
  ScenarioConfig config;
  Metrics metrics;
};

// MPC + PID, A* + MPC and MPC + MPC on the same map, route and seed.
std::vector<SchemeResult> CompareSchemes(const ScenarioConfig& base);

}  // namespace agv

#endif  // AGV_SIM_H_
