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


#include "agv/sim.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>

#include "agv/errors.h"
#include "agv/reso.h"
#include "agv/tracker.h"
#include "agv/world.h"

namespace agv {

namespace {

double Distance(const Pose& a, const Pose& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

class Noise {
 public:
  explicit Noise(std::int64_t seed)
      : rng_(static_cast<std::uint64_t>(seed)) {}

  double Draw(double sigma) {
    if (sigma <= 0.0) return 0.0;
    return sigma * normal_(rng_);
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace

double ConstraintViolation(const VelocityState& u, double v_max,
                           double half_track, double c_v) {
  const double diamond =
      std::abs(u.v) + half_track * c_v * std::abs(u.w) - v_max;
  return std::max({diamond, -u.v, u.v - v_max});
}

PlanResult PlanScenario(const ScenarioConfig& config) {
  const GridMap map = GridMap::Load(config.ResolvedMapPath());
  const PlannerConfig settings = config.PlannerSettings();
  if (config.path_mode == "smoothed") {
    return PlanTrajectory(map, config.route, settings);
  }
  PlanResult plan;
  plan.raw = PlanRoute(map, config.route);
  plan.dense = DensifyPath(plan.raw, settings.smoothing_spacing);
  plan.timed = TimestampConstantVelocity(plan.dense, settings.v_c);
  plan.trajectory = ReferenceFromTimedPath(
      plan.timed, std::min(settings.v_c, settings.ReferenceSpeedLimit()),
      settings.stop_distance);
  return plan;
}

Metrics ComputeMetrics(const RunLog& log, const ReferenceTrajectory& reference,
                       const ScenarioConfig& config) {
  Metrics m;
  if (log.empty()) return m;
  double e_sum = 0.0, e_sq = 0.0;
  int e_count = 0;
  double v_sq = 0.0, w_sq = 0.0;
  double xi_v = 0.0, xi_w = 0.0;
  int xi_count = 0;
  int saturated = 0;
  const bool reso = config.dynamic == "reso";
  const double l_w = config.plant.half_track;
  const double v_max = config.planner.v_max;
  double wheel_peak = 0.0;
  for (const RunRecord& r : log) {
    if (r.high) {
      const double e = Distance(r.truth, reference.SampleAt(r.t).pose);
      m.e_max = std::max(m.e_max, e);
      e_sum += e;
      e_sq += e * e;
      ++e_count;
    }
    const double dv = r.velocity.v - r.command.v;
    const double dw = r.velocity.w - r.command.w;
    v_sq += dv * dv;
    w_sq += dw * dw;
    if (reso) {
      const bool sat = std::abs(r.psi_v) > config.reso_bound_v ||
                       std::abs(r.psi_w) > config.reso_bound_w;
      if (sat) ++saturated;
      if (r.t >= config.transient) {
        xi_v += std::abs(r.xi_v - r.xi_hat_v);
        xi_w += std::abs(r.xi_w - r.xi_hat_w);
        ++xi_count;
      }
    }
    wheel_peak = std::max({wheel_peak, std::abs(r.velocity.v - l_w * r.velocity.w),
                           std::abs(r.velocity.v + l_w * r.velocity.w)});
    m.max_command_violation =
        std::max(m.max_command_violation,
                 ConstraintViolation(r.command, v_max, l_w, config.planner.c_v));
  }
  if (e_count > 0) {
    m.e_mean = e_sum / e_count;
    m.e_rmse = std::sqrt(e_sq / e_count);
  }
  const double n = static_cast<double>(log.size());
  m.rmse_v = std::sqrt(v_sq / n);
  m.rmse_w = std::sqrt(w_sq / n);
  m.saturation_fraction = saturated / n;
  m.psi_bound_exceeded = saturated > 0;
  m.wheel_overshoot = std::max(0.0, wheel_peak / v_max - 1.0);
  if (xi_count > 0) {
    m.xi_error_v = xi_v / xi_count;
    m.xi_error_w = xi_w / xi_count;
  }
  for (const ReferencePoint& p : reference.points) {
    m.max_reference_violation =
        std::max(m.max_reference_violation,
                 ConstraintViolation({p.v, p.w}, v_max, l_w, config.planner.c_v));
  }
  m.duration = log.back().t;
  m.goal_error = Distance(log.back().truth, reference.points.back().pose);
  return m;
}

RunResult RunScenario(const ScenarioConfig& config) {
  config.Validate();
  RunResult result;
  result.plan = PlanScenario(config);
  result.reference = result.plan.trajectory;
  const ReferenceTrajectory& reference = result.reference;

  const DynamicParams truth = config.TruthParams();
  const Disturbance disturbance = config.TruthDisturbance();
  const int ratio = config.RateRatio();
  const double dt = 1.0 / config.low_hz;
  const double high_period = ratio * dt;
  const Pose goal = reference.points.back().pose;
  const VelocityLimits limits = config.PlannerSettings().Limits();

  std::unique_ptr<MpcTracker> mpc;
  std::unique_ptr<PidTracker> pid;
  if (config.tracking == "mpc") {
    MpcTrackerOptions options;
    options.horizon = config.tracking_horizon;
    options.weights = config.tracking_weights;
    options.limits = limits;
    options.solver = config.planner.solver;
    mpc = std::make_unique<MpcTracker>(reference, options);
  } else {
    PidTrackerOptions options;
    options.v_gains = {config.pid_v[0], config.pid_v[1], config.pid_v[2]};
    options.w_gains = {config.pid_w[0], config.pid_w[1], config.pid_w[2]};
    options.integral_limit = config.pid_integral_limit;
    options.lookahead = config.pid_lookahead;
    options.limits = limits;
    pid = std::make_unique<PidTracker>(options);
  }

  ResoChannel reso_v({config.reso_epsilon, config.reso_gain_l, config.reso_b0_v,
                      config.reso_k_v, config.reso_bound_v});
  ResoChannel reso_w({config.reso_epsilon, config.reso_gain_l, config.reso_b0_w,
                      config.reso_k_w, config.reso_bound_w});
  FilteredPid pid_v(config.dyn_pid, config.dyn_pid_integral_limit);
  FilteredPid pid_w(config.dyn_pid, config.dyn_pid_integral_limit);
  ReferenceRateEstimator rates(high_period, config.slew_v, config.slew_w);
  Noise noise(config.seed);

  PlantState state{reference.points.front().pose, {0.0, 0.0}};
  VelocityState command;
  DynamicCommand applied;
  RunLog& log = result.log;
  Metrics& m = result.metrics;

  for (long tick = 0;; ++tick) {
    const double t = tick * dt;
    RunRecord rec;
    rec.t = t;
    rec.high = tick % ratio == 0;
    if (rec.high) {
      if (t >= reference.Duration() &&
          Distance(state.pose, goal) < config.goal_tolerance) {
        m.goal_reached = true;
        break;
      }
      if (t >= config.duration_cap) {
        m.timed_out = true;
        break;
      }
      const Pose measured = {
          state.pose.x + noise.Draw(config.sigma_xy),
          state.pose.y + noise.Draw(config.sigma_xy),
          WrapAngle(state.pose.theta + noise.Draw(config.sigma_theta))};
      if (mpc) {
        command = mpc->Step(t, measured);
      } else {
        command = pid->Step(measured, reference.SampleAt(t), high_period);
      }
      rates.Update(command);
      rec.measured = measured;
    } else {
      rec.measured = log.back().measured;
    }
    rec.truth = state.pose;
    rec.velocity = state.velocity;
    rec.command = command;
    rec.command_rate = rates.rate();
    rec.reference = reference.SampleAt(t).pose;

    if (config.dynamic == "none") {
      state.pose = PropagateUnicycleExact(state.pose, command, dt);
      state.velocity = command;
      rec.velocity = command;
    } else {
      const VelocityState measured_velocity = {
          state.velocity.v + noise.Draw(config.sigma_v),
          state.velocity.w + noise.Draw(config.sigma_w)};
      // Lumped uncertainty of eta' = b0 u + xi over the interval just ended.
      const double b0_v = config.dynamic == "reso" ? config.reso_b0_v : 0.0;
      const double b0_w = config.dynamic == "reso" ? config.reso_b0_w : 0.0;
      rec.xi_v = (truth.GainV() - b0_v) * applied.u_v -
                 disturbance.force.Evaluate(t) / truth.mass;
      rec.xi_w = (truth.GainW() - b0_w) * applied.u_w -
                 disturbance.torque.Evaluate(t) / truth.inertia;
      if (config.dynamic == "reso") {
        applied = DynamicStep(&reso_v, &reso_w, measured_velocity,
                              rates.reference(), rates.rate(), dt);
        rec.xi_hat_v = reso_v.xi_hat();
        rec.xi_hat_w = reso_w.xi_hat();
        rec.psi_v = reso_v.last_psi();
        rec.psi_w = reso_w.last_psi();
      } else {
        applied = PidDynamicStep(&pid_v, &pid_w, measured_velocity,
                                 rates.reference(), dt);
      }
      rec.u_v = applied.u_v;
      rec.u_w = applied.u_w;
      rec.torques = applied.torques;
      state = PropagatePlant(state, applied.torques, truth, disturbance, t, dt);
    }
    log.push_back(rec);
  }

  const Metrics stats = ComputeMetrics(log, reference, config);
  const bool reached = m.goal_reached;
  const bool timed_out = m.timed_out;
  m = stats;
  m.goal_reached = reached;
  m.timed_out = timed_out;
  if (mpc) {
    const TrackerStats& ts = mpc->stats();
    m.solver_solves = ts.solves;
    m.solver_iterations_max = ts.max_iterations;
    m.solver_iterations_mean =
        ts.solves > 0 ? static_cast<double>(ts.total_iterations) / ts.solves
                      : 0.0;
  }
  m.smoothing_windows = result.plan.stats.windows;
  m.smoothing_iterations_max = result.plan.stats.max_iterations;
  return result;
}

std::vector<SchemeResult> CompareSchemes(const ScenarioConfig& base) {
  struct Scheme {
    const char* name;
    const char* path;
    const char* tracking;
  };
  const Scheme schemes[] = {{"MPC+PID", "smoothed", "pid"},
                            {"A*+MPC", "raw", "mpc"},
                            {"MPC+MPC", "smoothed", "mpc"}};
  std::vector<SchemeResult> out;
  for (const Scheme& s : schemes) {
    SchemeResult r;
    r.name = s.name;
    r.config = base;
    r.config.path_mode = s.path;
    r.config.tracking = s.tracking;
    r.metrics = RunScenario(r.config).metrics;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace agv
