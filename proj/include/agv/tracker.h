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


#ifndef AGV_TRACKER_H_
#define AGV_TRACKER_H_

#include <vector>

#include "agv/agv_model.h"
#include "agv/nlp.h"
#include "agv/planner.h"

namespace agv {

struct MpcTrackerOptions {
  int horizon = 20;
  CostWeights weights;
  VelocityLimits limits;
  SolverOptions solver;
};

struct TrackerStats {
  int solves = 0;
  long total_iterations = 0;
  int max_iterations = 0;
};

// Receding-horizon tracker. At time t with T_k <= t < T_{k+1} the horizon
// covers waypoints k+1 .. k+H; its first step lasts T_{k+1} - t and the
// rest follow the reference timing. Near the end H shrinks to the number of
// waypoints left. The reference must outlive the tracker.
class MpcTracker {
 public:
  MpcTracker(const ReferenceTrajectory& reference,
             const MpcTrackerOptions& options);

  // Returns u*_0 and remembers it as u_prev. Once t >= T_N the result is
  // (0, 0). Throws SolverFailure("tracking", tick) on a failed solve.
  VelocityState Step(double t, const Pose& measured);

  bool Finished(double t) const;
  const TrackerStats& stats() const { return stats_; }
  const VelocityState& u_prev() const { return u_prev_; }

 private:
  const ReferenceTrajectory& reference_;
  MpcTrackerOptions options_;
  VelocityState u_prev_;
  std::vector<VelocityState> last_inputs_;
  int last_index_ = -1;
  int tick_ = 0;
  TrackerStats stats_;
};

struct PidGains {
  double kp = 0.0;
  double ki = 0.0;
  double kd = 0.0;
};

// Discrete PID: rectangular integral clamped to +-integral_limit and a
// backward-difference derivative whose previous error starts at zero.
class PidChannel {
 public:
  PidChannel(const PidGains& gains, double integral_limit);

  double Step(double error, double dt);
  void Reset();

  double integral() const { return integral_; }

 private:
  PidGains gains_;
  double integral_limit_;
  double integral_ = 0.0;
  double prev_error_ = 0.0;
};

struct PidTrackerOptions {
  PidGains v_gains = {0.065, 0.0, 0.13};
  PidGains w_gains = {0.1, 0.05, 0.2};
  double integral_limit = 1.0;
  double lookahead = 0.2;  // [m], lateral error to heading correction
  VelocityLimits limits;
};

// Tracking errors of a pose against a reference sample, in the reference
// frame. `heading_to_path` = wrap(theta_r + atan2(lateral, lookahead) -
// theta).
struct PathErrors {
  double along = 0.0;
  double lateral = 0.0;
  double heading_to_path = 0.0;
};
PathErrors ComputePathErrors(const Pose& measured, const Pose& reference,
                             double lookahead);

// Feedforward plus PID on the along-track error (v) and on the
// heading-to-path error (w), projected onto the admissible set.
class PidTracker {
 public:
  explicit PidTracker(const PidTrackerOptions& options);

  VelocityState Step(const Pose& measured, const ReferenceSample& reference,
                     double dt);

 private:
  PidTrackerOptions options_;
  PidChannel v_channel_;
  PidChannel w_channel_;
};

}  // namespace agv

#endif  // AGV_TRACKER_H_
