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


#include "agv/tracker.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "agv/errors.h"

namespace agv {

namespace {

// A first step shorter than this is merged into the next waypoint.
constexpr double kMinFirstStep = 1e-9;

}  // namespace

MpcTracker::MpcTracker(const ReferenceTrajectory& reference,
                       const MpcTrackerOptions& options)
    : reference_(reference), options_(options) {
  if (reference_.size() < 2) {
    throw std::invalid_argument("MpcTracker: reference needs two waypoints");
  }
  if (options_.horizon < 1) {
    throw std::invalid_argument("MpcTracker: horizon must be >= 1");
  }
}

bool MpcTracker::Finished(double t) const {
  return t >= reference_.Duration();
}

VelocityState MpcTracker::Step(double t, const Pose& measured) {
  const int tick = tick_++;
  const auto& pts = reference_.points;
  const int last = reference_.size() - 1;
  int k = reference_.IndexAt(t);
  if (k < last && pts[k + 1].t - t < kMinFirstStep) ++k;
  if (Finished(t) || k >= last) {
    u_prev_ = {0.0, 0.0};
    last_inputs_.clear();
    return u_prev_;
  }

  const int h = std::min(options_.horizon, last - k);
  HorizonProblem problem;
  problem.initial = measured;
  problem.weights = options_.weights;
  problem.limits = options_.limits;
  problem.u_prev = u_prev_;
  problem.ref_states.resize(h);
  problem.ref_inputs.resize(h);
  problem.dt.resize(h);
  for (int i = 0; i < h; ++i) {
    const ReferencePoint& from = pts[k + i];
    const ReferencePoint& to = pts[k + i + 1];
    problem.ref_states[i] = to.pose;
    problem.ref_inputs[i] = {from.v, from.w};
    problem.dt[i] = (i == 0 ? to.t - t : to.t - from.t);
  }

  std::vector<VelocityState> guess(h);
  const int shift = last_index_ < 0 ? 0 : k - last_index_;
  for (int i = 0; i < h; ++i) {
    const int j = i + shift;
    if (last_inputs_.empty()) {
      guess[i] = problem.ref_inputs[i];
    } else if (j < static_cast<int>(last_inputs_.size())) {
      guess[i] = last_inputs_[j];
    } else {
      guess[i] = last_inputs_.back();
    }
  }

  const HorizonSolution sol = Solve(problem, guess, options_.solver);
  ++stats_.solves;
  stats_.total_iterations += sol.iterations;
  stats_.max_iterations = std::max(stats_.max_iterations, sol.iterations);
  if (!sol.converged) throw SolverFailure("tracking", tick);

  last_inputs_ = sol.inputs;
  last_index_ = k;
  u_prev_ = sol.inputs.front();
  return u_prev_;
}

PidChannel::PidChannel(const PidGains& gains, double integral_limit)
    : gains_(gains), integral_limit_(integral_limit) {
  if (!(integral_limit_ >= 0.0)) {
    throw std::invalid_argument("PidChannel: integral limit must be >= 0");
  }
}

double PidChannel::Step(double error, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("PidChannel: dt must be > 0");
  integral_ = std::clamp(integral_ + error * dt, -integral_limit_,
                         integral_limit_);
  const double derivative = (error - prev_error_) / dt;
  prev_error_ = error;
  return gains_.kp * error + gains_.ki * integral_ + gains_.kd * derivative;
}

void PidChannel::Reset() {
  integral_ = 0.0;
  prev_error_ = 0.0;
}

PathErrors ComputePathErrors(const Pose& measured, const Pose& reference,
                             double lookahead) {
  const double dx = reference.x - measured.x;
  const double dy = reference.y - measured.y;
  const double c = std::cos(reference.theta);
  const double s = std::sin(reference.theta);
  PathErrors e;
  e.along = c * dx + s * dy;
  e.lateral = -s * dx + c * dy;
  e.heading_to_path = WrapAngle(reference.theta +
                                std::atan2(e.lateral, lookahead) -
                                measured.theta);
  return e;
}

PidTracker::PidTracker(const PidTrackerOptions& options)
    : options_(options),
      v_channel_(options.v_gains, options.integral_limit),
      w_channel_(options.w_gains, options.integral_limit) {
  if (!(options_.lookahead > 0.0)) {
    throw std::invalid_argument("PidTracker: lookahead must be > 0");
  }
}

VelocityState PidTracker::Step(const Pose& measured,
                               const ReferenceSample& reference, double dt) {
  const PathErrors e =
      ComputePathErrors(measured, reference.pose, options_.lookahead);
  const VelocityState raw = {
      reference.u.v + v_channel_.Step(e.along, dt),
      reference.u.w + w_channel_.Step(e.heading_to_path, dt)};
  return options_.limits.Project(raw);
}

}  // namespace agv
