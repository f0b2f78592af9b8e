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

#include "agv/agv_model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace agv {

void DynamicParams::Validate() const {
  if (!(mass > 0.0 && inertia > 0.0 && half_track > 0.0 &&
        wheel_radius > 0.0 && v_max > 0.0)) {
    throw std::invalid_argument(
        "DynamicParams: mass, inertia, half_track, wheel_radius and v_max "
        "must be positive");
  }
}

double DisturbanceProfile::Evaluate(double t) const {
  switch (kind) {
    case Kind::kConstant:
      return value;
    case Kind::kStep:
      return t >= t0 ? value : 0.0;
    case Kind::kSine:
      return value * std::sin(2.0 * kPi * t / period);
  }
  return 0.0;
}

double WrapAngle(double angle) {
  double a = std::fmod(angle + kPi, 2.0 * kPi);
  if (a <= 0.0) a += 2.0 * kPi;
  return a - kPi;
}

double AngleDiff(double to, double from) { return WrapAngle(to - from); }

Pose PropagateKinematics(const Pose& pose, const VelocityState& u, double dt) {
  return {pose.x + u.v * std::cos(pose.theta) * dt,
          pose.y + u.v * std::sin(pose.theta) * dt,
          WrapAngle(pose.theta + u.w * dt)};
}

Pose PropagateUnicycleExact(const Pose& pose, const VelocityState& u,
                            double dt) {
  const double dtheta = u.w * dt;
  double dx, dy;
  if (std::abs(dtheta) < 1e-9) {
    // Second-order expansion around the straight-line case.
    const double mid = pose.theta + 0.5 * dtheta;
    dx = u.v * dt * std::cos(mid);
    dy = u.v * dt * std::sin(mid);
  } else {
    const double radius = u.v / u.w;
    dx = radius * (std::sin(pose.theta + dtheta) - std::sin(pose.theta));
    dy = -radius * (std::cos(pose.theta + dtheta) - std::cos(pose.theta));
  }
  return {pose.x + dx, pose.y + dy, WrapAngle(pose.theta + dtheta)};
}

namespace {

VelocityState VelocityRate(const WheelTorques& torques,
                           const DynamicParams& params, double force,
                           double torque) {
  return {(torques.right + torques.left) * params.GainV() -
              force / params.mass,
          (torques.right - torques.left) * params.GainW() -
              torque / params.inertia};
}

}  // namespace

VelocityState PropagateDynamics(const VelocityState& state,
                                const WheelTorques& torques,
                                const DynamicParams& params,
                                const Disturbance& dist, double t,
                                double dt) {
  // The velocity rows do not depend on (v, w), so RK4 reduces to Simpson
  // quadrature of the input; the stages are kept explicit anyway.
  auto rate = [&](double time) {
    return VelocityRate(torques, params, dist.force.Evaluate(time),
                        dist.torque.Evaluate(time));
  };
  const VelocityState k1 = rate(t);
  const VelocityState k2 = rate(t + 0.5 * dt);
  const VelocityState k3 = rate(t + 0.5 * dt);
  const VelocityState k4 = rate(t + dt);
  return {state.v + dt / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v),
          state.w + dt / 6.0 * (k1.w + 2.0 * k2.w + 2.0 * k3.w + k4.w)};
}

PlantState PropagatePlant(const PlantState& state, const WheelTorques& torques,
                          const DynamicParams& params, const Disturbance& dist,
                          double t, double dt) {
  using State = std::array<double, 5>;
  auto deriv = [&](const State& s, double time) -> State {
    const VelocityState acc =
        VelocityRate(torques, params, dist.force.Evaluate(time),
                     dist.torque.Evaluate(time));
    return {s[3] * std::cos(s[2]), s[3] * std::sin(s[2]), s[4], acc.v, acc.w};
  };
  auto axpy = [](const State& s, double h, const State& k) {
    State out;
    for (int i = 0; i < 5; ++i) out[i] = s[i] + h * k[i];
    return out;
  };
  const State s0 = {state.pose.x, state.pose.y, state.pose.theta,
                    state.velocity.v, state.velocity.w};
  const State k1 = deriv(s0, t);
  const State k2 = deriv(axpy(s0, 0.5 * dt, k1), t + 0.5 * dt);
  const State k3 = deriv(axpy(s0, 0.5 * dt, k2), t + 0.5 * dt);
  const State k4 = deriv(axpy(s0, dt, k3), t + dt);
  State s1;
  for (int i = 0; i < 5; ++i) {
    s1[i] = s0[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return {{s1[0], s1[1], WrapAngle(s1[2])}, {s1[3], s1[4]}};
}

WheelSpeeds ComputeWheelSpeeds(const VelocityState& u,
                               const DynamicParams& params) {
  return {u.v - params.half_track * u.w, u.v + params.half_track * u.w};
}

bool CheckVelocityConstraint(const VelocityState& u,
                             const DynamicParams& params, double c_v) {
  return std::abs(u.v) + params.half_track * c_v * std::abs(u.w) <=
         params.v_max + 1e-9;
}

VelocityLimits::VelocityLimits(double v_max, double w_max, double half_track,
                               double c_v)
    : v_max_(v_max), w_max_(w_max), diamond_coeff_(half_track * c_v) {
  if (!(v_max > 0.0 && w_max > 0.0 && half_track >= 0.0 && c_v >= 1.0)) {
    throw std::invalid_argument(
        "VelocityLimits: need v_max > 0, w_max > 0, half_track >= 0, "
        "c_v >= 1");
  }
  double w_top = w_max_;
  double v_corner = v_max_;
  if (diamond_coeff_ > 0.0) {
    w_top = std::min(w_max_, v_max_ / diamond_coeff_);
    v_corner = std::max(0.0, v_max_ - diamond_coeff_ * w_top);
  }
  vertices_.push_back({0.0, -w_top});
  if (v_corner > 0.0) vertices_.push_back({v_corner, -w_top});
  vertices_.push_back({v_max_, 0.0});
  if (v_corner > 0.0) vertices_.push_back({v_corner, w_top});
  vertices_.push_back({0.0, w_top});
}

bool VelocityLimits::Contains(const VelocityState& u, double tol) const {
  return u.v >= -tol && u.v <= v_max_ + tol && std::abs(u.w) <= w_max_ + tol &&
         u.v + diamond_coeff_ * std::abs(u.w) <= v_max_ + tol;
}

VelocityState VelocityLimits::Project(const VelocityState& u) const {
  if (Contains(u, 0.0)) return u;
  double best_d2 = std::numeric_limits<double>::infinity();
  VelocityState best = u;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = vertices_[i];
    const auto& b = vertices_[(i + 1) % n];
    const double ex = b[0] - a[0];
    const double ey = b[1] - a[1];
    const double len2 = ex * ex + ey * ey;
    double s = 0.0;
    if (len2 > 0.0) {
      s = std::clamp(((u.v - a[0]) * ex + (u.w - a[1]) * ey) / len2, 0.0, 1.0);
    }
    const double pv = a[0] + s * ex;
    const double pw = a[1] + s * ey;
    const double d2 = (u.v - pv) * (u.v - pv) + (u.w - pw) * (u.w - pw);
    if (d2 < best_d2) {
      best_d2 = d2;
      best = {pv, pw};
    }
  }
  return best;
}

}  // namespace agv
