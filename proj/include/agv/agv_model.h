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

#ifndef AGV_AGV_MODEL_H_
#define AGV_AGV_MODEL_H_

#include <array>
#include <vector>

namespace agv {

inline constexpr double kPi = 3.14159265358979323846;

// Planar pose. theta is kept in (-pi, pi].
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

// Body velocities: linear v [m/s], angular w [rad/s].
struct VelocityState {
  double v = 0.0;
  double w = 0.0;
};

// Physical parameters of the differential-drive platform.
struct DynamicParams {
  double mass = 30.0;          // M [kg]
  double inertia = 0.5;        // I [kg m^2]
  double half_track = 0.25;    // l_w [m], half the wheel separation
  double wheel_radius = 0.1;   // r_w [m]
  double v_max = 0.4;          // maximal wheel speed [m/s]

  // Throws std::invalid_argument unless every field is strictly positive.
  void Validate() const;

  // Input gains of the velocity channels after the sum/difference torque
  // transform: dv/dt = GainV() * (T_r + T_l), dw/dt = GainW() * (T_r - T_l).
  double GainV() const { return 1.0 / (mass * wheel_radius); }
  double GainW() const { return half_track / (2.0 * inertia * wheel_radius); }
};

// Time profile of a scalar disturbance.
struct DisturbanceProfile {
  enum class Kind { kConstant, kStep, kSine };

  Kind kind = Kind::kConstant;
  double value = 0.0;   // level (constant/step) or amplitude (sine)
  double t0 = 0.0;      // step onset [s]
  double period = 1.0;  // sine period [s]

  double Evaluate(double t) const;
};

// External force f_e [N] and torque tau_e [N m].
struct Disturbance {
  DisturbanceProfile force;
  DisturbanceProfile torque;
};

struct WheelTorques {
  double right = 0.0;  // T_r [N m]
  double left = 0.0;   // T_l [N m]
};

struct WheelSpeeds {
  double left = 0.0;   // v_L [m/s]
  double right = 0.0;  // v_R [m/s]
};

struct PlantState {
  Pose pose;
  VelocityState velocity;
};

// Wraps an angle into (-pi, pi].
double WrapAngle(double angle);

// Shortest signed angle from `from` to `to`, i.e. WrapAngle(to - from).
double AngleDiff(double to, double from);

// One forward-Euler step of the unicycle model; this is the prediction
// model used inside every horizon problem.
Pose PropagateKinematics(const Pose& pose, const VelocityState& u, double dt);

// Exact unicycle motion under constant (v, w) over dt.
Pose PropagateUnicycleExact(const Pose& pose, const VelocityState& u,
                            double dt);

// One RK4 step of the velocity dynamics under constant wheel torques.
// Disturbances are sampled at the RK4 stage times t, t + dt/2, t + dt.
VelocityState PropagateDynamics(const VelocityState& state,
                                const WheelTorques& torques,
                                const DynamicParams& params,
                                const Disturbance& dist, double t, double dt);

// One RK4 step of the full five-state model (pose and velocities).
PlantState PropagatePlant(const PlantState& state, const WheelTorques& torques,
                          const DynamicParams& params, const Disturbance& dist,
                          double t, double dt);

// Inverse of v = (v_L + v_R) / 2, w = (v_R - v_L) / (2 l_w).
WheelSpeeds ComputeWheelSpeeds(const VelocityState& u,
                               const DynamicParams& params);

// |v| + l_w * c_v * |w| <= v_max (+1e-9).
bool CheckVelocityConstraint(const VelocityState& u,
                             const DynamicParams& params, double c_v);

// Admissible input set: the box 0 <= v <= v_max, |w| <= w_max intersected
// with the safety-scaled diamond |v| + l_w c_v |w| <= v_max.
class VelocityLimits {
 public:
  VelocityLimits() : VelocityLimits(0.4, 0.4, 0.25, 4.0) {}
  VelocityLimits(double v_max, double w_max, double half_track, double c_v);

  double v_max() const { return v_max_; }
  double w_max() const { return w_max_; }
  double diamond_coeff() const { return diamond_coeff_; }

  bool Contains(const VelocityState& u, double tol = 1e-9) const;

  // Euclidean projection onto the (convex, polygonal) admissible set.
  VelocityState Project(const VelocityState& u) const;

 private:
  double v_max_;
  double w_max_;
  double diamond_coeff_;  // l_w * c_v
  std::vector<std::array<double, 2>> vertices_;  // counter-clockwise
};

}  // namespace agv

#endif  // AGV_AGV_MODEL_H_
