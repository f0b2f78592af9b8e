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


#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "agv/agv_model.h"

namespace agv {
namespace {

TEST(WrapAngleTest, HalfOpenInterval) {
  EXPECT_DOUBLE_EQ(WrapAngle(kPi), kPi);
  EXPECT_DOUBLE_EQ(WrapAngle(-kPi), kPi);
  EXPECT_NEAR(WrapAngle(3 * kPi / 2), -kPi / 2, 1e-15);
  EXPECT_NEAR(AngleDiff(-3.0, 3.0), 2 * kPi - 6.0, 1e-15);
}

TEST(PropagateKinematicsTest, StraightLine) {
  const Pose p = PropagateKinematics({0, 0, 0}, {1, 0}, 0.1);
  EXPECT_DOUBLE_EQ(p.x, 0.1);
  EXPECT_DOUBLE_EQ(p.y, 0.0);
  EXPECT_DOUBLE_EQ(p.theta, 0.0);
}

TEST(PropagateKinematicsTest, FacingUp) {
  const Pose p = PropagateKinematics({0, 0, kPi / 2}, {1, 0}, 0.1);
  EXPECT_NEAR(p.x, 0.0, 1e-16);
  EXPECT_DOUBLE_EQ(p.y, 0.1);
  EXPECT_DOUBLE_EQ(p.theta, kPi / 2);
}

TEST(PropagateKinematicsTest, EulerUsesStartHeading) {
  const Pose p = PropagateKinematics({0, 0, 0}, {0.4, 0.4}, 0.05);
  EXPECT_NEAR(p.x, 0.02, 1e-15);
  EXPECT_EQ(p.y, 0.0);
  EXPECT_NEAR(p.theta, 0.02, 1e-15);
}

TEST(PropagateKinematicsTest, ZeroInputIsIdentityAndWrapped) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 1000; ++i) {
    const Pose start{u(rng), u(rng), WrapAngle(u(rng))};
    const Pose same = PropagateKinematics(start, {0, 0}, std::abs(u(rng)) + 0.01);
    EXPECT_EQ(same.x, start.x);
    EXPECT_EQ(same.y, start.y);
    EXPECT_EQ(same.theta, start.theta);
    const Pose moved = PropagateKinematics(start, {u(rng), u(rng)}, 0.5);
    EXPECT_GT(moved.theta, -kPi);
    EXPECT_LE(moved.theta, kPi);
  }
}

TEST(PropagateUnicycleExactTest, QuarterCircle) {
  const Pose p = PropagateUnicycleExact({0, 0, 0}, {1, 1}, kPi / 2);
  EXPECT_NEAR(p.x, 1.0, 1e-12);
  EXPECT_NEAR(p.y, 1.0, 1e-12);
  EXPECT_NEAR(p.theta, kPi / 2, 1e-12);
}

TEST(PropagateDynamicsTest, ZeroTorqueIsEquilibrium) {
  const VelocityState s = PropagateDynamics({0.3, -0.1}, {}, DynamicParams{}, {}, 0, 0.01);
  EXPECT_EQ(s.v, 0.3);
  EXPECT_EQ(s.w, -0.1);
}

TEST(PropagateDynamicsTest, ConstantTorqueUnitPlant) {
  DynamicParams p;
  p.mass = 1.0;
  p.wheel_radius = 1.0;
  const VelocityState s = PropagateDynamics({0, 0}, {1, 1}, p, {}, 0, 0.01);
  EXPECT_NEAR(s.v, 0.02, 1e-15);
  EXPECT_EQ(s.w, 0.0);
}

TEST(PropagateDynamicsTest, AngularAcceleration) {
  DynamicParams p;
  p.half_track = 0.25;
  p.inertia = 0.5;
  p.wheel_radius = 0.1;
  EXPECT_DOUBLE_EQ(p.GainW() * 2.0, 5.0);
  const VelocityState s = PropagateDynamics({0, 0}, {1, -1}, p, {}, 0, 0.001);
  EXPECT_NEAR(s.w, 0.005, 1e-15);
}

// Constant torques and disturbances make both channels affine in time, so
// RK4 must reproduce the closed form.
TEST(PropagateDynamicsTest, MatchesClosedFormWithConstantDisturbance) {
  DynamicParams p;
  Disturbance d;
  d.force.value = 3.0;
  d.torque.value = 0.2;
  const WheelTorques tq{0.7, 0.2};
  VelocityState s{0.1, 0.05};
  const double dt = 0.01;
  for (int k = 0; k < 100; ++k) {
    const VelocityState next = PropagateDynamics(s, tq, p, d, k * dt, dt);
    const double v = s.v + dt * ((tq.right + tq.left) / (p.mass * p.wheel_radius) -
                                 d.force.value / p.mass);
    const double w = s.w + dt * (p.half_track * (tq.right - tq.left) /
                                     (2 * p.inertia * p.wheel_radius) -
                                 d.torque.value / p.inertia);
    EXPECT_NEAR(next.v, v, 1e-10 * std::abs(v));
    EXPECT_NEAR(next.w, w, 1e-10 * std::abs(w));
    s = next;
  }
}

TEST(DisturbanceProfileTest, Shapes) {
  DisturbanceProfile step{DisturbanceProfile::Kind::kStep, 2.0, 1.0, 1.0};
  EXPECT_EQ(step.Evaluate(0.5), 0.0);
  EXPECT_EQ(step.Evaluate(1.5), 2.0);
  DisturbanceProfile sine{DisturbanceProfile::Kind::kSine, 2.0, 0.0, 4.0};
  EXPECT_NEAR(sine.Evaluate(1.0), 2.0, 1e-12);
}

TEST(WheelSpeedsTest, Examples) {
  DynamicParams p;
  const WheelSpeeds a = ComputeWheelSpeeds({1, 0}, p);
  EXPECT_EQ(a.left, 1.0);
  EXPECT_EQ(a.right, 1.0);
  const WheelSpeeds b = ComputeWheelSpeeds({0, 1}, p);
  EXPECT_EQ(b.left, -0.25);
  EXPECT_EQ(b.right, 0.25);
}

TEST(WheelSpeedsTest, RoundTrip) {
  DynamicParams p;
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 1000; ++i) {
    const VelocityState in{u(rng), u(rng)};
    const WheelSpeeds s = ComputeWheelSpeeds(in, p);
    EXPECT_NEAR((s.left + s.right) / 2, in.v, 1e-15);
    EXPECT_NEAR((s.right - s.left) / (2 * p.half_track), in.w, 1e-15);
  }
}

TEST(VelocityConstraintTest, Examples) {
  DynamicParams p;
  for (double cv : {1.0, 4.0, 10.0}) EXPECT_TRUE(CheckVelocityConstraint({0.4, 0}, p, cv));
  EXPECT_FALSE(CheckVelocityConstraint({0.4, 0.4}, p, 4.0));
  EXPECT_TRUE(CheckVelocityConstraint({0.3, 0.4}, p, 1.0));
  EXPECT_FALSE(CheckVelocityConstraint({0.3, 0.41}, p, 1.0));
}

// The c_v = 1 diamond is exactly the per-wheel speed limit.
TEST(VelocityConstraintTest, DiamondEqualsWheelLimit) {
  DynamicParams p;
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> v(-0.6, 0.6), w(-2.4, 2.4);
  int counterexamples = 0;
  for (int i = 0; i < 100000; ++i) {
    const VelocityState u{v(rng), w(rng)};
    const WheelSpeeds s = ComputeWheelSpeeds(u, p);
    const bool wheels = std::abs(s.left) <= p.v_max + 1e-9 &&
                        std::abs(s.right) <= p.v_max + 1e-9;
    counterexamples += wheels != CheckVelocityConstraint(u, p, 1.0);
  }
  EXPECT_EQ(counterexamples, 0);
}

TEST(VelocityLimitsTest, ProjectionIsFeasibleAndIdempotent) {
  const VelocityLimits lim(0.4, 0.4, 0.25, 4.0);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 10000; ++i) {
    const VelocityState in{u(rng), u(rng)};
    const VelocityState out = lim.Project(in);
    EXPECT_TRUE(lim.Contains(out));
    EXPECT_GE(out.v, -1e-12);
    const VelocityState again = lim.Project(out);
    EXPECT_NEAR(again.v, out.v, 1e-12);
    EXPECT_NEAR(again.w, out.w, 1e-12);
    // Nearest-point property against a few feasible probes.
    const double d = std::hypot(in.v - out.v, in.w - out.w);
    for (int k = 0; k < 4; ++k) {
      const VelocityState probe = lim.Project({u(rng), u(rng)});
      EXPECT_LE(d, std::hypot(in.v - probe.v, in.w - probe.w) + 1e-12);
    }
  }
}

TEST(DynamicParamsTest, ValidateRejectsNonPositive) {
  DynamicParams p;
  p.inertia = 0.0;
  EXPECT_THROW(p.Validate(), std::invalid_argument);
}

}  // namespace
}  // namespace agv
