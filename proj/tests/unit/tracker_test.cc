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

#include "agv/errors.h"
#include "agv/tracker.h"

namespace agv {
namespace {

ReferenceTrajectory StraightReference(double length, double speed) {
  const TimedPath timed = TimestampConstantVelocity(
      DensifyPath(GlobalPath{{{0, 0}, {length, 0}}}, 0.02), speed);
  return ReferenceFromTimedPath(timed, speed, 0.2);
}

// Starting from rest the increment weight holds the first commands back, so
// the tracker is stepped along the reference until it has settled.
TEST(MpcTrackerTest, OnReferenceFollowsFeedforward) {
  const ReferenceTrajectory ref = StraightReference(3.0, 0.36);
  MpcTracker tracker(ref, MpcTrackerOptions{});
  VelocityState u;
  for (int k = 0; k <= 40; ++k) {
    const double t = 0.05 * k;
    u = tracker.Step(t, ref.SampleAt(t).pose);
  }
  EXPECT_NEAR(u.v, 0.36, 1e-3);
  EXPECT_NEAR(u.w, 0.0, 1e-3);
  EXPECT_EQ(tracker.u_prev().v, u.v);
}

TEST(MpcTrackerTest, LateralOffsetLeftSteersRight) {
  const ReferenceTrajectory ref = StraightReference(3.0, 0.36);
  MpcTracker tracker(ref, MpcTrackerOptions{});
  Pose z = ref.SampleAt(1.0).pose;
  z.y += 0.05;
  EXPECT_LT(tracker.Step(1.0, z).w, 0.0);

  MpcTracker mirrored(ref, MpcTrackerOptions{});
  z.y -= 0.1;
  EXPECT_GT(mirrored.Step(1.0, z).w, 0.0);
}

TEST(MpcTrackerTest, PastTheEndReturnsZero) {
  const ReferenceTrajectory ref = StraightReference(1.0, 0.36);
  MpcTracker tracker(ref, MpcTrackerOptions{});
  const double t_end = ref.Duration();
  EXPECT_TRUE(tracker.Finished(t_end));
  EXPECT_FALSE(tracker.Finished(0.5 * t_end));
  const VelocityState u = tracker.Step(t_end + 1.0, ref.points.back().pose);
  EXPECT_EQ(u.v, 0.0);
  EXPECT_EQ(u.w, 0.0);
}

// Closed loop on the exact unicycle from a perturbed start: every command
// is admissible and the tracker pulls the pose back onto the path.
TEST(MpcTrackerTest, ClosedLoopStaysFeasibleAndConverges) {
  const ReferenceTrajectory ref = StraightReference(4.0, 0.36);
  MpcTrackerOptions opts;
  MpcTracker tracker(ref, opts);
  Pose z{0.0, 0.08, 0.1};
  for (double t = 0.0; t < ref.Duration(); t += 0.05) {
    const VelocityState u = tracker.Step(t, z);
    EXPECT_TRUE(opts.limits.Contains(u, 1e-9));
    EXPECT_GE(u.v, -1e-12);
    z = PropagateUnicycleExact(z, u, 0.05);
  }
  EXPECT_LT(std::abs(z.y), 0.01);
  EXPECT_GT(tracker.stats().solves, 0);
}

TEST(PidChannelTest, FirstStepFormula) {
  PidChannel ch({0.1, 0.05, 0.2}, 1.0);
  const double e = 0.3;
  EXPECT_NEAR(ch.Step(e, 0.05), 0.1 * e + 0.05 * e * 0.05 + 0.2 * e / 0.05, 1e-15);
}

TEST(PidChannelTest, IntegralIsClamped) {
  PidChannel ch({0.0, 1.0, 0.0}, 0.5);
  for (int i = 0; i < 100; ++i) ch.Step(1.0, 0.1);
  EXPECT_DOUBLE_EQ(ch.integral(), 0.5);
}

TEST(PathErrorsTest, Decomposition) {
  const PathErrors e = ComputePathErrors({1.0, 0.5, 0.0}, {0.8, 0.3, kPi / 2}, 0.2);
  EXPECT_NEAR(e.along, -0.2, 1e-15);   // reference is behind along its heading
  EXPECT_NEAR(e.lateral, 0.2, 1e-15);  // and to the left of the pose
  EXPECT_NEAR(e.heading_to_path, kPi / 2 + std::atan2(0.2, 0.2), 1e-15);
}

ReferenceSample Sample(double v, double w) {
  ReferenceSample s;
  s.pose = {1.0, 2.0, 0.4};
  s.u = {v, w};
  return s;
}

TEST(PidTrackerTest, ZeroErrorIsFeedthrough) {
  PidTracker pid(PidTrackerOptions{});
  const VelocityState u = pid.Step({1.0, 2.0, 0.4}, Sample(0.2, 0.1), 0.05);
  EXPECT_EQ(u.v, 0.2);
  EXPECT_EQ(u.w, 0.1);
}

TEST(PidTrackerTest, HeadingErrorFirstStep) {
  PidTracker pid(PidTrackerOptions{});
  const double e = 0.01;
  const VelocityState u = pid.Step({1.0, 2.0, 0.4 - e}, Sample(0.1, 0.0), 0.05);
  EXPECT_NEAR(u.w, 0.1 * e + 0.05 * e * 0.05 + 0.2 * e / 0.05, 1e-12);
  EXPECT_NEAR(u.v, 0.1, 1e-12);
}

TEST(PidTrackerTest, HugeErrorLandsOnBoundary) {
  PidTrackerOptions opts;
  PidTracker pid(opts);
  const VelocityState u = pid.Step({-50.0, 2.0, 2.0}, Sample(0.3, 0.0), 0.05);
  EXPECT_TRUE(opts.limits.Contains(u, 1e-9));
  const double diamond = u.v + 0.25 * 4.0 * std::abs(u.w);
  EXPECT_NEAR(diamond, 0.4, 1e-9);
}

TEST(PidTrackerTest, RandomCommandsAreAdmissible) {
  PidTrackerOptions opts;
  PidTracker pid(opts);
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 2000; ++i) {
    const VelocityState c =
        pid.Step({u(rng), u(rng), u(rng)}, Sample(0.2 + 0.1 * u(rng), 0.1 * u(rng)), 0.05);
    EXPECT_TRUE(opts.limits.Contains(c, 1e-9));
  }
}

}  // namespace
}  // namespace agv
