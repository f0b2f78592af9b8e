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

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "agv/errors.h"
#include "agv/planner.h"

namespace agv {
namespace {

GlobalPath Line(double length, double spacing) {
  return DensifyPath(GlobalPath{{{0, 0}, {length, 0}}}, spacing);
}

TEST(TimestampTest, UniformSpacing) {
  const TimedPath t =
      TimestampConstantVelocity(GlobalPath{{{0, 0}, {0.02, 0}, {0.04, 0}, {0.06, 0}}}, 0.4);
  ASSERT_EQ(t.size(), 4);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(t.times[i], 0.05 * i, 1e-15);
}

TEST(TimestampTest, DoublingSpeedHalvesTimes) {
  const GlobalPath p{{{0, 0}, {0.3, 0}, {0.3, 0.5}, {1.0, 0.9}}};
  const TimedPath slow = TimestampConstantVelocity(p, 0.2);
  const TimedPath fast = TimestampConstantVelocity(p, 0.4);
  for (int i = 0; i < slow.size(); ++i) EXPECT_NEAR(fast.times[i], slow.times[i] / 2, 1e-15);
}

TEST(TimestampTest, HeadingsFromSegments) {
  const TimedPath t = TimestampConstantVelocity(GlobalPath{{{0, 0}, {1, 0}, {1, 1}}}, 0.4);
  EXPECT_EQ(t.poses[0].theta, 0.0);
  EXPECT_DOUBLE_EQ(t.poses[1].theta, kPi / 2);
  EXPECT_DOUBLE_EQ(t.poses[2].theta, kPi / 2);
}

TEST(TimestampTest, RejectsRepeatedPoint) {
  EXPECT_THROW(TimestampConstantVelocity(GlobalPath{{{0, 0}, {0, 0}, {1, 0}}}, 0.4),
               DegeneratePathError);
}

SmoothingOptions BoxOptions() {
  SmoothingOptions o;
  o.limits = VelocityLimits(0.4, 0.4, 0.0, 1.0);
  return o;
}

TEST(SmoothPathTest, StraightLineStaysOnLine) {
  const TimedPath t = TimestampConstantVelocity(Line(3.0, 0.1), 0.4);
  const std::vector<Pose> s = SmoothPath(t, BoxOptions());
  ASSERT_EQ(static_cast<int>(s.size()), t.size());
  EXPECT_EQ(s[0].x, t.poses[0].x);
  for (const Pose& p : s) EXPECT_LE(std::abs(p.y), 1e-3);
}

TEST(SmoothPathTest, CornerIsCut) {
  const GlobalPath raw = DensifyPath(GlobalPath{{{0, 0}, {3, 0}, {3, 3}}}, 0.1);
  const TimedPath t = TimestampConstantVelocity(raw, 0.4);
  SmoothingStats stats;
  const std::vector<Pose> s = SmoothPath(t, BoxOptions(), &stats);
  ASSERT_EQ(static_cast<int>(s.size()), t.size());
  EXPECT_GT(stats.windows, 0);
  EXPECT_LT(HeadingRoughness(s), HeadingRoughness(t.poses));
  double max_in = 0, max_out = 0;
  for (int i = 1; i < t.size(); ++i) {
    max_in = std::max(max_in, std::abs(AngleDiff(t.poses[i].theta, t.poses[i - 1].theta)));
    max_out = std::max(max_out, std::abs(AngleDiff(s[i].theta, s[i - 1].theta)));
  }
  EXPECT_LT(max_out, max_in);
}

// With H_u = H the windows do not overlap: each one starts where the
// previous ended and tracks the next H waypoints.
TEST(SmoothPathTest, FullUpdateHorizonMatchesPiecewise) {
  const GlobalPath raw = DensifyPath(GlobalPath{{{0, 0}, {2, 0}, {2, 1}}}, 0.1);
  const TimedPath t = TimestampConstantVelocity(raw, 0.4);
  SmoothingOptions o = BoxOptions();
  o.horizon = 10;
  o.update_horizon = 10;
  const std::vector<Pose> s = SmoothPath(t, o);

  const int n = t.size() - 1;
  Pose z0 = t.poses[0];
  VelocityState u_prev{0.4, 0.0};
  for (int k = 0; k < n;) {
    const int h = std::min(10, n - k);
    HorizonProblem p;
    p.initial = z0;
    p.limits = o.limits;
    p.u_prev = u_prev;
    std::vector<VelocityState> guess;
    for (int i = 0; i < h; ++i) {
      p.ref_states.push_back(t.poses[k + i + 1]);
      p.ref_inputs.push_back({0.4, 0.0});
      const double dt = t.times[k + i + 1] - t.times[k + i];
      p.dt.push_back(dt);
      guess.push_back({std::hypot(t.poses[k + i + 1].x - t.poses[k + i].x,
                                  t.poses[k + i + 1].y - t.poses[k + i].y) / dt,
                       AngleDiff(t.poses[k + i + 1].theta, t.poses[k + i].theta) / dt});
    }
    const HorizonSolution sol = Solve(p, guess, o.solver);
    for (int i = 0; i < h; ++i) {
      EXPECT_NEAR(s[k + i + 1].x, sol.states[i].x, 1e-12);
      EXPECT_NEAR(s[k + i + 1].y, sol.states[i].y, 1e-12);
    }
    z0 = sol.states[h - 1];
    u_prev = sol.inputs[h - 1];
    k += h;
  }
}

TEST(SmoothPathTest, RejectsBadHorizons) {
  const TimedPath t = TimestampConstantVelocity(Line(3.0, 0.1), 0.4);
  SmoothingOptions o = BoxOptions();
  o.update_horizon = o.horizon + 1;
  EXPECT_THROW(SmoothPath(t, o), std::invalid_argument);
  o.update_horizon = 0;
  EXPECT_THROW(SmoothPath(t, o), std::invalid_argument);
}

TEST(BlendToGoalTest, EndsExactlyAtGoalWithContinuousHeading) {
  const GlobalPath raw = DensifyPath(GlobalPath{{{0, 0}, {3, 0}, {3, 0.3}}}, 0.1);
  const TimedPath t = TimestampConstantVelocity(raw, 0.4);
  const std::vector<Pose> s = SmoothPath(t, BoxOptions());
  const Pose goal = t.poses.back();
  const std::vector<Pose> e = BlendToGoal(s, goal, 0.5);
  EXPECT_EQ(e.back().x, goal.x);
  EXPECT_EQ(e.back().y, goal.y);
  EXPECT_EQ(e.back().theta, goal.theta);
  for (std::size_t i = 1; i < e.size(); ++i) {
    EXPECT_LT(std::abs(AngleDiff(e[i].theta, e[i - 1].theta)), 0.2) << i;
  }
}

TEST(BlendToGoalTest, KeepsPrefixBeyondBlendDistance) {
  std::vector<Pose> s;
  for (int i = 0; i <= 30; ++i) s.push_back({0.1 * i, 0.0, 0.0});
  const Pose goal{3.0, 0.05, 0.0};
  const std::vector<Pose> e = BlendToGoal(s, goal, 0.5);
  for (int i = 0; i <= 25; ++i) EXPECT_EQ(e[i].x, s[i].x);
  EXPECT_EQ(e.back().y, 0.05);
  EXPECT_THROW(BlendToGoal({}, goal, 0.5), std::invalid_argument);
  EXPECT_THROW(BlendToGoal(s, goal, 0.0), std::invalid_argument);
}

TEST(ResamplePathTest, KeepsVerticesAndBoundsSpacing) {
  const std::vector<Pose> in = {{0, 0, 0}, {0.1, 0, 0}, {0.1, 0.07, kPi / 2}};
  const std::vector<Pose> out = ResamplePath(in, 0.02);
  EXPECT_EQ(out.front().x, 0.0);
  EXPECT_EQ(out.back().y, 0.07);
  const std::vector<double> s = ArcLengths(out);
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_LE(s[i] - s[i - 1], 0.02 + 1e-12);
  EXPECT_NEAR(s.back(), 0.17, 1e-12);
}

std::vector<Pose> HeadingPath(double (*theta)(double), double length, int n) {
  std::vector<Pose> path;
  Pose p{0, 0, theta(0)};
  path.push_back(p);
  const double ds = length / n;
  for (int i = 1; i <= n; ++i) {
    // Exact arc positions do not matter for the fit; only s and theta.
    p.x += ds * std::cos(theta((i - 0.5) * ds));
    p.y += ds * std::sin(theta((i - 0.5) * ds));
    p.theta = WrapAngle(theta(i * ds));
    path.push_back(p);
  }
  return path;
}

TEST(FitHeadingTest, ReproducesLinearHeading) {
  const std::vector<Pose> path = ResamplePath(
      {{0, 0, 0.3}, {0.5, 0, 0.35}, {1.0, 0, 0.4}, {1.5, 0, 0.45}, {2.0, 0, 0.5}}, 0.1);
  const HeadingPolyFit fit = FitHeadingPolynomial(path, 1.0);
  for (const auto& seg : fit.segments) {
    EXPECT_NEAR(seg.coeffs[1], 0.1, 1e-10);
    EXPECT_NEAR(seg.coeffs[2], 0.0, 1e-10);
    EXPECT_NEAR(seg.coeffs[3], 0.0, 1e-10);
  }
  EXPECT_NEAR(fit.segments[0].coeffs[0], 0.3, 1e-10);
  for (double s = 0; s <= 2.0; s += 0.05) EXPECT_NEAR(fit.Derivative(s), 0.1, 1e-10);
}

TEST(FitHeadingTest, ConstantHeadingHasZeroDerivative) {
  const std::vector<Pose> path = HeadingPath([](double) { return 1.0; }, 3.0, 150);
  const HeadingPolyFit fit = FitHeadingPolynomial(path, 1.0);
  for (double s = 0; s <= 3.0; s += 0.1) EXPECT_NEAR(fit.Derivative(s), 0.0, 1e-10);
}

TEST(FitHeadingTest, CircularArcAcrossWrap) {
  // theta = s / 2 starting near pi, so raw headings wrap mid-path.
  const std::vector<Pose> path =
      HeadingPath([](double s) { return 2.8 + s / 2; }, 4.0, 200);
  const HeadingPolyFit fit = FitHeadingPolynomial(path, 1.0);
  for (double s = 0; s <= 4.0; s += 0.1) EXPECT_NEAR(fit.Derivative(s), 0.5, 1e-8);
}

// Least-squares oracle by the normal equations on a noisy cubic.
TEST(FitHeadingTest, MatchesNormalEquations) {
  std::mt19937 rng(31);
  std::normal_distribution<double> noise(0.0, 0.01);
  std::vector<Pose> path;
  for (int i = 0; i <= 40; ++i) {
    const double s = 0.02 * i;
    path.push_back({s, 0, 0.2 + 0.5 * s - 0.3 * s * s + 0.4 * s * s * s + noise(rng)});
  }
  const HeadingPolyFit fit = FitHeadingPolynomial(path, 1.0);
  ASSERT_EQ(fit.segments.size(), 1u);
  Eigen::MatrixXd a(41, 4);
  Eigen::VectorXd b(41);
  for (int i = 0; i <= 40; ++i) {
    const double s = 0.02 * i;
    a.row(i) << 1, s, s * s, s * s * s;
    b(i) = path[i].theta;
  }
  const Eigen::VectorXd c = (a.transpose() * a).ldlt().solve(a.transpose() * b);
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(fit.segments[0].coeffs[k], c(k), 1e-8);
}

TEST(FitHeadingTest, TooFewSamples) {
  EXPECT_THROW(FitHeadingPolynomial({{0, 0, 0}, {0.1, 0, 0}, {0.2, 0, 0}}, 1.0),
               RankDeficientError);
}

TEST(FitHeadingTest, SegmentsTileTheArc) {
  const std::vector<Pose> path = HeadingPath([](double s) { return std::sin(s); }, 5.3, 265);
  const HeadingPolyFit fit = FitHeadingPolynomial(path, 1.0);
  EXPECT_EQ(fit.segments.front().s_begin, 0.0);
  for (std::size_t i = 1; i < fit.segments.size(); ++i) {
    EXPECT_EQ(fit.segments[i].s_begin, fit.segments[i - 1].s_end);
    EXPECT_GE(fit.segments[i].samples, 4);
    EXPECT_LE(fit.segments[i].s_end - fit.segments[i].s_begin, 1.0 + 1e-9);
  }
  EXPECT_NEAR(fit.segments.back().s_end, ArcLengths(path).back(), 1e-12);
}

TEST(ReferenceVelocityTest, StraightPathRunsAtLimit) {
  const std::vector<Pose> path = ResamplePath({{0, 0, 0}, {2, 0, 0}}, 0.02);
  const HeadingPolyFit fit = FitHeadingPolynomial(path, 1.0);
  const ReferenceTrajectory r = PlanReferenceVelocity(path, fit, 0.4, 0.25, 4.0, 0.2);
  for (const auto& p : r.points) {
    if (p.s < 2.0 - 0.2 - 1e-9) EXPECT_NEAR(p.v, 0.4, 1e-12);
    EXPECT_NEAR(p.w, 0.0, 1e-10);
  }
  EXPECT_EQ(r.points.back().v, 0.0);
}

TEST(ReferenceVelocityTest, ArcActivatesDiamond) {
  const std::vector<Pose> path = HeadingPath([](double s) { return s / 2; }, 2.0, 100);
  const HeadingPolyFit fit = FitHeadingPolynomial(path, 1.0);
  const ReferenceTrajectory r = PlanReferenceVelocity(path, fit, 0.4, 0.25, 4.0, 0.0);
  for (int i = 0; i + 1 < r.size(); ++i) {
    const auto& p = r.points[i];
    EXPECT_NEAR(p.v, 0.4 / 1.5, 1e-7);
    EXPECT_NEAR(p.w, 0.4 / 3.0, 1e-7);
    EXPECT_NEAR(p.v + 0.25 * 4.0 * std::abs(p.w), 0.4, 1e-9);
  }
}

TEST(ReferenceVelocityTest, TimingAndConstraints) {
  const std::vector<Pose> path = HeadingPath([](double s) { return std::sin(1.5 * s); }, 4.0, 200);
  const HeadingPolyFit fit = FitHeadingPolynomial(path, 1.0);
  for (double cv : {1.0, 4.0}) {
    const ReferenceTrajectory r = PlanReferenceVelocity(path, fit, 0.4, 0.25, cv, 0.2);
    EXPECT_EQ(r.points[0].t, 0.0);
    EXPECT_EQ(r.points[0].s, 0.0);
    for (int i = 0; i < r.size(); ++i) {
      const auto& p = r.points[i];
      EXPECT_GE(p.v, 0.0);
      EXPECT_LE(p.v + 0.25 * cv * std::abs(p.w), 0.4 + 1e-9);
      if (i > 0) {
        EXPECT_GT(p.t, r.points[i - 1].t);
        EXPECT_GE(p.s, r.points[i - 1].s);
      }
    }
    EXPECT_TRUE(std::isfinite(r.Duration()));
  }
}

TEST(ReferenceTrajectoryTest, SampleAtInterpolates) {
  ReferenceTrajectory r;
  r.points = {{{0, 0, 0}, 0.4, 0.1, 0.0, 0.0}, {{1, 0, 0.2}, 0.2, 0.0, 1.0, 1.0}};
  EXPECT_EQ(r.IndexAt(-1.0), 0);
  EXPECT_EQ(r.IndexAt(0.5), 0);
  EXPECT_EQ(r.IndexAt(5.0), 1);
  const ReferenceSample s = r.SampleAt(0.25);
  EXPECT_NEAR(s.pose.x, 0.25, 1e-12);
  EXPECT_NEAR(s.pose.theta, 0.05, 1e-12);
  EXPECT_EQ(s.u.v, 0.4);
}

TEST(PlanTrajectoryTest, RoomCourseEndsAtGoal) {
  GridMap map(60, 40, 0.1);
  for (int iy = 10; iy < 40; ++iy) map.SetOccupied({30, iy}, true);
  PlannerConfig cfg;
  const PlanResult plan = PlanTrajectory(map, {{0.5, 3.5}, {5.5, 3.5}}, cfg);
  const Pose& end = plan.trajectory.points.back().pose;
  EXPECT_LE(std::hypot(end.x - 5.5, end.y - 3.5), 0.01);
  const double rough_in = HeadingRoughness(plan.timed.poses);
  const double rough_out =
      HeadingRoughness(ResamplePath(plan.smoothed, cfg.smoothing_spacing));
  EXPECT_LT(rough_out, rough_in);
  for (const auto& p : plan.trajectory.points) {
    EXPECT_LE(p.v + cfg.half_track * cfg.c_v * std::abs(p.w), cfg.v_max + 1e-9);
  }
}

}  // namespace
}  // namespace agv
