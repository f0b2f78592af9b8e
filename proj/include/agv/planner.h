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

#ifndef AGV_PLANNER_H_
#define AGV_PLANNER_H_

#include <array>
#include <vector>

#include "agv/agv_model.h"
#include "agv/nlp.h"
#include "agv/world.h"

namespace agv {

// Poses with reference times; times[0] == 0 and strictly increasing.
struct TimedPath {
  std::vector<Pose> poses;
  std::vector<double> times;

  int size() const { return static_cast<int>(poses.size()); }
  double StepDuration(int i) const { return times[i + 1] - times[i]; }
};

// Constant-speed timing of a position-only path: each segment takes
// |r_{k+1} - r_k| / v_c. Headings follow the segment directions and the
// last point inherits its predecessor's heading. Throws DegeneratePathError
// when two consecutive points coincide.
TimedPath TimestampConstantVelocity(const GlobalPath& path, double v_c);

struct SmoothingOptions {
  int horizon = 20;          // H
  int update_horizon = 10;   // H_u, 1 <= H_u <= H (H_u = H: piecewise)
  double v_c = 0.4;          // reference speed of the constant-speed timing
  CostWeights weights;
  VelocityLimits limits;
  SolverOptions solver;
};

struct SmoothingStats {
  int windows = 0;
  long total_iterations = 0;
  int max_iterations = 0;
};

// Receding-window path smoothing. Starting from z_0 = r_0, each window
// tracks the next H timed waypoints with u_ref = (v_c, 0), keeps the first
// H_u predicted poses and restarts from the last kept one. The final window
// is truncated to the waypoints that remain. Returns exactly N_r + 1 poses
// with r_0 unchanged. Throws SolverFailure naming the window index when a
// window does not converge.
std::vector<Pose> SmoothPath(const TimedPath& timed,
                             const SmoothingOptions& options,
                             SmoothingStats* stats = nullptr);

// Joins a smoothed path to the goal pose. The path is cut at the last pose
// at least `blend_distance` from the goal before its closest approach, and
// a cubic Hermite curve from that pose to the goal is appended. The result
// ends exactly at `goal` with continuous heading.
std::vector<Pose> BlendToGoal(std::vector<Pose> smoothed, const Pose& goal,
                              double blend_distance);

// Piecewise cubic least-squares fit of heading against arc length. Each
// segment stores coefficients in its local variable (s - s_begin).
struct HeadingPolyFit {
  struct Segment {
    double s_begin = 0.0;
    double s_end = 0.0;
    std::array<double, 4> coeffs = {0.0, 0.0, 0.0, 0.0};  // c0..c3
    double rmse = 0.0;
    int samples = 0;
  };
  std::vector<Segment> segments;

  const Segment& SegmentAt(double s) const;
  double Evaluate(double s) const;
  // d(theta)/ds.
  double Derivative(double s) const;
};

// Cumulative arc length of a pose sequence, s_0 = 0.
std::vector<double> ArcLengths(const std::vector<Pose>& path);

// Re-samples a pose sequence at arc-length intervals of at most `spacing`.
// Original vertices are kept; inserted poses interpolate position linearly
// and heading along the shorter arc.
std::vector<Pose> ResamplePath(const std::vector<Pose>& path, double spacing);

// Segments are at most `segment_len` of arc; a segment with fewer than four
// samples is merged into its neighbour. Throws RankDeficientError when the
// whole path has fewer than four distinct samples.
HeadingPolyFit FitHeadingPolynomial(const std::vector<Pose>& path,
                                    double segment_len);

struct ReferencePoint {
  Pose pose;
  double v = 0.0;  // v_ref [m/s]
  double w = 0.0;  // w_ref [rad/s]
  double t = 0.0;  // T* [s]
  double s = 0.0;  // arc length [m]
};

struct ReferenceSample {
  Pose pose;
  VelocityState u;
  int index = 0;  // k with T_k <= t < T_{k+1}
};

struct ReferenceTrajectory {
  std::vector<ReferencePoint> points;

  int size() const { return static_cast<int>(points.size()); }
  double Duration() const { return points.empty() ? 0.0 : points.back().t; }
  // Largest k with T_k <= t, clamped to [0, N_r].
  int IndexAt(double t) const;
  // Pose interpolated linearly in time; inputs held from waypoint k.
  ReferenceSample SampleAt(double t) const;
};

// Curvature-limited speed profile. v_i = v_max / (1 + |l_w c_v theta'(s_i)|)
// with theta' from the fit, w_i = theta'(s_i) v_i, and the speed tapered
// linearly to zero over the last `stop_distance` of arc. Segment k lasts
// d_k / v_k.
ReferenceTrajectory PlanReferenceVelocity(const std::vector<Pose>& path,
                                          const HeadingPolyFit& fit,
                                          double v_max, double half_track,
                                          double c_v,
                                          double stop_distance = 0.2);

// Constant-speed reference (v_c, 0) along a timed path with the same
// terminal taper; used to track a raw grid path directly.
ReferenceTrajectory ReferenceFromTimedPath(const TimedPath& timed, double v_c,
                                           double stop_distance = 0.2);

struct PlannerConfig {
  double smoothing_spacing = 0.1;  // waypoint spacing for smoothing [m]
  double spacing = 0.02;       // spacing of the tracked trajectory [m]
  double v_c = 0.4;            // [m/s]
  double c_v = 4.0;
  double v_max = 0.4;          // [m/s]
  double w_max = 0.4;          // [rad/s]
  double half_track = 0.25;    // [m]
  int horizon = 20;
  int update_horizon = 10;
  CostWeights weights;
  SolverOptions solver;
  double segment_len = 1.0;    // heading fit [m]
  double stop_distance = 0.2;  // [m]
  // Reference speeds are planned against reference_scale * v_max so the
  // tracker keeps authority to steer and to make up lost ground.
  double reference_scale = 0.9;
  double goal_blend = 0.5;     // terminal blend length [m]

  VelocityLimits Limits() const {
    return VelocityLimits(v_max, w_max, half_track, c_v);
  }
  double ReferenceSpeedLimit() const { return reference_scale * v_max; }
  // The smoother sees only the box 0 <= v <= v_max, |w| <= w_max.
  VelocityLimits SmoothingLimits() const {
    return VelocityLimits(v_max, w_max, 0.0, 1.0);
  }
};

struct PlanResult {
  GlobalPath raw;
  GlobalPath dense;
  TimedPath timed;
  std::vector<Pose> smoothed;
  HeadingPolyFit fit;
  ReferenceTrajectory trajectory;
  SmoothingStats stats;
};

// Grid plan along the route, densify to the smoothing spacing, time at v_c,
// smooth, blend into the goal pose, resample to the tracking spacing, fit headings
// and plan the speed profile.
PlanResult PlanTrajectory(const GridMap& map,
                          const std::vector<Waypoint>& route,
                          const PlannerConfig& config);

// Sum of squared wrapped heading increments.
double HeadingRoughness(const std::vector<Pose>& path);

}  // namespace agv

#endif  // AGV_PLANNER_H_
