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

#include "agv/planner.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "agv/errors.h"

namespace agv {

namespace {

double Distance(const Pose& a, const Pose& b) {
  return std::hypot(b.x - a.x, b.y - a.y);
}

}  // namespace

TimedPath TimestampConstantVelocity(const GlobalPath& path, double v_c) {
  if (!(v_c > 0.0)) {
    throw std::invalid_argument("TimestampConstantVelocity: v_c must be > 0");
  }
  const auto& pts = path.points;
  if (pts.size() < 2) {
    throw std::invalid_argument(
        "TimestampConstantVelocity: path needs at least two points");
  }
  TimedPath timed;
  timed.poses.resize(pts.size());
  timed.times.resize(pts.size());
  timed.times[0] = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double dx = pts[k + 1].x - pts[k].x;
    const double dy = pts[k + 1].y - pts[k].y;
    const double d = std::hypot(dx, dy);
    if (d == 0.0) {
      throw DegeneratePathError("consecutive waypoints " + std::to_string(k) +
                                " and " + std::to_string(k + 1) +
                                " coincide");
    }
    timed.poses[k] = {pts[k].x, pts[k].y, std::atan2(dy, dx)};
    timed.times[k + 1] = timed.times[k] + d / v_c;
  }
  timed.poses.back() = {pts.back().x, pts.back().y,
                        timed.poses[pts.size() - 2].theta};
  return timed;
}

std::vector<Pose> SmoothPath(const TimedPath& timed,
                             const SmoothingOptions& options,
                             SmoothingStats* stats) {
  const int n = timed.size() - 1;  // N_r
  const int h_max = options.horizon;
  const int h_u = options.update_horizon;
  if (!(h_u >= 1 && h_u <= h_max && h_max <= n)) {
    throw std::invalid_argument(
        "SmoothPath: need 1 <= update_horizon <= horizon <= N_r");
  }
  std::vector<Pose> out(n + 1);
  out[0] = timed.poses[0];

  HorizonProblem problem;
  problem.weights = options.weights;
  problem.limits = options.limits;
  problem.u_prev = {options.v_c, 0.0};

  Pose z0 = timed.poses[0];
  int k = 0;
  int window = 0;
  std::vector<VelocityState> guess;
  while (k < n) {
    const int h = std::min(h_max, n - k);
    problem.initial = z0;
    problem.ref_states.assign(timed.poses.begin() + k + 1,
                              timed.poses.begin() + k + 1 + h);
    problem.ref_inputs.assign(h, {options.v_c, 0.0});
    problem.dt.resize(h);
    guess.resize(h);
    for (int i = 0; i < h; ++i) {
      const double step = timed.StepDuration(k + i);
      problem.dt[i] = step;
      const Pose& from = timed.poses[k + i];
      const Pose& to = timed.poses[k + i + 1];
      guess[i] = {Distance(from, to) / step,
                  AngleDiff(to.theta, from.theta) / step};
    }
    const HorizonSolution sol = Solve(problem, guess, options.solver);
    if (stats != nullptr) {
      ++stats->windows;
      stats->total_iterations += sol.iterations;
      stats->max_iterations = std::max(stats->max_iterations, sol.iterations);
    }
    if (!sol.converged) throw SolverFailure("path smoothing", window);

    const int keep = std::min(h_u, h);
    for (int i = 1; i <= keep; ++i) out[k + i] = sol.states[i - 1];
    z0 = sol.states[keep - 1];
    problem.u_prev = sol.inputs[keep - 1];
    k += keep;
    ++window;
  }
  return out;
}

std::vector<Pose> BlendToGoal(std::vector<Pose> smoothed, const Pose& goal,
                              double blend_distance) {
  if (smoothed.empty()) {
    throw std::invalid_argument("BlendToGoal: empty path");
  }
  if (!(blend_distance > 0.0)) {
    throw std::invalid_argument("BlendToGoal: blend distance must be > 0");
  }
  std::size_t closest = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < smoothed.size(); ++i) {
    const double d = Distance(smoothed[i], goal);
    if (d < best) {
      best = d;
      closest = i;
    }
  }
  std::size_t anchor = closest;
  while (anchor > 0 && Distance(smoothed[anchor], goal) < blend_distance) {
    --anchor;
  }
  smoothed.resize(anchor + 1);

  // Cubic Hermite from the anchor pose to the goal pose; tangent magnitudes
  // equal the chord so the curve has no loop for headings within 90 degrees.
  const Pose a = smoothed.back();
  const double chord = Distance(a, goal);
  if (chord == 0.0) {
    smoothed.back() = goal;
    return smoothed;
  }
  const double t0x = chord * std::cos(a.theta);
  const double t0y = chord * std::sin(a.theta);
  const double t1x = chord * std::cos(goal.theta);
  const double t1y = chord * std::sin(goal.theta);
  constexpr double kSampleSpacing = 0.005;  // [m]
  const int samples =
      std::max(8, static_cast<int>(std::ceil(chord / kSampleSpacing)));
  for (int k = 1; k < samples; ++k) {
    const double u = static_cast<double>(k) / samples;
    const double u2 = u * u;
    const double u3 = u2 * u;
    const double h00 = 2 * u3 - 3 * u2 + 1, h10 = u3 - 2 * u2 + u;
    const double h01 = -2 * u3 + 3 * u2, h11 = u3 - u2;
    const double d00 = 6 * u2 - 6 * u, d10 = 3 * u2 - 4 * u + 1;
    const double d01 = -6 * u2 + 6 * u, d11 = 3 * u2 - 2 * u;
    smoothed.push_back(
        {h00 * a.x + h10 * t0x + h01 * goal.x + h11 * t1x,
         h00 * a.y + h10 * t0y + h01 * goal.y + h11 * t1y,
         std::atan2(d00 * a.y + d10 * t0y + d01 * goal.y + d11 * t1y,
                    d00 * a.x + d10 * t0x + d01 * goal.x + d11 * t1x)});
  }
  smoothed.push_back(goal);
  return smoothed;
}

std::vector<double> ArcLengths(const std::vector<Pose>& path) {
  std::vector<double> s(path.size(), 0.0);
  for (std::size_t i = 1; i < path.size(); ++i) {
    s[i] = s[i - 1] + Distance(path[i - 1], path[i]);
  }
  return s;
}

std::vector<Pose> ResamplePath(const std::vector<Pose>& path, double spacing) {
  if (!(spacing > 0.0)) {
    throw std::invalid_argument("ResamplePath: spacing must be > 0");
  }
  std::vector<Pose> out;
  if (path.empty()) return out;
  out.reserve(path.size());
  out.push_back(path.front());
  for (std::size_t i = 1; i < path.size(); ++i) {
    const Pose& a = path[i - 1];
    const Pose& b = path[i];
    const int pieces =
        std::max(1, static_cast<int>(std::ceil(Distance(a, b) / spacing - 1e-9)));
    const double dtheta = AngleDiff(b.theta, a.theta);
    for (int j = 1; j < pieces; ++j) {
      const double f = static_cast<double>(j) / pieces;
      out.push_back({a.x + f * (b.x - a.x), a.y + f * (b.y - a.y),
                     WrapAngle(a.theta + f * dtheta)});
    }
    out.push_back(b);
  }
  return out;
}

const HeadingPolyFit::Segment& HeadingPolyFit::SegmentAt(double s) const {
  if (segments.empty()) throw std::logic_error("HeadingPolyFit: no segments");
  auto it = std::lower_bound(
      segments.begin(), segments.end(), s,
      [](const Segment& seg, double value) { return seg.s_end < value; });
  if (it == segments.end()) return segments.back();
  return *it;
}

double HeadingPolyFit::Evaluate(double s) const {
  const Segment& seg = SegmentAt(s);
  const double t = s - seg.s_begin;
  const auto& c = seg.coeffs;
  return c[0] + t * (c[1] + t * (c[2] + t * c[3]));
}

double HeadingPolyFit::Derivative(double s) const {
  const Segment& seg = SegmentAt(s);
  const double t = s - seg.s_begin;
  const auto& c = seg.coeffs;
  return c[1] + t * (2.0 * c[2] + t * 3.0 * c[3]);
}

HeadingPolyFit FitHeadingPolynomial(const std::vector<Pose>& path,
                                    double segment_len) {
  if (!(segment_len > 0.0)) {
    throw std::invalid_argument("FitHeadingPolynomial: segment_len must be > 0");
  }
  const std::vector<double> s = ArcLengths(path);
  if (path.empty() || !(s.back() > 0.0)) {
    throw std::invalid_argument("FitHeadingPolynomial: path has no length");
  }
  std::vector<double> heading(path.size());
  heading[0] = path[0].theta;
  for (std::size_t i = 1; i < path.size(); ++i) {
    heading[i] = heading[i - 1] + AngleDiff(path[i].theta, path[i - 1].theta);
  }

  struct Group {
    double s_begin, s_end;
    int first, last;  // sample range [first, last)
  };
  const double total = s.back();
  const int bins =
      std::max(1, static_cast<int>(std::ceil(total / segment_len - 1e-9)));
  const double width = total / bins;
  std::vector<Group> groups(bins);
  for (int b = 0; b < bins; ++b) {
    groups[b] = {b * width, b == bins - 1 ? total : (b + 1) * width, 0, 0};
  }
  std::vector<int> bin_of(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    bin_of[i] = std::min(bins - 1, static_cast<int>(s[i] / width));
  }
  for (int b = 0; b < bins; ++b) {
    groups[b].first = static_cast<int>(
        std::lower_bound(bin_of.begin(), bin_of.end(), b) - bin_of.begin());
    groups[b].last = static_cast<int>(
        std::upper_bound(bin_of.begin(), bin_of.end(), b) - bin_of.begin());
  }
  auto distinct = [&](const Group& g) {
    int count = 0;
    for (int i = g.first; i < g.last; ++i) {
      if (i == g.first || s[i] > s[i - 1]) ++count;
    }
    return count;
  };
  for (;;) {
    auto small = std::find_if(groups.begin(), groups.end(),
                              [&](const Group& g) { return distinct(g) < 4; });
    if (small == groups.end()) break;
    if (groups.size() == 1) {
      throw RankDeficientError(
          "heading fit needs at least four distinct samples");
    }
    auto other = small == groups.begin() ? small + 1 : small - 1;
    Group merged{std::min(small->s_begin, other->s_begin),
                 std::max(small->s_end, other->s_end),
                 std::min(small->first, other->first),
                 std::max(small->last, other->last)};
    *other = merged;
    groups.erase(small);
  }

  HeadingPolyFit fit;
  for (const Group& g : groups) {
    const int m = g.last - g.first;
    const double scale = std::max(g.s_end - g.s_begin, 1e-12);
    Eigen::MatrixXd a(m, 4);
    Eigen::VectorXd b(m);
    for (int r = 0; r < m; ++r) {
      const double t = (s[g.first + r] - g.s_begin) / scale;
      a(r, 0) = 1.0;
      a(r, 1) = t;
      a(r, 2) = t * t;
      a(r, 3) = t * t * t;
      b(r) = heading[g.first + r];
    }
    const Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
    if (qr.rank() < 4) {
      throw RankDeficientError("heading fit segment is rank deficient");
    }
    const Eigen::VectorXd x = qr.solve(b);
    HeadingPolyFit::Segment seg;
    seg.s_begin = g.s_begin;
    seg.s_end = g.s_end;
    seg.samples = m;
    double p = 1.0;
    for (int j = 0; j < 4; ++j) {
      seg.coeffs[j] = x(j) / p;
      p *= scale;
    }
    seg.rmse = std::sqrt((a * x - b).squaredNorm() / m);
    fit.segments.push_back(seg);
  }
  return fit;
}

int ReferenceTrajectory::IndexAt(double t) const {
  if (points.empty()) throw std::logic_error("ReferenceTrajectory: empty");
  auto it = std::upper_bound(
      points.begin(), points.end(), t,
      [](double value, const ReferencePoint& p) { return value < p.t; });
  const int k = static_cast<int>(it - points.begin()) - 1;
  return std::clamp(k, 0, size() - 1);
}

ReferenceSample ReferenceTrajectory::SampleAt(double t) const {
  const int k = IndexAt(t);
  ReferenceSample out;
  out.index = k;
  const ReferencePoint& a = points[k];
  if (k + 1 >= size() || t <= a.t) {
    out.pose = a.pose;
  } else {
    const ReferencePoint& b = points[k + 1];
    const double alpha = std::clamp((t - a.t) / (b.t - a.t), 0.0, 1.0);
    out.pose = {a.pose.x + alpha * (b.pose.x - a.pose.x),
                a.pose.y + alpha * (b.pose.y - a.pose.y),
                WrapAngle(a.pose.theta +
                          alpha * AngleDiff(b.pose.theta, a.pose.theta))};
  }
  out.u = {a.v, a.w};
  return out;
}

namespace {

double Taper(double remaining, double stop_distance) {
  if (stop_distance <= 0.0 || remaining >= stop_distance) return 1.0;
  return std::max(0.0, remaining / stop_distance);
}

void AssignTimes(std::vector<ReferencePoint>* points) {
  auto& pts = *points;
  pts[0].t = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double d = Distance(pts[k].pose, pts[k + 1].pose);
    if (d == 0.0 || !(pts[k].v > 0.0)) {
      throw DegeneratePathError("reference segment " + std::to_string(k) +
                                " has zero length or zero speed");
    }
    pts[k + 1].t = pts[k].t + d / pts[k].v;
  }
}

}  // namespace

ReferenceTrajectory PlanReferenceVelocity(const std::vector<Pose>& path,
                                          const HeadingPolyFit& fit,
                                          double v_max, double half_track,
                                          double c_v, double stop_distance) {
  if (!(v_max > 0.0) || !(c_v >= 1.0)) {
    throw std::invalid_argument(
        "PlanReferenceVelocity: need v_max > 0 and c_v >= 1");
  }
  if (path.size() < 2) {
    throw std::invalid_argument("PlanReferenceVelocity: need two poses");
  }
  const std::vector<double> s = ArcLengths(path);
  const double total = s.back();
  ReferenceTrajectory ref;
  ref.points.resize(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    const double curvature = fit.Derivative(s[i]);
    const double v = v_max / (1.0 + std::abs(half_track * c_v * curvature)) *
                     Taper(total - s[i], stop_distance);
    ref.points[i] = {path[i], v, curvature * v, 0.0, s[i]};
  }
  AssignTimes(&ref.points);
  return ref;
}

ReferenceTrajectory ReferenceFromTimedPath(const TimedPath& timed, double v_c,
                                           double stop_distance) {
  if (timed.size() < 2) {
    throw std::invalid_argument("ReferenceFromTimedPath: need two poses");
  }
  const std::vector<double> s = ArcLengths(timed.poses);
  const double total = s.back();
  ReferenceTrajectory ref;
  ref.points.resize(timed.poses.size());
  for (std::size_t i = 0; i < timed.poses.size(); ++i) {
    ref.points[i] = {timed.poses[i], v_c * Taper(total - s[i], stop_distance),
                     0.0, 0.0, s[i]};
  }
  AssignTimes(&ref.points);
  return ref;
}

namespace {

std::vector<Pose> DropNearDuplicates(const std::vector<Pose>& path,
                                     double min_gap) {
  std::vector<Pose> out;
  out.reserve(path.size());
  for (const Pose& p : path) {
    if (!out.empty() && Distance(out.back(), p) < min_gap) {
      if (&p == &path.back()) out.back() = p;
      continue;
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace

PlanResult PlanTrajectory(const GridMap& map,
                          const std::vector<Waypoint>& route,
                          const PlannerConfig& config) {
  PlanResult result;
  result.raw = PlanRoute(map, route);
  result.dense = DensifyPath(result.raw, config.smoothing_spacing);
  if (result.dense.points.size() < 3) {
    throw PlanningFailure("route is too short to smooth");
  }
  result.timed = TimestampConstantVelocity(result.dense, config.v_c);

  const int n = result.timed.size() - 1;
  SmoothingOptions options;
  options.horizon = std::min(config.horizon, n);
  options.update_horizon =
      std::clamp(config.update_horizon, 1, options.horizon);
  options.v_c = config.v_c;
  options.weights = config.weights;
  options.limits = config.SmoothingLimits();
  options.solver = config.solver;

  result.smoothed = SmoothPath(result.timed, options, &result.stats);
  result.smoothed = BlendToGoal(std::move(result.smoothed),
                                result.timed.poses.back(), config.goal_blend);
  result.smoothed =
      ResamplePath(DropNearDuplicates(result.smoothed, 1e-6), config.spacing);
  result.fit = FitHeadingPolynomial(result.smoothed, config.segment_len);
  result.trajectory =
      PlanReferenceVelocity(result.smoothed, result.fit,
                            config.ReferenceSpeedLimit(),
                            config.half_track, config.c_v,
                            config.stop_distance);
  return result;
}

double HeadingRoughness(const std::vector<Pose>& path) {
  double sum = 0.0;
  for (std::size_t i = 1; i < path.size(); ++i) {
    const double d = AngleDiff(path[i].theta, path[i - 1].theta);
    sum += d * d;
  }
  return sum;
}

}  // namespace agv
