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


#include "agv/io.h"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace agv {

std::string FormatNumber(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

void WriteFileAtomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp =
      target.string() + ".tmp." + std::to_string(static_cast<long>(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot replace " + path + ": " + ec.message());
  }
}

namespace {

class Row {
 public:
  explicit Row(std::ostringstream* os) : os_(os) {}
  ~Row() { *os_ << '\n'; }
  Row& operator<<(double v) { return Put(FormatNumber(v)); }
  Row& operator<<(int v) { return Put(std::to_string(v)); }
  Row& operator<<(long v) { return Put(std::to_string(v)); }
  Row& operator<<(const std::string& v) { return Put(v); }

 private:
  Row& Put(const std::string& s) {
    if (!first_) *os_ << ',';
    first_ = false;
    *os_ << s;
    return *this;
  }
  std::ostringstream* os_;
  bool first_ = true;
};

}  // namespace

std::string TrajectoryCsv(const ReferenceTrajectory& trajectory) {
  std::ostringstream os;
  os << "i,x,y,theta,v_ref,w_ref,t\n";
  for (int i = 0; i < trajectory.size(); ++i) {
    const ReferencePoint& p = trajectory.points[i];
    Row(&os) << i << p.pose.x << p.pose.y << p.pose.theta << p.v << p.w << p.t;
  }
  return os.str();
}

std::string RunCsv(const RunLog& log) {
  std::ostringstream os;
  os << "t,high,x,y,theta,v,w,x_meas,y_meas,theta_meas,v_r,w_r,x_ref,y_ref,"
        "theta_ref\n";
  for (const RunRecord& r : log) {
    Row(&os) << r.t << (r.high ? 1 : 0) << r.truth.x << r.truth.y
             << r.truth.theta << r.velocity.v << r.velocity.w << r.measured.x
             << r.measured.y << r.measured.theta << r.command.v << r.command.w
             << r.reference.x << r.reference.y << r.reference.theta;
  }
  return os.str();
}

std::string DynamicCsv(const RunLog& log) {
  std::ostringstream os;
  os << "t,v,w,v_r,w_r,xi_hat_v,xi_hat_w,u_v,u_w,T_r,T_l\n";
  for (const RunRecord& r : log) {
    Row(&os) << r.t << r.velocity.v << r.velocity.w << r.command.v
             << r.command.w << r.xi_hat_v << r.xi_hat_w << r.u_v << r.u_w
             << r.torques.right << r.torques.left;
  }
  return os.str();
}

std::string MetricsCsv(const Metrics& m) {
  std::ostringstream os;
  os << "metric,value\n";
  auto put = [&os](const char* name, double v) {
    Row(&os) << std::string(name) << v;
  };
  put("e_max", m.e_max);
  put("e_mean", m.e_mean);
  put("e_rmse", m.e_rmse);
  put("rmse_v", m.rmse_v);
  put("rmse_w", m.rmse_w);
  put("saturation_fraction", m.saturation_fraction);
  put("psi_bound_exceeded", m.psi_bound_exceeded ? 1.0 : 0.0);
  put("wheel_overshoot", m.wheel_overshoot);
  put("xi_error_v", m.xi_error_v);
  put("xi_error_w", m.xi_error_w);
  put("max_command_violation", m.max_command_violation);
  put("max_reference_violation", m.max_reference_violation);
  put("solver_solves", m.solver_solves);
  put("solver_iterations_mean", m.solver_iterations_mean);
  put("solver_iterations_max", m.solver_iterations_max);
  put("smoothing_windows", m.smoothing_windows);
  put("smoothing_iterations_max", m.smoothing_iterations_max);
  put("duration", m.duration);
  put("goal_error", m.goal_error);
  put("goal_reached", m.goal_reached ? 1.0 : 0.0);
  put("timed_out", m.timed_out ? 1.0 : 0.0);
  return os.str();
}

std::string CompareCsv(const std::vector<SchemeResult>& schemes) {
  std::ostringstream os;
  os << "scheme,e_max,e_mean,e_rmse,solver_iterations_mean,"
        "solver_iterations_max,goal_reached\n";
  for (const SchemeResult& s : schemes) {
    const Metrics& m = s.metrics;
    Row(&os) << s.name << m.e_max << m.e_mean << m.e_rmse
             << m.solver_iterations_mean << m.solver_iterations_max
             << (m.goal_reached ? 1 : 0);
  }
  return os.str();
}

std::string Summary(const ScenarioConfig& config, const Metrics& m) {
  std::ostringstream os;
  os << "scenario: " << config.name << '\n'
     << "tracking: " << config.tracking << ", path: " << config.path_mode
     << ", dynamic: " << config.dynamic << '\n'
     << "mass x" << FormatNumber(config.mass_multiplier) << ", inertia x"
     << FormatNumber(config.inertia_multiplier) << ", seed " << config.seed
     << '\n'
     << "outcome: "
     << (m.goal_reached ? "goal reached" : m.timed_out ? "timed out" : "stopped")
     << " after " << FormatNumber(m.duration) << " s, final error "
     << FormatNumber(m.goal_error) << " m\n"
     << "position error [m]: max " << FormatNumber(m.e_max) << ", mean "
     << FormatNumber(m.e_mean) << ", rmse " << FormatNumber(m.e_rmse) << '\n'
     << "velocity rmse: v " << FormatNumber(m.rmse_v) << " m/s, w "
     << FormatNumber(m.rmse_w) << " rad/s\n"
     << "observer error: v " << FormatNumber(m.xi_error_v) << ", w "
     << FormatNumber(m.xi_error_w) << '\n'
     << "saturation active: " << FormatNumber(m.saturation_fraction)
     << (m.psi_bound_exceeded ? " (bound M exceeded)" : "") << '\n'
     << "wheel overshoot: " << FormatNumber(m.wheel_overshoot) << '\n'
     << "solver: " << m.solver_solves << " solves, mean "
     << FormatNumber(m.solver_iterations_mean) << ", max "
     << m.solver_iterations_max << " iterations\n";
  return os.str();
}

namespace {

struct Box {
  double x0 = std::numeric_limits<double>::infinity();
  double y0 = std::numeric_limits<double>::infinity();
  double x1 = -std::numeric_limits<double>::infinity();
  double y1 = -std::numeric_limits<double>::infinity();

  void Add(double x, double y) {
    x0 = std::min(x0, x);
    y0 = std::min(y0, y);
    x1 = std::max(x1, x);
    y1 = std::max(y1, y);
  }
};

// Maps data coordinates into a panel, y pointing up.
struct Panel {
  Box box;
  double left, top, width, height;

  double X(double x) const {
    return left + (x - box.x0) / std::max(box.x1 - box.x0, 1e-9) * width;
  }
  double Y(double y) const {
    return top + height -
           (y - box.y0) / std::max(box.y1 - box.y0, 1e-9) * height;
  }
};

template <typename It, typename F>
std::string Polyline(const Panel& p, It begin, It end, F xy,
                     const char* color, double stroke, const char* dash) {
  std::ostringstream os;
  os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
     << stroke << "\"";
  if (dash[0] != '\0') os << " stroke-dasharray=\"" << dash << "\"";
  os << " points=\"";
  for (It it = begin; it != end; ++it) {
    const auto [x, y] = xy(*it);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f,%.2f ", p.X(x), p.Y(y));
    os << buf;
  }
  os << "\"/>\n";
  return os.str();
}

std::string Label(double x, double y, const std::string& text) {
  std::ostringstream os;
  os << "<text x=\"" << x << "\" y=\"" << y
     << "\" font-family=\"sans-serif\" font-size=\"12\">" << text
     << "</text>\n";
  return os.str();
}

}  // namespace

std::string PlotSvg(const PlanResult& plan, const ReferenceTrajectory& reference,
                    const RunLog* log) {
  const double width = 900.0;
  const bool traces = log != nullptr && !log->empty();
  const double height = traces ? 820.0 : 520.0;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
     << "\" height=\"" << height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  Panel xy{{}, 50.0, 30.0, 800.0, 440.0};
  for (const Waypoint& w : plan.raw.points) xy.box.Add(w.x, w.y);
  for (const ReferencePoint& r : reference.points) xy.box.Add(r.pose.x, r.pose.y);
  if (traces) {
    for (const RunRecord& r : *log) xy.box.Add(r.truth.x, r.truth.y);
  }
  // Equal axis scale.
  const double sx = (xy.box.x1 - xy.box.x0) / xy.width;
  const double sy = (xy.box.y1 - xy.box.y0) / xy.height;
  const double s = std::max({sx, sy, 1e-9}) * 1.05;
  const double cx = 0.5 * (xy.box.x0 + xy.box.x1);
  const double cy = 0.5 * (xy.box.y0 + xy.box.y1);
  xy.box = {cx - 0.5 * s * xy.width, cy - 0.5 * s * xy.height,
            cx + 0.5 * s * xy.width, cy + 0.5 * s * xy.height};
  os << "<rect x=\"50\" y=\"30\" width=\"800\" height=\"440\" fill=\"none\" "
        "stroke=\"#999\"/>\n";
  os << Polyline(xy, plan.raw.points.begin(), plan.raw.points.end(),
                 [](const Waypoint& w) { return std::pair{w.x, w.y}; },
                 "#999", 1.0, "4,3");
  os << Polyline(xy, reference.points.begin(), reference.points.end(),
                 [](const ReferencePoint& r) {
                   return std::pair{r.pose.x, r.pose.y};
                 },
                 "#1f77b4", 1.5, "");
  if (traces) {
    os << Polyline(xy, log->begin(), log->end(),
                   [](const RunRecord& r) {
                     return std::pair{r.truth.x, r.truth.y};
                   },
                   "#d62728", 1.0, "");
  }
  os << Label(60, 22, "grid path (grey dashed), reference (blue), driven (red)");

  if (traces) {
    Panel vel{{}, 50.0, 520.0, 800.0, 260.0};
    for (const RunRecord& r : *log) {
      vel.box.Add(r.t, r.velocity.v);
      vel.box.Add(r.t, r.velocity.w);
      vel.box.Add(r.t, r.command.v);
      vel.box.Add(r.t, r.command.w);
    }
    os << "<rect x=\"50\" y=\"520\" width=\"800\" height=\"260\" "
          "fill=\"none\" stroke=\"#999\"/>\n";
    auto t_of = [](auto f) {
      return [f](const RunRecord& r) { return std::pair{r.t, f(r)}; };
    };
    os << Polyline(vel, log->begin(), log->end(),
                   t_of([](const RunRecord& r) { return r.command.v; }),
                   "#1f77b4", 1.0, "4,3");
    os << Polyline(vel, log->begin(), log->end(),
                   t_of([](const RunRecord& r) { return r.velocity.v; }),
                   "#1f77b4", 1.0, "");
    os << Polyline(vel, log->begin(), log->end(),
                   t_of([](const RunRecord& r) { return r.command.w; }),
                   "#ff7f0e", 1.0, "4,3");
    os << Polyline(vel, log->begin(), log->end(),
                   t_of([](const RunRecord& r) { return r.velocity.w; }),
                   "#ff7f0e", 1.0, "");
    os << Label(60, 512,
                "v (blue) and w (orange): command dashed, truth solid; t in [0, " +
                    FormatNumber(log->back().t) + "] s");
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace agv
