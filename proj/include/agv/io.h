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


#ifndef AGV_IO_H_
#define AGV_IO_H_

#include <string>
#include <vector>

#include "agv/planner.h"
#include "agv/scenario.h"
#include "agv/sim.h"

namespace agv {

// 9 significant digits, "%.9g".
std::string FormatNumber(double value);

// Writes `content` to a temporary sibling and renames it over `path`, so a
// reader never sees a partial file. Throws std::runtime_error on failure.
void WriteFileAtomic(const std::string& path, const std::string& content);

// i, x, y, theta, v_ref, w_ref, t
std::string TrajectoryCsv(const ReferenceTrajectory& trajectory);
// Kinematic-level log, one row per low-rate tick.
std::string RunCsv(const RunLog& log);
// t, v, w, v_r, w_r, xi_hat_v, xi_hat_w, u_v, u_w, T_r, T_l
std::string DynamicCsv(const RunLog& log);
// metric, value
std::string MetricsCsv(const Metrics& metrics);
// Table I layout: scheme, e_max, e_mean, e_rmse plus solver columns.
std::string CompareCsv(const std::vector<SchemeResult>& schemes);
std::string Summary(const ScenarioConfig& config, const Metrics& metrics);

// Static figure: grid path, reference and driven path in the plane, and
// the velocity traces when a log is given.
std::string PlotSvg(const PlanResult& plan, const ReferenceTrajectory& reference,
                    const RunLog* log);

}  // namespace agv

#endif  // AGV_IO_H_
