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


#ifndef AGV_TOOLS_SELFTEST_H_
#define AGV_TOOLS_SELFTEST_H_

#include <cstdint>
#include <string>
#include <vector>

namespace agv::selftest {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// sat_eps properties on `samples` random points per epsilon in {0.2, 0.01}.
CheckResult CheckSatEps(int samples, std::uint64_t seed);

// H = 2 horizon problems against exhaustive search on a 41-point grid per
// input coordinate, restricted to the admissible set.
CheckResult CheckNlpOracle(int instances, std::uint64_t seed);

// Analytic cost gradient against central differences.
CheckResult CheckGradient(int instances, std::uint64_t seed);

// Grid planner path length against breadth-first search on random grids of
// at most 12 x 12 cells.
CheckResult CheckAstarBfs(int grids, std::uint64_t seed);

std::vector<CheckResult> RunAll(std::uint64_t seed);

}  // namespace agv::selftest

#endif  // AGV_TOOLS_SELFTEST_H_
