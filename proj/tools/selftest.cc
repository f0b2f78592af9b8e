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


#include "selftest.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <random>
#include <string>

#include "agv/agv_model.h"
#include "agv/errors.h"
#include "agv/nlp.h"
#include "agv/reso.h"
#include "agv/world.h"

namespace agv::selftest {
namespace {

std::string Fmt(const char* format, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

// Reference values written out branch by branch, independent of SatEps.
double SatEpsOracle(double x, double eps) {
  const double a = std::abs(x);
  double y;
  if (a <= 1.0) {
    y = a;
  } else if (a < 1.0 + eps) {
    y = 1.0 + eps / 2.0 - (1.0 + eps - a) * (1.0 + eps - a) / (2.0 * eps);
  } else {
    y = 1.0 + eps / 2.0;
  }
  return x < 0.0 ? -y : y;
}

}  // namespace

CheckResult CheckSatEps(int samples, std::uint64_t seed) {
  CheckResult result{"sat_eps properties", true, ""};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  double worst_odd = 0.0, worst_cont = 0.0, worst_gap = 0.0;
  double worst_oracle = 0.0, min_slope = 1.0, max_slope = 0.0;
  for (double eps : {0.2, 0.01}) {
    for (double knot : {1.0, 1.0 + eps}) {
      for (double sign : {1.0, -1.0}) {
        const double k = sign * knot;
        const double left = SatEps(std::nextafter(k, -10.0), eps);
        const double right = SatEps(std::nextafter(k, 10.0), eps);
        worst_cont = std::max(worst_cont, std::abs(left - right));
      }
    }
    const double h = 1e-7;
    for (int i = 0; i < samples; ++i) {
      const double x = dist(rng);
      const double y = SatEps(x, eps);
      worst_odd = std::max(worst_odd, std::abs(y + SatEps(-x, eps)));
      worst_gap = std::max(worst_gap, std::abs(y - Sat(x)) - eps / 2.0);
      worst_oracle = std::max(worst_oracle, std::abs(y - SatEpsOracle(x, eps)));
      const double slope = (SatEps(x + h, eps) - SatEps(x - h, eps)) / (2 * h);
      min_slope = std::min(min_slope, slope);
      max_slope = std::max(max_slope, slope);
    }
  }
  result.passed = worst_odd <= 1e-15 && worst_cont <= 1e-12 &&
                  worst_gap <= 1e-15 && worst_oracle <= 1e-12 &&
                  min_slope >= -1e-6 && max_slope <= 1.0 + 1e-6;
  result.detail =
      Fmt("odd %.1e, jump %.1e, ", worst_odd, worst_cont) +
      Fmt("|sat_eps - sat| - eps/2 %.1e, slope [%.6f, %.6f]", worst_gap,
          min_slope, max_slope);
  return result;
}

namespace {

HorizonProblem RandomProblem(int h, std::mt19937_64* rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(*rng); };
  HorizonProblem p;
  p.limits = VelocityLimits(0.4, 0.4, 0.25, 4.0);
  p.initial = {uniform(-1, 1), uniform(-1, 1), uniform(-M_PI, M_PI)};
  p.u_prev = p.limits.Project({uniform(0, 0.4), uniform(-0.4, 0.4)});
  Pose z = p.initial;
  for (int i = 0; i < h; ++i) {
    const double step = uniform(0.02, 0.1);
    const VelocityState u =
        p.limits.Project({uniform(0, 0.4), uniform(-0.4, 0.4)});
    z = PropagateKinematics(z, u, step);
    Pose r = {z.x + uniform(-0.05, 0.05), z.y + uniform(-0.05, 0.05),
              WrapAngle(z.theta + uniform(-0.2, 0.2))};
    p.dt.push_back(step);
    p.ref_states.push_back(r);
    p.ref_inputs.push_back(
        p.limits.Project({u.v + uniform(-0.1, 0.1), u.w + uniform(-0.1, 0.1)}));
  }
  return p;
}

}  // namespace

CheckResult CheckNlpOracle(int instances, std::uint64_t seed) {
  CheckResult result{"NLP vs grid oracle", true, ""};
  std::mt19937_64 rng(seed);
  constexpr int kN = 41;
  const double v_step = 0.4 / (kN - 1);
  const double w_step = 0.8 / (kN - 1);
  std::vector<VelocityState> grid;
  std::vector<int> grid_index(kN * kN, -1);
  for (int a = 0; a < kN; ++a) {
    for (int b = 0; b < kN; ++b) {
      const VelocityState u{a * v_step, -0.4 + b * w_step};
      if (std::abs(u.v) + 1.0 * std::abs(u.w) <= 0.4 + 1e-12) {
        grid_index[a * kN + b] = static_cast<int>(grid.size());
        grid.push_back(u);
      }
    }
  }
  int failures = 0;
  double worst_excess = -std::numeric_limits<double>::infinity();
  double largest_gap = 0.0;
  for (int n = 0; n < instances; ++n) {
    const HorizonProblem p = RandomProblem(2, &rng);
    double best = std::numeric_limits<double>::infinity();
    int best_i = 0, best_j = 0;
    std::vector<VelocityState> pair(2);
    for (int i = 0; i < static_cast<int>(grid.size()); ++i) {
      for (int j = 0; j < static_cast<int>(grid.size()); ++j) {
        pair[0] = grid[i];
        pair[1] = grid[j];
        const double f = EvaluateCost(p, pair);
        if (f < best) {
          best = f;
          best_i = i;
          best_j = j;
        }
      }
    }
    // Resolution gap: largest cost change to an admissible axis neighbour
    // of the grid minimiser.
    double gap = 0.0;
    auto coords = [&](const VelocityState& u) {
      return std::pair{static_cast<int>(std::lround(u.v / v_step)),
                       static_cast<int>(std::lround((u.w + 0.4) / w_step))};
    };
    for (int which = 0; which < 2; ++which) {
      const auto [a, b] = coords(grid[which == 0 ? best_i : best_j]);
      const int moves[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
      for (const auto& m : moves) {
        const int aa = a + m[0], bb = b + m[1];
        if (aa < 0 || bb < 0 || aa >= kN || bb >= kN) continue;
        const int idx = grid_index[aa * kN + bb];
        if (idx < 0) continue;
        pair[0] = grid[best_i];
        pair[1] = grid[best_j];
        pair[which] = grid[idx];
        gap = std::max(gap, std::abs(EvaluateCost(p, pair) - best));
      }
    }
    const HorizonSolution s = Solve(p, p.ref_inputs, SolverOptions{});
    const double excess = s.cost - best;
    worst_excess = std::max(worst_excess, excess);
    largest_gap = std::max(largest_gap, gap);
    if (!s.converged || excess > gap) ++failures;
  }
  result.passed = failures == 0;
  result.detail = Fmt("%.0f/%.0f instances outside the gap; ", failures,
                      instances) +
                  Fmt("worst solver - oracle %.3e, largest gap %.3e",
                      worst_excess, largest_gap);
  return result;
}

CheckResult CheckGradient(int instances, std::uint64_t seed) {
  CheckResult result{"cost gradient vs finite differences", true, ""};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> horizon(1, 20);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int n = 0; n < instances; ++n) {
    const HorizonProblem p = RandomProblem(horizon(rng), &rng);
    std::vector<VelocityState> u(p.horizon());
    for (auto& x : u) x = p.limits.Project({0.4 * unit(rng), 0.8 * unit(rng) - 0.4});
    std::vector<double> g;
    EvaluateCostAndGradient(p, u, &g);
    std::vector<double> fd(g.size());
    const double h = 1e-6;
    for (std::size_t k = 0; k < g.size(); ++k) {
      auto plus = u, minus = u;
      double& cp = (k % 2 == 0) ? plus[k / 2].v : plus[k / 2].w;
      double& cm = (k % 2 == 0) ? minus[k / 2].v : minus[k / 2].w;
      cp += h;
      cm -= h;
      fd[k] = (EvaluateCost(p, plus) - EvaluateCost(p, minus)) / (2 * h);
    }
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      num += (g[k] - fd[k]) * (g[k] - fd[k]);
      den += fd[k] * fd[k];
    }
    worst = std::max(worst, std::sqrt(num) / std::max(std::sqrt(den), 1e-8));
  }
  result.passed = worst <= 1e-5;
  result.detail = Fmt("worst relative error %.3e over %.0f instances", worst,
                      instances);
  return result;
}

namespace {

// Step count of the shortest 4-connected route, -1 when unreachable.
int BfsSteps(const GridMap& map, const Cell& start, const Cell& goal) {
  std::vector<int> dist(map.width() * map.height(), -1);
  std::deque<Cell> queue{start};
  dist[map.Index(start)] = 0;
  while (!queue.empty()) {
    const Cell c = queue.front();
    queue.pop_front();
    if (c == goal) return dist[map.Index(c)];
    const Cell next[4] = {{c.ix + 1, c.iy}, {c.ix - 1, c.iy},
                          {c.ix, c.iy + 1}, {c.ix, c.iy - 1}};
    for (const Cell& n : next) {
      if (!map.InBounds(n) || map.Occupied(n) || dist[map.Index(n)] >= 0) {
        continue;
      }
      dist[map.Index(n)] = dist[map.Index(c)] + 1;
      queue.push_back(n);
    }
  }
  return -1;
}

}  // namespace

CheckResult CheckAstarBfs(int grids, std::uint64_t seed) {
  CheckResult result{"A* vs BFS", true, ""};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> size(2, 12);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int mismatches = 0, unreachable = 0;
  for (int n = 0; n < grids; ++n) {
    const int w = size(rng), h = size(rng);
    GridMap map(w, h, 0.1);
    const double density = 0.35 * unit(rng);
    for (int iy = 0; iy < h; ++iy) {
      for (int ix = 0; ix < w; ++ix) map.SetOccupied({ix, iy}, unit(rng) < density);
    }
    std::uniform_int_distribution<int> cx(0, w - 1), cy(0, h - 1);
    const Cell start{cx(rng), cy(rng)};
    const Cell goal{cx(rng), cy(rng)};
    map.SetOccupied(start, false);
    map.SetOccupied(goal, false);
    const int steps = BfsSteps(map, start, goal);
    try {
      const GlobalPath path =
          PlanGlobalPath(map, map.CellToWorld(start), map.CellToWorld(goal));
      const double cells = path.Length() / map.resolution();
      if (steps < 0 || std::abs(cells - steps) > 1e-9) ++mismatches;
    } catch (const NoPathError&) {
      if (steps >= 0) ++mismatches;
      ++unreachable;
    }
  }
  result.passed = mismatches == 0;
  result.detail = Fmt("%.0f mismatches on %.0f grids (%.0f unreachable)",
                      mismatches, grids, unreachable);
  return result;
}

std::vector<CheckResult> RunAll(std::uint64_t seed) {
  return {CheckSatEps(1000000, seed), CheckNlpOracle(50, seed + 1),
          CheckGradient(100, seed + 2), CheckAstarBfs(200, seed + 3)};
}

}  // namespace agv::selftest
