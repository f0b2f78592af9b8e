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
#include <limits>
#include <random>

#include "agv/nlp.h"

namespace agv {
namespace {

HorizonProblem RolloutProblem(const std::vector<VelocityState>& inputs, double dt) {
  HorizonProblem p;
  p.initial = {0.5, -0.2, 0.3};
  p.dt.assign(inputs.size(), dt);
  p.ref_states = Rollout(p.initial, inputs, p.dt);
  p.ref_inputs = inputs;
  p.u_prev = inputs.front();
  return p;
}

TEST(EvaluateCostTest, ZeroOnOwnRollout) {
  const std::vector<VelocityState> u = {{0.2, 0.1}, {0.2, 0.1}, {0.2, 0.1}};
  const HorizonProblem p = RolloutProblem(u, 0.05);
  EXPECT_EQ(EvaluateCost(p, u), 0.0);
}

TEST(EvaluateCostTest, SingleStateTerm) {
  HorizonProblem p;
  p.ref_states = {{1, 0, 0}};
  p.ref_inputs = {{0, 0}};
  p.dt = {0.1};
  const std::vector<VelocityState> u = {{0, 0}};
  EXPECT_DOUBLE_EQ(EvaluateCost(p, u), 1.0);
}

TEST(EvaluateCostTest, LinearInStateWeights) {
  HorizonProblem p;
  p.ref_states = {{1, 0.5, 0.3}, {1.2, 0.7, 0.1}};
  p.ref_inputs = {{0.3, 0.1}, {0.3, 0.1}};
  p.dt = {0.1, 0.1};
  const std::vector<VelocityState> u = {{0.3, 0.1}, {0.3, 0.1}};
  p.u_prev = u[0];
  const double base = EvaluateCost(p, u);
  for (double& q : p.weights.q) q *= 2;
  EXPECT_NEAR(EvaluateCost(p, u), 2 * base, 1e-14);
}

TEST(EvaluateCostTest, HeadingResidualIsWrapped) {
  HorizonProblem p;
  p.initial = {0, 0, kPi - 0.01};
  p.ref_states = {{0, 0, -kPi + 0.01}};
  p.ref_inputs = {{0, 0}};
  p.dt = {0.1};
  const std::vector<VelocityState> u = {{0, 0}};
  EXPECT_NEAR(EvaluateCost(p, u), 0.01 * 0.02 * 0.02, 1e-15);
}

TEST(RolloutTest, SatisfiesEulerRecursion) {
  const std::vector<VelocityState> u = {{0.3, 0.2}, {0.1, -0.3}};
  const std::vector<double> dt = {0.05, 0.07};
  const Pose z0{1, 2, 3};
  const std::vector<Pose> z = Rollout(z0, u, dt);
  Pose expect = PropagateKinematics(z0, u[0], dt[0]);
  EXPECT_NEAR(z[0].x, expect.x, 1e-15);
  expect = PropagateKinematics(expect, u[1], dt[1]);
  EXPECT_NEAR(z[1].y, expect.y, 1e-15);
  EXPECT_NEAR(z[1].theta, expect.theta, 1e-15);
}

HorizonProblem RandomProblem(int h, std::mt19937* rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  HorizonProblem p;
  p.initial = {u(*rng), u(*rng), 3 * u(*rng)};
  p.u_prev = {0.2 + 0.2 * u(*rng), 0.4 * u(*rng)};
  for (int i = 0; i < h; ++i) {
    p.dt.push_back(0.05 + 0.02 * u(*rng));
    p.ref_states.push_back({u(*rng), u(*rng), 3 * u(*rng)});
    p.ref_inputs.push_back({0.2 + 0.2 * u(*rng), 0.4 * u(*rng)});
  }
  return p;
}

TEST(GradientTest, MatchesCentralDifferences) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const HorizonProblem p = RandomProblem(1 + trial % 20, &rng);
    std::vector<VelocityState> x(p.horizon());
    for (auto& xi : x) xi = {0.2 + 0.2 * u(rng), 0.4 * u(rng)};
    std::vector<double> g;
    const double f = EvaluateCostAndGradient(p, x, &g);
    EXPECT_NEAR(f, EvaluateCost(p, x), 1e-12 * std::max(1.0, f));
    double num = 0, den = 0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      auto a = x, b = x;
      (k % 2 ? a[k / 2].w : a[k / 2].v) += 1e-6;
      (k % 2 ? b[k / 2].w : b[k / 2].v) -= 1e-6;
      const double fd = (EvaluateCost(p, a) - EvaluateCost(p, b)) / 2e-6;
      num += (g[k] - fd) * (g[k] - fd);
      den += fd * fd;
    }
    EXPECT_LE(std::sqrt(num / den), 1e-5) << "trial " << trial;
  }
}

TEST(SolveTest, StraightLineReference) {
  const std::vector<VelocityState> ref(20, VelocityState{0.4, 0.0});
  HorizonProblem p = RolloutProblem(ref, 0.05);
  p.initial.theta = 0.0;
  p.ref_states = Rollout(p.initial, ref, p.dt);
  const HorizonSolution s = Solve(p, ref, SolverOptions{});
  EXPECT_TRUE(s.converged);
  EXPECT_LE(s.cost, 1e-6);
  for (const auto& u : s.inputs) {
    EXPECT_NEAR(u.v, 0.4, 1e-3);
    EXPECT_NEAR(u.w, 0.0, 1e-3);
  }
}

TEST(SolveTest, StationaryGuessReturnedUnchanged) {
  const std::vector<VelocityState> u = {{0.1, 0.05}, {0.1, 0.05}, {0.1, 0.05}};
  const HorizonProblem p = RolloutProblem(u, 0.05);
  const HorizonSolution s = Solve(p, u, SolverOptions{});
  EXPECT_TRUE(s.converged);
  EXPECT_EQ(s.iterations, 0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    EXPECT_EQ(s.inputs[i].v, u[i].v);
    EXPECT_EQ(s.inputs[i].w, u[i].w);
  }
}

// Properties on random problems: feasibility, no worse than the projected
// guess, states equal the rollout of the inputs, and determinism.
TEST(SolveTest, RandomProblemProperties) {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    HorizonProblem p = RandomProblem(2 + trial % 19, &rng);
    std::vector<VelocityState> guess(p.horizon());
    for (auto& g : guess) g = {u(rng), u(rng)};
    std::vector<VelocityState> projected = guess;
    for (auto& g : projected) g = p.limits.Project(g);
    const HorizonSolution s = Solve(p, guess, SolverOptions{});
    EXPECT_LE(s.cost, EvaluateCost(p, projected) + 1e-12);
    for (const auto& x : s.inputs) {
      EXPECT_TRUE(p.limits.Contains(x, 1e-9));
      EXPECT_GE(x.v, -1e-9);
    }
    const std::vector<Pose> z = Rollout(p.initial, s.inputs, p.dt);
    for (std::size_t i = 0; i < z.size(); ++i) {
      EXPECT_NEAR(z[i].x, s.states[i].x, 1e-10);
      EXPECT_NEAR(z[i].theta, s.states[i].theta, 1e-10);
    }
    const HorizonSolution again = Solve(p, guess, SolverOptions{});
    EXPECT_EQ(again.cost, s.cost);
    EXPECT_EQ(again.iterations, s.iterations);
  }
}

// Two-step problems against exhaustive search over a 41-point grid per
// input coordinate. The solver may not be worse than the grid optimum by
// more than the cost change between neighbouring grid points.
TEST(SolveTest, MatchesGridSearchOnTwoStepProblems) {
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> u(-1, 1);
  const VelocityLimits lim;
  std::vector<VelocityState> grid;
  for (int a = 0; a <= 40; ++a)
    for (int b = 0; b <= 40; ++b) {
      const VelocityState x{0.01 * a, -0.4 + 0.02 * b};
      if (lim.Contains(x, 1e-12)) grid.push_back(x);
    }
  for (int trial = 0; trial < 10; ++trial) {
    HorizonProblem p;
    p.initial = {0, 0, u(rng)};
    p.u_prev = lim.Project({0.2 + 0.2 * u(rng), 0.2 * u(rng)});
    Pose z = p.initial;
    for (int i = 0; i < 2; ++i) {
      const VelocityState ui = lim.Project({0.2 + 0.2 * u(rng), 0.3 * u(rng)});
      p.dt.push_back(0.05);
      z = PropagateKinematics(z, ui, 0.05);
      p.ref_states.push_back({z.x + 0.03 * u(rng), z.y + 0.03 * u(rng), z.theta});
      p.ref_inputs.push_back(ui);
    }
    double best = std::numeric_limits<double>::infinity();
    std::vector<VelocityState> pair(2);
    for (const auto& a : grid)
      for (const auto& b : grid) {
        pair = {a, b};
        best = std::min(best, EvaluateCost(p, pair));
      }
    const HorizonSolution s = Solve(p, p.ref_inputs, SolverOptions{});
    EXPECT_TRUE(s.converged);
    // Cost change for one grid step in every coordinate bounds the gap.
    EXPECT_LE(s.cost, best + 1e-3) << "trial " << trial;
    EXPECT_LE(s.cost, best + 1e-12) << "continuous optimum beats the grid";
  }
}

TEST(SolveTest, ValidatesShapes) {
  HorizonProblem p;
  p.ref_states = {{0, 0, 0}};
  p.ref_inputs = {{0, 0}};
  p.dt = {0.0};
  const std::vector<VelocityState> g = {{0, 0}};
  EXPECT_THROW(Solve(p, g, SolverOptions{}), std::invalid_argument);
  p.dt = {0.1};
  const std::vector<VelocityState> wrong = {{0, 0}, {0, 0}};
  EXPECT_THROW(Solve(p, wrong, SolverOptions{}), std::invalid_argument);
}

}  // namespace
}  // namespace agv
