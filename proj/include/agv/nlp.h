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

#ifndef AGV_NLP_H_
#define AGV_NLP_H_

#include <array>
#include <span>
#include <vector>

#include "agv/agv_model.h"

namespace agv {

// Diagonal weights of the horizon cost: Q on the pose residual, R on the
// input residual, S on input increments.
struct CostWeights {
  std::array<double, 3> q = {1.0, 1.0, 0.01};
  std::array<double, 2> r = {0.5, 0.023};
  std::array<double, 2> s = {0.1, 0.05};
};

// One finite-horizon tracking problem. States are eliminated by rolling the
// Euler model forward, so the decision variables are the H input pairs.
//
// Cost = sum_{i=1..H} (r_i - z_i)' Q (r_i - z_i)
//      + sum_{i=0..H-1} (u_ref_i - u_i)' R (u_ref_i - u_i)
//                      + (u_i - u_{i-1})' S (u_i - u_{i-1}),
// with u_{-1} = u_prev and the heading residual taken as the wrapped
// difference. The terminal state carries the same weight Q.
struct HorizonProblem {
  Pose initial;
  std::vector<Pose> ref_states;           // r_1 .. r_H
  std::vector<VelocityState> ref_inputs;  // u_ref_0 .. u_ref_{H-1}
  std::vector<double> dt;                 // step durations, size H
  CostWeights weights;
  VelocityLimits limits;
  VelocityState u_prev;

  int horizon() const { return static_cast<int>(dt.size()); }

  // Throws std::invalid_argument on inconsistent sizes, H < 1, a
  // non-positive step or a non-positive weight.
  void Validate() const;
};

struct HorizonSolution {
  std::vector<Pose> states;           // z*_1 .. z*_H
  std::vector<VelocityState> inputs;  // u*_0 .. u*_{H-1}
  double cost = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct SolverOptions {
  // Stop when the projected-gradient norm falls below
  // tolerance * max(1, cost); above unit cost an absolute threshold sits
  // under the rounding floor of the cost evaluation.
  double tolerance = 1e-6;
  int max_iterations = 500;
  double armijo_slope = 1e-4;
  double backtrack = 0.5;
};

std::vector<Pose> Rollout(const Pose& initial,
                          std::span<const VelocityState> inputs,
                          std::span<const double> dt);

double EvaluateCost(const HorizonProblem& problem,
                    std::span<const VelocityState> inputs);

// Cost plus its analytic gradient (adjoint sweep through the rollout).
// `gradient` is resized to 2H and laid out as [v_0, w_0, v_1, w_1, ...].
double EvaluateCostAndGradient(const HorizonProblem& problem,
                               std::span<const VelocityState> inputs,
                               std::vector<double>* gradient);

// Projected gradient descent with Barzilai-Borwein trial steps and Armijo
// backtracking along the projection arc. The guess is projected onto the
// admissible set first; every accepted iterate lowers the cost. When the
// iteration budget runs out the best iterate is returned with
// converged == false.
HorizonSolution Solve(const HorizonProblem& problem,
                      std::span<const VelocityState> initial_guess,
                      const SolverOptions& options = {});

}  // namespace agv

#endif  // AGV_NLP_H_
