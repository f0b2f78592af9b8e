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

#include "agv/nlp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace agv {

void HorizonProblem::Validate() const {
  const std::size_t h = dt.size();
  if (h < 1) throw std::invalid_argument("HorizonProblem: horizon must be >= 1");
  if (ref_states.size() != h || ref_inputs.size() != h) {
    throw std::invalid_argument(
        "HorizonProblem: ref_states, ref_inputs and dt must all have H "
        "entries");
  }
  for (double step : dt) {
    if (!(step > 0.0)) {
      throw std::invalid_argument("HorizonProblem: step durations must be > 0");
    }
  }
  for (double q : weights.q) {
    if (!(q > 0.0)) throw std::invalid_argument("HorizonProblem: Q must be > 0");
  }
  for (int k = 0; k < 2; ++k) {
    if (!(weights.r[k] > 0.0) || !(weights.s[k] > 0.0)) {
      throw std::invalid_argument("HorizonProblem: R and S must be > 0");
    }
  }
}

std::vector<Pose> Rollout(const Pose& initial,
                          std::span<const VelocityState> inputs,
                          std::span<const double> dt) {
  std::vector<Pose> states;
  states.reserve(inputs.size());
  Pose z = initial;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    z = PropagateKinematics(z, inputs[i], dt[i]);
    states.push_back(z);
  }
  return states;
}

namespace {

void CheckInputs(const HorizonProblem& problem,
                 std::span<const VelocityState> inputs) {
  if (static_cast<int>(inputs.size()) != problem.horizon()) {
    throw std::invalid_argument("horizon cost: expected H input pairs");
  }
}

double InputCost(const HorizonProblem& problem,
                 std::span<const VelocityState> inputs) {
  const CostWeights& w = problem.weights;
  double cost = 0.0;
  VelocityState previous = problem.u_prev;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const double ev = problem.ref_inputs[i].v - inputs[i].v;
    const double ew = problem.ref_inputs[i].w - inputs[i].w;
    const double dv = inputs[i].v - previous.v;
    const double dw = inputs[i].w - previous.w;
    cost += w.r[0] * ev * ev + w.r[1] * ew * ew + w.s[0] * dv * dv +
            w.s[1] * dw * dw;
    previous = inputs[i];
  }
  return cost;
}

}  // namespace

double EvaluateCost(const HorizonProblem& problem,
                    std::span<const VelocityState> inputs) {
  CheckInputs(problem, inputs);
  const auto& q = problem.weights.q;
  const std::vector<Pose> states = Rollout(problem.initial, inputs, problem.dt);
  double cost = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const Pose& r = problem.ref_states[i];
    const double ex = r.x - states[i].x;
    const double ey = r.y - states[i].y;
    const double et = AngleDiff(r.theta, states[i].theta);
    cost += q[0] * ex * ex + q[1] * ey * ey + q[2] * et * et;
  }
  return cost + InputCost(problem, inputs);
}

double EvaluateCostAndGradient(const HorizonProblem& problem,
                               std::span<const VelocityState> inputs,
                               std::vector<double>* gradient) {
  CheckInputs(problem, inputs);
  const int h = problem.horizon();
  const auto& wts = problem.weights;
  gradient->assign(2 * h, 0.0);

  // Forward pass; states[i] is z_i for i = 0..H.
  std::vector<Pose> states(h + 1);
  states[0] = problem.initial;
  for (int i = 0; i < h; ++i) {
    states[i + 1] = PropagateKinematics(states[i], inputs[i], problem.dt[i]);
  }

  double cost = 0.0;
  // Adjoint of z_{i+1}, accumulated backwards.
  double lx = 0.0, ly = 0.0, lt = 0.0;
  for (int i = h - 1; i >= 0; --i) {
    const Pose& z = states[i + 1];
    const Pose& r = problem.ref_states[i];
    const double ex = r.x - z.x;
    const double ey = r.y - z.y;
    const double et = AngleDiff(r.theta, z.theta);
    cost += wts.q[0] * ex * ex + wts.q[1] * ey * ey + wts.q[2] * et * et;
    lx += -2.0 * wts.q[0] * ex;
    ly += -2.0 * wts.q[1] * ey;
    lt += -2.0 * wts.q[2] * et;

    const double step = problem.dt[i];
    const double c = std::cos(states[i].theta);
    const double s = std::sin(states[i].theta);
    (*gradient)[2 * i] += (lx * c + ly * s) * step;
    (*gradient)[2 * i + 1] += lt * step;

    // Propagate the adjoint through z_{i+1} = f(z_i, u_i).
    lt += (-lx * s + ly * c) * inputs[i].v * step;
  }

  VelocityState previous = problem.u_prev;
  for (int i = 0; i < h; ++i) {
    const double ev = problem.ref_inputs[i].v - inputs[i].v;
    const double ew = problem.ref_inputs[i].w - inputs[i].w;
    const double dv = inputs[i].v - previous.v;
    const double dw = inputs[i].w - previous.w;
    cost += wts.r[0] * ev * ev + wts.r[1] * ew * ew + wts.s[0] * dv * dv +
            wts.s[1] * dw * dw;
    (*gradient)[2 * i] += -2.0 * wts.r[0] * ev + 2.0 * wts.s[0] * dv;
    (*gradient)[2 * i + 1] += -2.0 * wts.r[1] * ew + 2.0 * wts.s[1] * dw;
    if (i > 0) {
      (*gradient)[2 * (i - 1)] -= 2.0 * wts.s[0] * dv;
      (*gradient)[2 * (i - 1) + 1] -= 2.0 * wts.s[1] * dw;
    }
    previous = inputs[i];
  }
  return cost;
}

namespace {

void ProjectStep(const HorizonProblem& problem,
                 const std::vector<VelocityState>& x,
                 const std::vector<double>& g, double alpha,
                 std::vector<VelocityState>* out) {
  out->resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    (*out)[i] = problem.limits.Project(
        {x[i].v - alpha * g[2 * i], x[i].w - alpha * g[2 * i + 1]});
  }
}

double ProjectedGradientNorm(const HorizonProblem& problem,
                             const std::vector<VelocityState>& x,
                             const std::vector<double>& g) {
  std::vector<VelocityState> trial;
  ProjectStep(problem, x, g, 1.0, &trial);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dv = trial[i].v - x[i].v;
    const double dw = trial[i].w - x[i].w;
    norm2 += dv * dv + dw * dw;
  }
  return std::sqrt(norm2);
}

}  // namespace

HorizonSolution Solve(const HorizonProblem& problem,
                      std::span<const VelocityState> initial_guess,
                      const SolverOptions& options) {
  problem.Validate();
  if (static_cast<int>(initial_guess.size()) != problem.horizon()) {
    throw std::invalid_argument("Solve: initial guess must have H entries");
  }
  constexpr double kMinStep = 1e-12;
  constexpr double kMaxStep = 1e6;
  constexpr int kMaxBacktracks = 60;

  std::vector<VelocityState> x(initial_guess.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = problem.limits.Project(initial_guess[i]);
  }
  std::vector<double> g;
  double f = EvaluateCostAndGradient(problem, x, &g);

  HorizonSolution solution;
  std::vector<VelocityState> trial;
  std::vector<double> trial_g;
  double step = 1.0;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    if (ProjectedGradientNorm(problem, x, g) <
        options.tolerance * std::max(1.0, f)) {
      solution.converged = true;
      break;
    }
    double alpha = step;
    bool accepted = false;
    double trial_f = f;
    for (int bt = 0; bt < kMaxBacktracks; ++bt) {
      ProjectStep(problem, x, g, alpha, &trial);
      double slope = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        slope += g[2 * i] * (trial[i].v - x[i].v) +
                 g[2 * i + 1] * (trial[i].w - x[i].w);
      }
      trial_f = EvaluateCost(problem, trial);
      if (trial_f <= f + options.armijo_slope * slope) {
        accepted = true;
        break;
      }
      alpha *= options.backtrack;
    }
    if (!accepted) break;  // no descent possible at machine precision

    EvaluateCostAndGradient(problem, trial, &trial_g);
    double ss = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double sv = trial[i].v - x[i].v;
      const double sw = trial[i].w - x[i].w;
      ss += sv * sv + sw * sw;
      sy += sv * (trial_g[2 * i] - g[2 * i]) +
            sw * (trial_g[2 * i + 1] - g[2 * i + 1]);
    }
    step = sy > 0.0 ? std::clamp(ss / sy, kMinStep, kMaxStep) : kMaxStep;
    x.swap(trial);
    g.swap(trial_g);
    f = trial_f;
  }
  if (!solution.converged && it == options.max_iterations &&
      ProjectedGradientNorm(problem, x, g) <
          options.tolerance * std::max(1.0, f)) {
    solution.converged = true;
  }
  solution.iterations = it;
  solution.cost = f;
  solution.inputs = x;
  solution.states = Rollout(problem.initial, x, problem.dt);
  return solution;
}

}  // namespace agv
