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


#ifndef AGV_RESO_H_
#define AGV_RESO_H_

#include "agv/agv_model.h"

namespace agv {

// Smoothed unity saturation, odd, with a quadratic knee on [1, 1 + eps]
// that joins the identity and the plateau 1 + eps/2 with matching slope.
// Requires 0 < eps < 1.
double SatEps(double ell, double eps);

// Standard unity saturation sign(l) min(1, |l|).
double Sat(double ell);

struct ResoParams {
  double epsilon = 0.02;  // 0 < epsilon < 1
  double gain_l = 1.0;    // L > 0
  double b0 = 1.0;        // nominal input gain, sign = control direction
  double k = -5.0;        // feedback gain, K < 0
  double bound = 10.0;    // M, saturation bound of the command

  void Validate() const;
};

// First-order reduced-order observer plus saturated control law for one
// channel of eta' = b u + f:
//   sigma' = (L/eps)(eta - sigma) + b0 u,   xi_hat = (L/eps)(eta - sigma),
//   psi = (K (eta - rho) - xi_hat + rho') / b0,   u = M sat_eps(psi / M).
// The observer is stepped by forward Euler. Each Observe() advances sigma
// over the interval that just ended, using the eta sampled at its start and
// the input applied across it, then refreshes xi_hat from the new sample.
class ResoChannel {
 public:
  explicit ResoChannel(const ResoParams& params);

  // Throws StiffnessViolation when dt L / eps > 1. The first call only
  // initializes sigma = eta, so xi_hat starts at zero.
  double Observe(double eta, double applied_u, double dt);

  // Uses the xi_hat of the latest Observe().
  double Control(double eta, double reference, double reference_rate);

  void Reset();

  const ResoParams& params() const { return params_; }
  double sigma() const { return sigma_; }
  double xi_hat() const { return xi_hat_; }
  // Unsaturated psi of the latest Control() call.
  double last_psi() const { return last_psi_; }
  // Command of the latest Control() call.
  double last_command() const { return last_command_; }
  bool initialized() const { return initialized_; }

 private:
  ResoParams params_;
  bool initialized_ = false;
  double sigma_ = 0.0;
  double prev_eta_ = 0.0;
  double xi_hat_ = 0.0;
  double last_psi_ = 0.0;
  double last_command_ = 0.0;
};

// u_v is the torque sum and u_w the torque difference;
// T_r = (u_v + u_w) / 2 and T_l = (u_v - u_w) / 2.
struct DynamicCommand {
  double u_v = 0.0;
  double u_w = 0.0;
  WheelTorques torques;
};

DynamicCommand MakeDynamicCommand(double u_v, double u_w);

// Inverse map: (T_r + T_l, T_r - T_l).
void TorquesToChannels(const WheelTorques& torques, double* u_v, double* u_w);

// Observe both channels with their previous commands, then compute the new
// commands and recover wheel torques.
DynamicCommand DynamicStep(ResoChannel* v_channel, ResoChannel* w_channel,
                           const VelocityState& measured,
                           const VelocityState& reference,
                           const VelocityState& reference_rate, double dt);

// Holds the latest high-rate reference and the backward difference to the
// previous one, clamped to +-slew_limit per channel.
class ReferenceRateEstimator {
 public:
  ReferenceRateEstimator(double high_period, double slew_limit_v = 2.0,
                         double slew_limit_w = 2.0);

  void Update(const VelocityState& reference);

  const VelocityState& reference() const { return reference_; }
  const VelocityState& rate() const { return rate_; }

 private:
  double high_period_;
  double slew_limit_v_;
  double slew_limit_w_;
  bool has_sample_ = false;
  VelocityState reference_;
  VelocityState rate_;
};

struct FilteredPidGains {
  double kp = 12.74;
  double ki = 5.17;
  double kd = 0.88;
  double kn = 100.04;  // derivative filter coefficient
};

// Backward-Euler realization of kp + ki/s + kd kn / (1 + kn/s). The
// integral term is clamped to +-integral_limit; the first derivative sample
// uses a zero previous error.
class FilteredPid {
 public:
  FilteredPid(const FilteredPidGains& gains, double integral_limit);

  double Step(double error, double dt);
  void Reset();

 private:
  FilteredPidGains gains_;
  double integral_limit_;
  double integral_ = 0.0;
  double derivative_ = 0.0;
  double prev_error_ = 0.0;
};

DynamicCommand PidDynamicStep(FilteredPid* v_pid, FilteredPid* w_pid,
                              const VelocityState& measured,
                              const VelocityState& reference, double dt);

}  // namespace agv

#endif  // AGV_RESO_H_
