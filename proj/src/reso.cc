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


#include "agv/reso.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "agv/errors.h"

namespace agv {

double SatEps(double ell, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw std::invalid_argument("SatEps: need 0 < eps < 1");
  }
  const double a = std::abs(ell);
  double out;
  if (a <= 1.0) {
    out = a;
  } else if (a <= 1.0 + eps) {
    const double d = a - 1.0;
    out = a - d * d / (2.0 * eps);
  } else {
    out = 1.0 + 0.5 * eps;
  }
  return std::signbit(ell) ? -out : out;
}

double Sat(double ell) { return std::clamp(ell, -1.0, 1.0); }

void ResoParams::Validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("RESO: epsilon must lie in (0, 1)");
  }
  if (!(gain_l > 0.0)) throw std::invalid_argument("RESO: L must be > 0");
  if (!(b0 != 0.0) || !std::isfinite(b0)) {
    throw std::invalid_argument("RESO: b0 must be nonzero");
  }
  if (!(k < 0.0)) throw std::invalid_argument("RESO: K must be < 0");
  if (!(bound > 0.0)) throw std::invalid_argument("RESO: M must be > 0");
}

ResoChannel::ResoChannel(const ResoParams& params) : params_(params) {
  params_.Validate();
}

double ResoChannel::Observe(double eta, double applied_u, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("RESO: dt must be > 0");
  const double rate = params_.gain_l / params_.epsilon;
  const double g = dt * rate;
  if (g > 1.0 + 1e-12) {
    throw StiffnessViolation("observer step dt*L/eps = " + std::to_string(g) +
                             " exceeds 1");
  }
  if (!initialized_) {
    initialized_ = true;
    sigma_ = eta;
  } else {
    sigma_ += dt * (rate * (prev_eta_ - sigma_) + params_.b0 * applied_u);
  }
  prev_eta_ = eta;
  xi_hat_ = rate * (eta - sigma_);
  return xi_hat_;
}

double ResoChannel::Control(double eta, double reference,
                            double reference_rate) {
  const ResoParams& p = params_;
  last_psi_ = (p.k * (eta - reference) - xi_hat_ + reference_rate) / p.b0;
  last_command_ = p.bound * SatEps(last_psi_ / p.bound, p.epsilon);
  return last_command_;
}

void ResoChannel::Reset() {
  initialized_ = false;
  sigma_ = prev_eta_ = xi_hat_ = last_psi_ = last_command_ = 0.0;
}

DynamicCommand MakeDynamicCommand(double u_v, double u_w) {
  DynamicCommand c;
  c.u_v = u_v;
  c.u_w = u_w;
  c.torques.right = 0.5 * (u_v + u_w);
  c.torques.left = 0.5 * (u_v - u_w);
  return c;
}

void TorquesToChannels(const WheelTorques& torques, double* u_v,
                       double* u_w) {
  *u_v = torques.right + torques.left;
  *u_w = torques.right - torques.left;
}

DynamicCommand DynamicStep(ResoChannel* v_channel, ResoChannel* w_channel,
                           const VelocityState& measured,
                           const VelocityState& reference,
                           const VelocityState& reference_rate, double dt) {
  v_channel->Observe(measured.v, v_channel->last_command(), dt);
  w_channel->Observe(measured.w, w_channel->last_command(), dt);
  const double u_v =
      v_channel->Control(measured.v, reference.v, reference_rate.v);
  const double u_w =
      w_channel->Control(measured.w, reference.w, reference_rate.w);
  return MakeDynamicCommand(u_v, u_w);
}

ReferenceRateEstimator::ReferenceRateEstimator(double high_period,
                                               double slew_limit_v,
                                               double slew_limit_w)
    : high_period_(high_period),
      slew_limit_v_(slew_limit_v),
      slew_limit_w_(slew_limit_w) {
  if (!(high_period_ > 0.0)) {
    throw std::invalid_argument("ReferenceRateEstimator: period must be > 0");
  }
  if (!(slew_limit_v_ >= 0.0 && slew_limit_w_ >= 0.0)) {
    throw std::invalid_argument("ReferenceRateEstimator: slew limits >= 0");
  }
}

void ReferenceRateEstimator::Update(const VelocityState& reference) {
  if (has_sample_) {
    rate_.v = std::clamp((reference.v - reference_.v) / high_period_,
                         -slew_limit_v_, slew_limit_v_);
    rate_.w = std::clamp((reference.w - reference_.w) / high_period_,
                         -slew_limit_w_, slew_limit_w_);
  }
  has_sample_ = true;
  reference_ = reference;
}

FilteredPid::FilteredPid(const FilteredPidGains& gains, double integral_limit)
    : gains_(gains), integral_limit_(integral_limit) {
  if (!(integral_limit_ >= 0.0)) {
    throw std::invalid_argument("FilteredPid: integral limit must be >= 0");
  }
  if (!(gains_.kn > 0.0)) {
    throw std::invalid_argument("FilteredPid: kn must be > 0");
  }
}

double FilteredPid::Step(double error, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("FilteredPid: dt must be > 0");
  integral_ = std::clamp(integral_ + gains_.ki * error * dt, -integral_limit_,
                         integral_limit_);
  derivative_ = (derivative_ + gains_.kd * gains_.kn * (error - prev_error_)) /
                (1.0 + gains_.kn * dt);
  prev_error_ = error;
  return gains_.kp * error + integral_ + derivative_;
}

void FilteredPid::Reset() { integral_ = derivative_ = prev_error_ = 0.0; }

DynamicCommand PidDynamicStep(FilteredPid* v_pid, FilteredPid* w_pid,
                              const VelocityState& measured,
                              const VelocityState& reference, double dt) {
  const double u_v = v_pid->Step(reference.v - measured.v, dt);
  const double u_w = w_pid->Step(reference.w - measured.w, dt);
  return MakeDynamicCommand(u_v, u_w);
}

}  // namespace agv
