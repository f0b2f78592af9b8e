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

#ifndef AGV_ERRORS_H_
#define AGV_ERRORS_H_

#include <stdexcept>
#include <string>

namespace agv {

// Base class for every failure raised by the library. Precondition
// violations on plain arguments use std::invalid_argument instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NoPathError : public Error {
 public:
  using Error::Error;
};

class OutOfBoundsError : public Error {
 public:
  using Error::Error;
};

class DegeneratePathError : public Error {
 public:
  using Error::Error;
};

class RankDeficientError : public Error {
 public:
  using Error::Error;
};

class StiffnessViolation : public Error {
 public:
  using Error::Error;
};

class PlanningFailure : public Error {
 public:
  using Error::Error;
};

// Raised when a horizon solve fails to converge inside a pipeline stage.
// `window` is the index of the failing window (smoothing) or the tracker
// tick at which the failure happened.
class SolverFailure : public Error {
 public:
  SolverFailure(const std::string& stage, int window)
      : Error(stage + ": horizon solve did not converge at window " +
              std::to_string(window)),
        stage_(stage),
        window_(window) {}

  const std::string& stage() const { return stage_; }
  int window() const { return window_; }

 private:
  std::string stage_;
  int window_;
};

// Scenario file or override problem. `key` is the dotted key path, `line`
// the 1-based source line (0 when the value came from the command line).
class ConfigError : public Error {
 public:
  ConfigError(const std::string& key, int line, const std::string& what)
      : Error(Format(key, line, what)), key_(key), line_(line) {}

  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  static std::string Format(const std::string& key, int line,
                            const std::string& what) {
    std::string out = key.empty() ? std::string("config") : key;
    if (line > 0) out += " (line " + std::to_string(line) + ")";
    return out + ": " + what;
  }

  std::string key_;
  int line_;
};

}  // namespace agv

#endif  // AGV_ERRORS_H_
