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


#ifndef AGV_TOOLS_CLI_H_
#define AGV_TOOLS_CLI_H_

#include <ostream>

namespace agv {

// Exit codes of the agvsim front end.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;  // bad arguments, config or failed check
inline constexpr int kExitFailure = 2;  // planning, solver or timeout failure

// Entry point shared by the executable, the tests and the Python module.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace agv

#endif  // AGV_TOOLS_CLI_H_
