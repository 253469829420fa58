//
// Copyright 2026 The plrvo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef PLRVO_TOOLS_CLI_H_
#define PLRVO_TOOLS_CLI_H_

#include <ostream>

#include "absl/status/status.h"

namespace plrvo {

// Exit codes of the command-line tool.
enum ExitCode {
  kExitOk = 0,
  kExitInput = 1,
  kExitNumerical = 2,
  kExitInfeasible = 3,
};

int ExitCodeFor(const absl::Status& status);

// Runs the tool with the given arguments, writing to `out` and `err` instead
// of the process streams.
int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err);

}  // namespace plrvo

#endif  // PLRVO_TOOLS_CLI_H_
