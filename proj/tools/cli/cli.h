// Copyright 2026 The Onesided Authors
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

#ifndef ONESIDED_TOOLS_CLI_CLI_H_
#define ONESIDED_TOOLS_CLI_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace onesided::cli {

// Exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParameter = 2;
inline constexpr int kExitIo = 3;

// Relative output paths are resolved against this directory when set.
inline constexpr char kOutputDirEnv[] = "ONESIDED_OUTPUT_DIR";

// Runs one subcommand. `args` excludes the program name, e.g.
// {"solve", "--family", "geometric", "--epsilon", "0.5", "--delta", "1e-6"}.
// Results go to `out` (or to --output files); diagnostics to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace onesided::cli

#endif  // ONESIDED_TOOLS_CLI_CLI_H_
