// Copyright 2026 The aqored Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AQORED_CLI_HPP
#define AQORED_CLI_HPP

#include <iosfwd>
#include <string>

#include "aqored/model_io.hpp"

namespace aqored::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

struct CommandResult {
  int exit_code = kExitOk;
  std::string output;    // CSV / JSON / report body
  std::string messages;  // warnings and errors for stderr
};

// Each command takes the merged configuration (config file keys overridden by
// command-line flags, dashes folded to underscores) and returns its output.
// Usage problems surface as InvalidInput.
CommandResult cmd_gap(const KeyValues& cfg);
CommandResult cmd_tcomp(const KeyValues& cfg);
CommandResult cmd_scaling(const KeyValues& cfg);
CommandResult cmd_verify(const KeyValues& cfg);
CommandResult cmd_spectrum(const KeyValues& cfg);

/// Full command-line entry point.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace aqored::cli

#endif  // AQORED_CLI_HPP
