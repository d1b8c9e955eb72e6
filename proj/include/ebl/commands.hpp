// Copyright 2026 The entangled-baseline Authors
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

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ebl/config.hpp"

namespace ebl {

/// A check whose outcome decides the exit status (mesh deviation, oracle
/// mismatch) did not pass.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kExitOk = 0, kExitConfig = 2, kExitVerification = 3, kExitIo = 4 };

/// Each command writes its primary output to cfg.out (stdout when empty)
/// and progress to `log`.
void cmd_fisher(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void cmd_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void cmd_estimate(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void cmd_compile(const RunConfig& cfg, std::ostream& out, std::ostream& log);
void cmd_oracle(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Runs one command and maps failures to exit codes.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& log);

/// Full command line: `ebl <command> [--config FILE] [--key value ...]`.
/// Flags override values from the config file.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ebl
