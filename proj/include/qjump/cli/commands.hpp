// Copyright 2026 The qjump Authors
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

#include <map>
#include <ostream>
#include <string>

#include "qjump/cli/config.hpp"
#include "qjump/cli/table.hpp"

namespace qjump::cli {

enum ExitCode : int { kSuccess = 0, kUsageError = 1, kValidationFailure = 2, kNumericError = 3 };

/// Keys accepted in a config file and as --key=value flags.
const std::vector<std::string>& setting_keys();

/// Flat key=value text; '#' starts a comment, blank lines are skipped.
/// Throws ConfigError on a malformed line or an unknown key.
std::map<std::string, std::string> parse_config_text(const std::string& text);

/// Defaults, then the preset named by settings["preset"], then every other
/// setting. Throws ConfigError on bad values.
RunConfig resolve(Command command, const std::map<std::string, std::string>& settings);

Table cmd_rates(const RunConfig& cfg, std::ostream& diag);
Table cmd_decay(const RunConfig& cfg);
Table cmd_simulate(const RunConfig& cfg, std::ostream& diag);

/// Parses argv, runs one subcommand and returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qjump::cli
