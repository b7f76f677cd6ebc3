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

#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace qjump::cli {

struct CheckResult {
  std::string name;
  double measured;
  double tolerance;  ///< pass iff measured <= tolerance
  bool passed;
};

/// Names of the cross-oracle checks in report order.
std::vector<std::string> check_names();

/// Runs every check. Naming a check in `faults` perturbs the reference side
/// of that check (test-only, to confirm the harness can fail). Throws
/// ConfigError for an unknown fault name.
std::vector<CheckResult> run_checks(const std::set<std::string>& faults = {});

/// "# check,measured,tolerance,status" followed by one row per check.
void write_report(const std::vector<CheckResult>& results, std::ostream& os);

}  // namespace qjump::cli
