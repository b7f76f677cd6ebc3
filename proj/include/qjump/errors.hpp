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

#include <stdexcept>
#include <string>

namespace qjump {

/// Operand shapes do not agree (operator vs. vector, mixed Hilbert spaces).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Invalid model parameters or run configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical quantity left its domain at run time: a zero-norm jump target,
/// a singular exact rate, a negative rate handed to the standard unraveling.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The standard unraveling met a negative decay rate.
class NegativeRateError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace qjump
