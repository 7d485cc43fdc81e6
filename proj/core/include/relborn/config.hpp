// Copyright 2026 The relborn Authors
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

// Scenario config files (YAML):
//
//   name: hardy
//   dims: [2, 2]
//   state:                       # one entry per basis vector, re or [re, im]
//     - [0.28867513459481287, 0]
//     - ...
//   channels:                    # subsystem 1, then subsystem 2
//     - hadamard                 # identity | hadamard | block_hadamard
//     - "rotation:0.3926990817"  #   | rotation:<phi> | dephasing:<p>
//     # - {unitary: <matrix>}    # explicit forms; a matrix is a list of rows,
//     # - {kraus: [<matrix>, ..]}#   each entry re or [re, im]
//   observables:                 # A1, A2; also used for B1, B2 unless
//     - {labels: ["+", "-"], eigenvalues: [1, -1]}      # observables_beta
//     - {labels: ["+", "-"], eigenvalues: [1, -1], groups: [[0], [1]]}
//
// `groups` (optional) lists the basis indices each outcome projects onto.

#ifndef RELBORN_CONFIG_HPP
#define RELBORN_CONFIG_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relborn/hypersurface.hpp"

namespace relborn {

/// Parse or validation failure, located at a line of the source file.
class ConfigError : public std::runtime_error {
   public:
    ConfigError(const std::string& source, int line, const std::string& what);
    int line() const { return line_; }

   private:
    int line_;
};

struct ChannelSpec {
    /// identity, hadamard, block_hadamard, rotation, dephasing, unitary, kraus.
    std::string kind;
    double parameter = 0.0;
    std::vector<ComplexMatrix> matrices;
    int line = 0;
};

struct ObservableSpec {
    std::vector<std::string> labels;
    std::vector<double> eigenvalues;
    std::optional<std::vector<std::vector<std::size_t>>> groups;
    int line = 0;
};

struct ScenarioConfig {
    std::string source;
    std::string name;
    std::vector<std::size_t> dims;
    int dims_line = 0;
    std::vector<Complex> amplitudes;
    int state_line = 0;
    std::array<ChannelSpec, 2> channels;
    std::array<ObservableSpec, 2> observables_alpha;
    std::array<ObservableSpec, 2> observables_beta;
};

/// Throws ConfigError on malformed YAML or a missing/ill-typed field.
ScenarioConfig parse_config(const std::string& text, const std::string& source = "<config>");
/// Throws ConfigError (line 0) if the file cannot be read.
ScenarioConfig load_config(const std::string& path);

/// Constructs and validates every object. Throws ConfigError pointing at the
/// offending entry when a validator rejects it.
FourSurfaceScenario build_scenario(const ScenarioConfig& config);

}  // namespace relborn

#endif  // RELBORN_CONFIG_HPP
