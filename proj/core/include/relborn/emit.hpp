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

// Deterministic report serialization. Text and CSV print probabilities at
// 17 significant digits; JSON objects have sorted keys and the top-level
// keys scenario, tables, consistency, verdict, ch_max and timing (plus
// spectra for the ancilla scenario and sweep for sweeps). Output uses LF line
// endings only.

#ifndef RELBORN_EMIT_HPP
#define RELBORN_EMIT_HPP

#include <optional>
#include <string>
#include <string_view>

#include "relborn/scenarios.hpp"

namespace relborn {

enum class Format { kText, kCsv, kJson };

std::optional<Format> parse_format(std::string_view name);

inline constexpr const char* kSweepCsvHeader = "phi,S,max_ch,lp_feasible";

std::string render(const RunReport& report, Format format);
std::string render(const SweepReport& report, Format format);

}  // namespace relborn

#endif  // RELBORN_EMIT_HPP
