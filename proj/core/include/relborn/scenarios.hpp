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

#ifndef RELBORN_SCENARIOS_HPP
#define RELBORN_SCENARIOS_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "relborn/feasibility.hpp"

namespace relborn {

/// Spectra of the two reduced block operators on one surface.
struct SurfaceSpectrum {
    Surface surface = Surface::kAlpha;
    std::array<std::vector<double>, 2> eigenvalues;
    /// Smallest gap between distinct nonzero eigenvalues; nullopt when fewer
    /// than two are nonzero.
    std::array<std::optional<double>, 2> min_gap;
    /// Largest weight of a nonzero-eigenvalue eigenvector outside
    /// span{|r+p+>, |r-p->}.
    std::array<double, 2> max_leakage{};
};

struct RunReport {
    std::string scenario;
    double tol = kFeasibilityTol;
    FourTables tables;
    NoSignalingReport no_signaling;
    OverlapReport overlap;
    Verdict verdict;
    /// Binary scenarios only.
    std::optional<ChSummary> ch;
    /// Value assignments forced by zero cells on gamma and delta, and any
    /// contradiction they imply on beta.
    std::vector<std::string> forced_values;
    /// Ancilla scenario only.
    std::vector<SurfaceSpectrum> spectra;
    std::optional<double> timing_ms;
};

struct SweepRow {
    double phi = 0.0;
    /// delta(+,-) + gamma(-,+) + beta(+,+) - alpha(+,+).
    double s = 0.0;
    double max_ch = 0.0;
    bool lp_feasible = false;
    double phase1_objective = 0.0;
    double max_consistency_deviation = 0.0;
};

struct SweepReport {
    double phi_min = 0.0;
    double phi_max = 0.0;
    double tol = kFeasibilityTol;
    std::vector<SweepRow> rows;
    std::optional<double> timing_ms;
};

inline constexpr std::size_t kDefaultSweepSteps = 181;

/// Full pipeline on an arbitrary scenario: tables, consistency checks,
/// feasibility verdict, CH battery (binary only) and forced-value chain.
RunReport run_scenario(const std::string& name, const FourSurfaceScenario& scenario,
                       double tol = kFeasibilityTol);

FourSurfaceScenario hardy_scenario();
FourSurfaceScenario ancilla_scenario();
FourSurfaceScenario singlet_scenario(double phi);

/// Hardy-Jordan state with a Hadamard on each side.
RunReport run_hardy(double tol = kFeasibilityTol);

/// Hardy-Jordan state with pointer ancillas and block Hadamards; attaches the
/// reduced block spectra for every surface.
RunReport run_ancilla(double tol = kFeasibilityTol);

/// delta(l0,l1) + gamma(l1,l0) + beta(l0,l0) - alpha(l0,l0), where l0 / l1
/// are the first / second outcome of each binary observable.
double four_term_combination(const FourTables& tables);

/// Singlet with opposite rotations by phi on an evenly spaced grid of
/// `steps` points, both ends included. Points are evaluated on up to
/// `threads` workers (0 = hardware concurrency); rows stay in grid order.
/// Throws std::invalid_argument if steps < 2 or phi_min >= phi_max.
SweepReport run_singlet_sweep(double phi_min, double phi_max, std::size_t steps,
                              double tol = kFeasibilityTol, unsigned threads = 0);

SweepRow singlet_sweep_point(double phi, double tol = kFeasibilityTol);

/// Loads, validates and runs a config file. Throws ConfigError on bad input.
RunReport run_custom(const std::string& config_path, double tol = kFeasibilityTol);

std::vector<std::string> forced_value_chain(const FourTables& tables, double zero_tol = 1e-12);

}  // namespace relborn

#endif  // RELBORN_SCENARIOS_HPP
