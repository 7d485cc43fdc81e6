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

// Existence of a joint distribution Pr(a1, a2, b1, b2) whose marginals are
// the four surface tables, decided two ways:
//
//  * a dense phase-1 simplex over the equality system (the ground truth),
//  * a battery of Clauser-Horne inequalities in the four-term form
//        0 <= P[X,Y'](x, ~y') + P[X',Y](~x', y) + P[X',Y'](x', y') - P[X,Y](x, y) <= 1
//    where (X, Y) is the subtracted table and X' / Y' are the other
//    observable on each side. For binary observables with consistent
//    overlaps the two must agree.

#ifndef RELBORN_FEASIBILITY_HPP
#define RELBORN_FEASIBILITY_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "relborn/born.hpp"

namespace relborn {

inline constexpr double kFeasibilityTol = 1e-9;
/// Phase-1 objectives in (tol, kMarginalBand) are flagged as marginal.
inline constexpr double kMarginalBand = 1e-6;

/// Equality system over all outcome quadruples (a1, a2, b1, b2).
struct FeasibilityProblem {
    /// Outcome labels of A1, A2, B1, B2 in that order.
    std::array<std::vector<std::string>, 4> labels;
    std::size_t num_variables = 0;
    /// Dense rows: total mass, then one row per entry of alpha, beta, gamma,
    /// delta. Redundant rows are kept.
    std::vector<std::vector<double>> equations;
    std::vector<double> rhs;
    std::vector<std::string> row_names;
    FourTables tables;

    /// Row-major with A1 most significant.
    std::size_t variable_index(std::size_t a1, std::size_t a2, std::size_t b1,
                               std::size_t b2) const;
    /// "A1=+,A2=-,B1=+,B2=+".
    std::string variable_name(std::size_t index) const;
    bool is_binary() const;
};

/// Throws std::invalid_argument if the tables disagree on an observable's
/// outcome set or on a shared single marginal beyond `overlap_tol`.
FeasibilityProblem assemble_problem(const FourTables& tables, double overlap_tol = 1e-9);

struct ChEntry {
    std::string id;
    double value = 0.0;
    /// max(-value, value - 1); positive when outside [0, 1].
    double violation = 0.0;
    bool violated = false;
};

/// Every four-term inequality over all label assignments and choices of the
/// subtracted table, deduplicated, in a fixed order. Throws
/// std::invalid_argument unless all four observables are binary.
std::vector<ChEntry> ch_battery(const FourTables& tables, double tol = kFeasibilityTol);

struct ChSummary {
    /// Largest value over the battery.
    ChEntry max_value;
    /// Entry with the largest violation.
    ChEntry most_violated;
    bool any_violated = false;
};

ChSummary summarize_battery(const std::vector<ChEntry>& battery);

enum class FeasibilityStatus { kFeasible, kInfeasible };

struct Verdict {
    FeasibilityStatus status = FeasibilityStatus::kInfeasible;
    /// Minimized sum of artificial variables.
    double phase1_objective = 0.0;
    /// Infeasible with objective below kMarginalBand.
    bool marginal = false;
    std::size_t iterations = 0;
    /// Joint distribution indexed by FeasibilityProblem::variable_index;
    /// empty unless feasible.
    std::vector<double> witness;
    /// Maximally violated CH inequality; set for infeasible binary problems
    /// when one is violated by more than tol.
    std::optional<ChEntry> certificate;

    bool feasible() const { return status == FeasibilityStatus::kFeasible; }
};

/// Raised when the simplex hits its iteration cap. Never a verdict.
class SolverFailure : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Phase-1 simplex with Bland's rule. Feasible iff the minimized artificial
/// sum is <= tol. Iteration cap 1000 * num_variables.
Verdict solve_feasibility(const FeasibilityProblem& problem, double tol = kFeasibilityTol);

struct WitnessReport {
    double max_residual = 0.0;
    double min_entry = 0.0;
    bool passed = false;
};

/// Recomputes every marginal equation. Passes if max residual <= 10 * tol and
/// min entry >= -tol.
WitnessReport verify_witness(const FeasibilityProblem& problem, const std::vector<double>& witness,
                             double tol = kFeasibilityTol);

}  // namespace relborn

#endif  // RELBORN_FEASIBILITY_HPP
