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

#ifndef RELBORN_BORN_HPP
#define RELBORN_BORN_HPP

#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "relborn/hypersurface.hpp"

namespace relborn {

/// Entries in [-kNegativeDust, 0) are clamped to 0; anything lower is an error.
inline constexpr double kNegativeDust = 1e-12;

/// Joint outcome distribution of one subsystem-1 and one subsystem-2
/// observable on a surface.
struct MarginalTable {
    Surface surface = Surface::kAlpha;
    std::string obs1, obs2;
    /// Outcome order of each observable (not necessarily lexicographic).
    std::vector<std::string> labels1, labels2;
    /// Keyed by (label1, label2); std::map gives the lexicographic order
    /// used for serialization.
    std::map<std::pair<std::string, std::string>, double> probs;
    /// One entry per clamped negative value.
    std::vector<std::string> notes;

    double at(const std::string& label1, const std::string& label2) const;
    double at_index(std::size_t i, std::size_t j) const { return at(labels1[i], labels2[j]); }
};

/// Builds a table from row-major raw probabilities (raw[i * labels2.size() + j]).
/// Clamps dust, then throws std::invalid_argument if an entry is below
/// -kNegativeDust or above 1 + kNegativeDust, or the total is off by > 1e-10.
MarginalTable make_table(Surface surface, std::string obs1, std::string obs2,
                         std::vector<std::string> labels1, std::vector<std::string> labels2,
                         const std::vector<double>& raw);

/// Tr[(P_x (x) P_y) rho] with x on subsystem 1 and y on subsystem 2.
double joint_probability(const DensityOperator& rho, const LocalObservable& x,
                         const std::string& x_label, const LocalObservable& y,
                         const std::string& y_label);

MarginalTable marginal_table(const FourSurfaceScenario& scenario, Surface surface);

struct FourTables {
    MarginalTable alpha, beta, gamma, delta;

    const MarginalTable& operator[](Surface s) const;
};

FourTables all_tables(const FourSurfaceScenario& scenario);

struct SingleMarginals {
    std::map<std::string, double> first, second;
};

/// Row sums (first observable) and column sums (second observable).
SingleMarginals single_marginals(const MarginalTable& table);

struct OverlapReport {
    bool passed = true;
    double max_deviation = 0.0;
    /// Location of the largest disagreement, e.g. "B1=+ : beta vs gamma".
    std::string worst;
};

/// Each observable appears in two tables: A1 on alpha/delta, A2 on
/// alpha/gamma, B1 on beta/gamma, B2 on beta/delta. Their single marginals
/// must agree within tol.
OverlapReport overlap_consistency(const FourTables& tables, double tol = 1e-10);

/// CSV header for write_table_csv.
inline constexpr const char* kTableCsvHeader = "surface,obs1,label1,obs2,label2,probability";

/// One line per entry, `surface,obs1,label1,obs2,label2,probability`, in
/// lexicographic label order, probabilities at 17 significant digits.
void write_table_csv(std::ostream& os, const MarginalTable& table);

/// "%.17g".
std::string format_probability(double p);

}  // namespace relborn

#endif  // RELBORN_BORN_HPP
