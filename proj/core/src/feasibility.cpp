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

#include "relborn/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace relborn {

namespace {

enum Var : std::size_t { kA1 = 0, kA2 = 1, kB1 = 2, kB2 = 3 };
const char* const kVarNames[] = {"A1", "A2", "B1", "B2"};

void require_same_outcomes(const std::vector<std::string>& a, const std::vector<std::string>& b,
                           const char* name) {
    const std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    if (sa != sb) {
        throw std::invalid_argument(std::string("assemble_problem: tables disagree on the outcomes of ") +
                                    name);
    }
}

std::size_t find_label(const std::vector<std::string>& labels, const std::string& l) {
    return static_cast<std::size_t>(std::find(labels.begin(), labels.end(), l) - labels.begin());
}

// Dense tableau for min sum(artificials) s.t. [A | I] [x; a] = b, x, a >= 0.
class PhaseOneTableau {
   public:
    PhaseOneTableau(const std::vector<std::vector<double>>& a, const std::vector<double>& b)
        : m_(a.size()), n_(a.empty() ? 0 : a.front().size()), width_(n_ + m_ + 1),
          t_(m_ * width_, 0.0), cost_(width_, 0.0), basis_(m_) {
        for (std::size_t i = 0; i < m_; ++i) {
            // b >= 0 by construction; flip rows otherwise so the artificial basis is feasible.
            const double sign = b[i] < 0.0 ? -1.0 : 1.0;
            for (std::size_t j = 0; j < n_; ++j) at(i, j) = sign * a[i][j];
            at(i, n_ + i) = 1.0;
            at(i, width_ - 1) = sign * b[i];
            basis_[i] = n_ + i;
        }
        // Reduced costs: c_j - sum_i c_B(i) * t_ij with c = 1 on artificials.
        for (std::size_t j = 0; j < width_; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < m_; ++i) s += at(i, j);
            cost_[j] = (j >= n_ && j < n_ + m_ ? 1.0 : 0.0) - s;
        }
    }

    /// Runs Bland's rule to optimality. Returns the pivot count.
    std::size_t run(std::size_t max_iterations) {
        constexpr double kEnterTol = 1e-11;
        constexpr double kPivotTol = 1e-12;
        std::size_t iterations = 0;
        while (true) {
            std::size_t enter = width_;
            for (std::size_t j = 0; j + 1 < width_; ++j) {
                if (cost_[j] < -kEnterTol) {
                    enter = j;
                    break;
                }
            }
            if (enter == width_) return iterations;
            if (iterations >= max_iterations) {
                throw SolverFailure("phase-1 simplex exceeded " + std::to_string(max_iterations) +
                                    " iterations");
            }

            std::size_t leave = m_;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                const double piv = at(i, enter);
                if (piv <= kPivotTol) continue;
                const double ratio = std::max(0.0, at(i, width_ - 1)) / piv;
                if (ratio < best - 1e-14) {
                    best = ratio;
                    leave = i;
                } else if (ratio <= best + 1e-14 && basis_[i] < basis_[leave]) {
                    // Bland: among ties, the smallest basic variable leaves.
                    best = std::min(best, ratio);
                    leave = i;
                }
            }
            // Objective is bounded below by 0, so some row always qualifies.
            if (leave == m_) {
                throw SolverFailure("phase-1 simplex found no pivot row for column " +
                                    std::to_string(enter));
            }
            pivot(leave, enter);
            ++iterations;
        }
    }

    double objective() const {
        double w = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] >= n_) w += std::max(0.0, at(i, width_ - 1));
        }
        return w;
    }

    std::vector<double> primal() const {
        std::vector<double> x(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) x[basis_[i]] = at(i, width_ - 1);
        }
        return x;
    }

   private:
    double& at(std::size_t i, std::size_t j) { return t_[i * width_ + j]; }
    double at(std::size_t i, std::size_t j) const { return t_[i * width_ + j]; }

    void pivot(std::size_t row, std::size_t col) {
        const double p = at(row, col);
        for (std::size_t j = 0; j < width_; ++j) at(row, j) /= p;
        at(row, col) = 1.0;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row) continue;
            const double f = at(i, col);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < width_; ++j) at(i, j) -= f * at(row, j);
            at(i, col) = 0.0;
        }
        const double f = cost_[col];
        for (std::size_t j = 0; j < width_; ++j) cost_[j] -= f * at(row, j);
        cost_[col] = 0.0;
        basis_[row] = col;
    }

    std::size_t m_, n_, width_;
    std::vector<double> t_;
    std::vector<double> cost_;
    std::vector<std::size_t> basis_;
};

}  // namespace

// Problem -------------------------------------------------------------------------

std::size_t FeasibilityProblem::variable_index(std::size_t a1, std::size_t a2, std::size_t b1,
                                               std::size_t b2) const {
    return ((a1 * labels[kA2].size() + a2) * labels[kB1].size() + b1) * labels[kB2].size() + b2;
}

std::string FeasibilityProblem::variable_name(std::size_t index) const {
    std::array<std::size_t, 4> digits{};
    for (std::size_t v = 4; v-- > 0;) {
        digits[v] = index % labels[v].size();
        index /= labels[v].size();
    }
    std::string out;
    for (std::size_t v = 0; v < 4; ++v) {
        out += (v ? "," : "") + std::string(kVarNames[v]) + "=" + labels[v][digits[v]];
    }
    return out;
}

bool FeasibilityProblem::is_binary() const {
    return std::all_of(labels.begin(), labels.end(), [](const auto& l) { return l.size() == 2; });
}

FeasibilityProblem assemble_problem(const FourTables& tables, double overlap_tol) {
    require_same_outcomes(tables.alpha.labels1, tables.delta.labels1, "A1");
    require_same_outcomes(tables.alpha.labels2, tables.gamma.labels2, "A2");
    require_same_outcomes(tables.beta.labels1, tables.gamma.labels1, "B1");
    require_same_outcomes(tables.beta.labels2, tables.delta.labels2, "B2");
    const OverlapReport overlap = overlap_consistency(tables, overlap_tol);
    if (!overlap.passed) {
        throw std::invalid_argument("assemble_problem: inconsistent overlap at " + overlap.worst +
                                    " (deviation " + format_probability(overlap.max_deviation) +
                                    ")");
    }

    FeasibilityProblem p;
    p.tables = tables;
    p.labels = {tables.alpha.labels1, tables.alpha.labels2, tables.beta.labels1,
                tables.beta.labels2};
    const auto& L = p.labels;
    p.num_variables = L[kA1].size() * L[kA2].size() * L[kB1].size() * L[kB2].size();

    p.equations.emplace_back(p.num_variables, 1.0);
    p.rhs.push_back(1.0);
    p.row_names.emplace_back("total");

    // For each table: which two variables it fixes.
    struct Spec {
        const MarginalTable* table;
        Var first, second;
    };
    const Spec specs[] = {{&tables.alpha, kA1, kA2},
                          {&tables.beta, kB1, kB2},
                          {&tables.gamma, kB1, kA2},
                          {&tables.delta, kA1, kB2}};
    for (const Spec& s : specs) {
        for (const auto& [key, prob] : s.table->probs) {
            const std::size_t u = find_label(L[s.first], key.first);
            const std::size_t v = find_label(L[s.second], key.second);
            std::vector<double> row(p.num_variables, 0.0);
            for (std::size_t i = 0; i < L[kA1].size(); ++i) {
                for (std::size_t j = 0; j < L[kA2].size(); ++j) {
                    for (std::size_t k = 0; k < L[kB1].size(); ++k) {
                        for (std::size_t l = 0; l < L[kB2].size(); ++l) {
                            const std::array<std::size_t, 4> q = {i, j, k, l};
                            if (q[s.first] == u && q[s.second] == v) {
                                row[p.variable_index(i, j, k, l)] = 1.0;
                            }
                        }
                    }
                }
            }
            p.equations.push_back(std::move(row));
            p.rhs.push_back(prob);
            p.row_names.push_back(std::string(to_string(s.table->surface)) + "(" + key.first + "," +
                                  key.second + ")");
        }
    }
    return p;
}

// CH battery ----------------------------------------------------------------------

std::vector<ChEntry> ch_battery(const FourTables& tables, double tol) {
    for (Surface s : kAllSurfaces) {
        if (tables[s].labels1.size() != 2 || tables[s].labels2.size() != 2) {
            throw std::invalid_argument("ch_battery: observables on " + std::string(to_string(s)) +
                                        " are not binary");
        }
    }
    // Party-1 observables: 0 = A1, 1 = B1. Party-2: 0 = A2, 1 = B2.
    auto table_for = [&](int x, int y) -> const MarginalTable& {
        if (x == 0) return y == 0 ? tables.alpha : tables.delta;
        return y == 0 ? tables.gamma : tables.beta;
    };
    auto other = [](const std::vector<std::string>& labels, const std::string& l) {
        return labels[0] == l ? labels[1] : labels[0];
    };
    auto term = [](const MarginalTable& t, const std::string& l1, const std::string& l2) {
        return std::string(to_string(t.surface)) + "(" + l1 + "," + l2 + ")";
    };

    std::vector<ChEntry> out;
    std::set<std::vector<std::string>> seen;
    // Subtracted table in alpha, beta, gamma, delta order.
    const std::array<std::pair<int, int>, 4> minus_tables = {
        std::pair{0, 0}, std::pair{1, 1}, std::pair{1, 0}, std::pair{0, 1}};
    for (const auto& [x, y] : minus_tables) {
        const MarginalTable& t_xy = table_for(x, y);
        const MarginalTable& t_xyp = table_for(x, 1 - y);
        const MarginalTable& t_xpy = table_for(1 - x, y);
        const MarginalTable& t_xpyp = table_for(1 - x, 1 - y);
        const auto& lx = t_xy.labels1;
        const auto& ly = t_xy.labels2;
        const auto& lxp = t_xpyp.labels1;
        const auto& lyp = t_xpyp.labels2;
        for (const auto& a : lx) {
            for (const auto& b : ly) {
                for (const auto& ap : lxp) {
                    for (const auto& bp : lyp) {
                        const std::string nbp = other(lyp, bp);
                        const std::string nap = other(lxp, ap);
                        std::vector<std::string> key = {"+" + term(t_xyp, a, nbp),
                                                        "+" + term(t_xpy, nap, b),
                                                        "+" + term(t_xpyp, ap, bp),
                                                        "-" + term(t_xy, a, b)};
                        std::vector<std::string> canon = key;
                        std::sort(canon.begin(), canon.end());
                        if (!seen.insert(canon).second) continue;

                        ChEntry e;
                        e.id = key[0] + key[1] + key[2] + key[3];
                        if (e.id.front() == '+') e.id.erase(0, 1);
                        e.value = t_xyp.at(a, nbp) + t_xpy.at(nap, b) + t_xpyp.at(ap, bp) -
                                  t_xy.at(a, b);
                        e.violation = std::max(-e.value, e.value - 1.0);
                        e.violated = e.violation > tol;
                        out.push_back(std::move(e));
                    }
                }
            }
        }
    }
    return out;
}

ChSummary summarize_battery(const std::vector<ChEntry>& battery) {
    ChSummary s;
    if (battery.empty()) return s;
    s.max_value = battery.front();
    s.most_violated = battery.front();
    for (const ChEntry& e : battery) {
        if (e.value > s.max_value.value) s.max_value = e;
        if (e.violation > s.most_violated.violation) s.most_violated = e;
        s.any_violated = s.any_violated || e.violated;
    }
    return s;
}

// Solver ----------------------------------------------------------------------------

Verdict solve_feasibility(const FeasibilityProblem& problem, double tol) {
    PhaseOneTableau tableau(problem.equations, problem.rhs);
    Verdict v;
    v.iterations = tableau.run(1000 * problem.num_variables);
    v.phase1_objective = tableau.objective();
    if (v.phase1_objective <= tol) {
        v.status = FeasibilityStatus::kFeasible;
        v.witness = tableau.primal();
        for (double& w : v.witness) {
            if (w < 0.0 && w >= -tol) w = 0.0;
        }
        return v;
    }
    v.status = FeasibilityStatus::kInfeasible;
    v.marginal = v.phase1_objective < kMarginalBand;
    if (problem.is_binary()) {
        // Near the facets the LP and the battery can disagree; then the
        // phase-1 objective is the only certificate.
        const ChSummary s = summarize_battery(ch_battery(problem.tables, tol));
        if (s.any_violated) v.certificate = s.most_violated;
    }
    return v;
}

WitnessReport verify_witness(const FeasibilityProblem& problem, const std::vector<double>& witness,
                             double tol) {
    WitnessReport r;
    if (witness.size() != problem.num_variables) {
        r.max_residual = std::numeric_limits<double>::infinity();
        return r;
    }
    for (std::size_t i = 0; i < problem.equations.size(); ++i) {
        double lhs = 0.0;
        for (std::size_t j = 0; j < witness.size(); ++j) lhs += problem.equations[i][j] * witness[j];
        r.max_residual = std::max(r.max_residual, std::abs(lhs - problem.rhs[i]));
    }
    r.min_entry = *std::min_element(witness.begin(), witness.end());
    r.passed = r.max_residual <= 10.0 * tol && r.min_entry >= -tol;
    return r;
}

}  // namespace relborn
