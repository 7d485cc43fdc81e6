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

#include "relborn/scenarios.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <thread>

#include "relborn/config.hpp"

namespace relborn {

namespace {

constexpr double kNonzeroEigenvalue = 1e-12;

SurfaceSpectrum block_spectrum(const FourSurfaceScenario& scenario, Surface s) {
    const DensityOperator rho = state_on(scenario, s);
    SurfaceSpectrum out;
    out.surface = s;
    for (std::size_t block = 0; block < 2; ++block) {
        const Eigensystem es = hermitian_eigensystem(rho.reduced(block));
        out.eigenvalues[block] = es.values;
        std::vector<double> nonzero;
        for (std::size_t k = 0; k < es.values.size(); ++k) {
            if (es.values[k] <= kNonzeroEigenvalue) continue;
            nonzero.push_back(es.values[k]);
            // Block basis |r p> -> 2r + p; indices 1 and 2 are uncorrelated.
            const double leak = std::hypot(std::abs(es.vectors(1, k)), std::abs(es.vectors(2, k)));
            out.max_leakage[block] = std::max(out.max_leakage[block], leak);
        }
        for (std::size_t k = 1; k < nonzero.size(); ++k) {
            const double gap = nonzero[k - 1] - nonzero[k];
            if (!out.min_gap[block] || gap < *out.min_gap[block]) out.min_gap[block] = gap;
        }
    }
    return out;
}

}  // namespace

std::vector<std::string> forced_value_chain(const FourTables& tables, double zero_tol) {
    std::vector<std::string> lines;
    // forced_b2[a1] / forced_b1[a2]: the unique supported value, if any.
    std::map<std::string, std::string> forced_b2, forced_b1;
    for (const auto& a1 : tables.delta.labels1) {
        std::vector<std::string> support;
        for (const auto& b2 : tables.delta.labels2) {
            if (tables.delta.at(a1, b2) > zero_tol) support.push_back(b2);
        }
        if (support.size() == 1 && tables.delta.labels2.size() > 1) {
            forced_b2[a1] = support.front();
            lines.push_back("A1=" + a1 + " forces B2=" + support.front() + " (delta)");
        }
    }
    for (const auto& a2 : tables.gamma.labels2) {
        std::vector<std::string> support;
        for (const auto& b1 : tables.gamma.labels1) {
            if (tables.gamma.at(b1, a2) > zero_tol) support.push_back(b1);
        }
        if (support.size() == 1 && tables.gamma.labels1.size() > 1) {
            forced_b1[a2] = support.front();
            lines.push_back("A2=" + a2 + " forces B1=" + support.front() + " (gamma)");
        }
    }
    for (const auto& [key, p] : tables.alpha.probs) {
        const auto& [a1, a2] = key;
        if (p <= zero_tol || !forced_b2.contains(a1) || !forced_b1.contains(a2)) continue;
        const std::string b1 = forced_b1[a2];
        const std::string b2 = forced_b2[a1];
        const double q = tables.beta.at(b1, b2);
        if (q <= zero_tol) {
            lines.push_back("alpha(" + a1 + "," + a2 + ") = " + format_probability(p) +
                            " but the forced beta(" + b1 + "," + b2 + ") = " +
                            format_probability(q) + ": no joint distribution");
        }
    }
    return lines;
}

RunReport run_scenario(const std::string& name, const FourSurfaceScenario& scenario, double tol) {
    RunReport r;
    r.scenario = name;
    r.tol = tol;
    r.tables = all_tables(scenario);
    r.no_signaling = check_no_signaling(scenario);
    r.overlap = overlap_consistency(r.tables);
    const FeasibilityProblem problem = assemble_problem(r.tables);
    r.verdict = solve_feasibility(problem, tol);
    if (problem.is_binary()) r.ch = summarize_battery(ch_battery(r.tables, tol));
    r.forced_values = forced_value_chain(r.tables);
    return r;
}

FourSurfaceScenario hardy_scenario() {
    const StateVector psi = hardy_jordan();
    return FourSurfaceScenario(DensityOperator::from_state(psi), hadamard_channel(psi.layout, 0),
                               hadamard_channel(psi.layout, 1), qubit_r_observable(0),
                               qubit_r_observable(1), qubit_r_observable(0), qubit_r_observable(1));
}

FourSurfaceScenario ancilla_scenario() {
    const StateVector psi = ancilla_extend(hardy_jordan());
    return FourSurfaceScenario(DensityOperator::from_state(psi),
                               block_hadamard_channel(psi.layout, 0),
                               block_hadamard_channel(psi.layout, 1), pointer_observable(0),
                               pointer_observable(1), pointer_observable(0), pointer_observable(1));
}

FourSurfaceScenario singlet_scenario(double phi) {
    auto [u1, u2] = rotation_channels(phi);
    return FourSurfaceScenario(DensityOperator::from_state(singlet()), std::move(u1), std::move(u2),
                               qubit_r_observable(0), qubit_r_observable(1), qubit_r_observable(0),
                               qubit_r_observable(1));
}

RunReport run_hardy(double tol) { return run_scenario("hardy", hardy_scenario(), tol); }

RunReport run_ancilla(double tol) {
    const FourSurfaceScenario scenario = ancilla_scenario();
    RunReport r = run_scenario("ancilla", scenario, tol);
    for (Surface s : kAllSurfaces) r.spectra.push_back(block_spectrum(scenario, s));
    return r;
}

double four_term_combination(const FourTables& t) {
    auto lo = [](const std::vector<std::string>& l) { return l.at(0); };
    auto hi = [](const std::vector<std::string>& l) { return l.at(1); };
    return t.delta.at(lo(t.delta.labels1), hi(t.delta.labels2)) +
           t.gamma.at(hi(t.gamma.labels1), lo(t.gamma.labels2)) +
           t.beta.at(lo(t.beta.labels1), lo(t.beta.labels2)) -
           t.alpha.at(lo(t.alpha.labels1), lo(t.alpha.labels2));
}

SweepRow singlet_sweep_point(double phi, double tol) {
    const FourSurfaceScenario scenario = singlet_scenario(phi);
    const FourTables tables = all_tables(scenario);
    SweepRow row;
    row.phi = phi;
    row.s = four_term_combination(tables);
    row.max_ch = summarize_battery(ch_battery(tables, tol)).max_value.value;
    const Verdict v = solve_feasibility(assemble_problem(tables), tol);
    row.lp_feasible = v.feasible();
    row.phase1_objective = v.phase1_objective;
    row.max_consistency_deviation = std::max(check_no_signaling(scenario).max_deviation,
                                             overlap_consistency(tables).max_deviation);
    return row;
}

SweepReport run_singlet_sweep(double phi_min, double phi_max, std::size_t steps, double tol,
                              unsigned threads) {
    if (steps < 2) throw std::invalid_argument("sweep: steps must be >= 2");
    if (!(phi_min < phi_max)) throw std::invalid_argument("sweep: phi_min must be < phi_max");
    SweepReport report;
    report.phi_min = phi_min;
    report.phi_max = phi_max;
    report.tol = tol;
    report.rows.resize(steps);

    const double step = (phi_max - phi_min) / static_cast<double>(steps - 1);
    auto grid = [&](std::size_t i) { return i + 1 == steps ? phi_max : phi_min + step * i; };

    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, steps));
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mu;
    auto worker = [&] {
        for (std::size_t i = next++; i < steps; i = next++) {
            try {
                report.rows[i] = singlet_sweep_point(grid(i), tol);
            } catch (...) {
                std::lock_guard lock(error_mu);
                if (!error) error = std::current_exception();
            }
        }
    };
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();
    if (error) std::rethrow_exception(error);
    return report;
}

RunReport run_custom(const std::string& config_path, double tol) {
    const ScenarioConfig cfg = load_config(config_path);
    return run_scenario(cfg.name, build_scenario(cfg), tol);
}

}  // namespace relborn
