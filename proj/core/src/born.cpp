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

#include "relborn/born.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace relborn {

double MarginalTable::at(const std::string& label1, const std::string& label2) const {
    const auto it = probs.find({label1, label2});
    if (it == probs.end()) {
        throw std::invalid_argument("MarginalTable: no entry (" + label1 + "," + label2 + ") on " +
                                    std::string(to_string(surface)));
    }
    return it->second;
}

std::string format_probability(double p) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", p);
    return buf;
}

MarginalTable make_table(Surface surface, std::string obs1, std::string obs2,
                         std::vector<std::string> labels1, std::vector<std::string> labels2,
                         const std::vector<double>& raw) {
    if (raw.size() != labels1.size() * labels2.size()) {
        throw std::invalid_argument("make_table: entry count does not match label counts");
    }
    MarginalTable t;
    t.surface = surface;
    t.obs1 = std::move(obs1);
    t.obs2 = std::move(obs2);
    double total = 0.0;
    for (std::size_t i = 0; i < labels1.size(); ++i) {
        for (std::size_t j = 0; j < labels2.size(); ++j) {
            double p = raw[i * labels2.size() + j];
            const std::string where = std::string(to_string(surface)) + " (" + labels1[i] + "," +
                                      labels2[j] + ")";
            if (!std::isfinite(p) || p < -kNegativeDust || p > 1.0 + kNegativeDust) {
                throw std::invalid_argument("make_table: probability " + format_probability(p) +
                                            " out of range at " + where);
            }
            if (p < 0.0) {
                t.notes.push_back("clamped " + format_probability(p) + " to 0 at " + where);
                p = 0.0;
            }
            if (p > 1.0) p = 1.0;
            total += p;
            if (!t.probs.emplace(std::make_pair(labels1[i], labels2[j]), p).second) {
                throw std::invalid_argument("make_table: duplicate label pair at " + where);
            }
        }
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw std::invalid_argument("make_table: probabilities on " +
                                    std::string(to_string(surface)) + " sum to " +
                                    format_probability(total));
    }
    t.labels1 = std::move(labels1);
    t.labels2 = std::move(labels2);
    return t;
}

double joint_probability(const DensityOperator& rho, const LocalObservable& x,
                         const std::string& x_label, const LocalObservable& y,
                         const std::string& y_label) {
    if (x.subsystem() != 0 || y.subsystem() != 1) {
        throw std::invalid_argument(
            "joint_probability: expects a subsystem-1 and a subsystem-2 observable");
    }
    const ComplexMatrix& px = x.outcome(x_label).projector;
    const ComplexMatrix& py = y.outcome(y_label).projector;
    const ComplexMatrix& m = rho.matrix();
    if (m.rows() != px.rows() * py.rows()) {
        throw std::invalid_argument("joint_probability: observable dimensions do not match state");
    }
    // Tr[(Px (x) Py) rho] entrywise, without forming the Kronecker product.
    const std::size_t d2 = py.rows();
    Complex acc{};
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const Complex op = px(c / d2, r / d2) * py(c % d2, r % d2);
            if (op != Complex{}) acc += op * m(r, c);
        }
    }
    if (std::abs(acc.imag()) > 1e-10) {
        throw std::logic_error("joint_probability: imaginary part " +
                               format_probability(acc.imag()));
    }
    return acc.real();
}

MarginalTable marginal_table(const FourSurfaceScenario& scenario, Surface surface) {
    const DensityOperator rho = state_on(scenario, surface);
    const auto [x, y] = scenario.observables_on(surface);
    auto [n1, n2] = scenario.observable_names(surface);
    std::vector<double> raw;
    for (const auto& ox : x.outcomes()) {
        for (const auto& oy : y.outcomes()) {
            raw.push_back(joint_probability(rho, x, ox.label, y, oy.label));
        }
    }
    return make_table(surface, std::move(n1), std::move(n2), x.labels(), y.labels(), raw);
}

const MarginalTable& FourTables::operator[](Surface s) const {
    switch (s) {
        case Surface::kAlpha: return alpha;
        case Surface::kBeta: return beta;
        case Surface::kGamma: return gamma;
        case Surface::kDelta: return delta;
    }
    throw std::logic_error("unknown surface");
}

FourTables all_tables(const FourSurfaceScenario& scenario) {
    return {marginal_table(scenario, Surface::kAlpha), marginal_table(scenario, Surface::kBeta),
            marginal_table(scenario, Surface::kGamma), marginal_table(scenario, Surface::kDelta)};
}

SingleMarginals single_marginals(const MarginalTable& table) {
    SingleMarginals out;
    for (const auto& l : table.labels1) out.first[l] = 0.0;
    for (const auto& l : table.labels2) out.second[l] = 0.0;
    for (const auto& [key, p] : table.probs) {
        out.first[key.first] += p;
        out.second[key.second] += p;
    }
    return out;
}

OverlapReport overlap_consistency(const FourTables& tables, double tol) {
    OverlapReport report;
    // (table X, use first?, table Y, use first?, observable name)
    struct Pair {
        const MarginalTable* x;
        bool x_first;
        const MarginalTable* y;
        bool y_first;
        const char* name;
    };
    const Pair pairs[] = {
        {&tables.alpha, true, &tables.delta, true, "A1"},
        {&tables.alpha, false, &tables.gamma, false, "A2"},
        {&tables.beta, true, &tables.gamma, true, "B1"},
        {&tables.beta, false, &tables.delta, false, "B2"},
    };
    bool any = false;
    for (const Pair& p : pairs) {
        const SingleMarginals mx = single_marginals(*p.x);
        const SingleMarginals my = single_marginals(*p.y);
        const auto& dx = p.x_first ? mx.first : mx.second;
        const auto& dy = p.y_first ? my.first : my.second;
        const std::string where = std::string(" : ") + std::string(to_string(p.x->surface)) +
                                  " vs " + std::string(to_string(p.y->surface));
        if (dx.size() != dy.size()) {
            report.passed = false;
            report.max_deviation = 1.0;
            report.worst = std::string(p.name) + " outcome sets differ" + where;
            return report;
        }
        for (const auto& [label, px] : dx) {
            const auto it = dy.find(label);
            const double dev = it == dy.end() ? 1.0 : std::abs(px - it->second);
            if (!any || dev > report.max_deviation) {
                report.max_deviation = dev;
                report.worst = std::string(p.name) + "=" + label + where;
                any = true;
            }
        }
    }
    report.passed = report.max_deviation <= tol;
    return report;
}

void write_table_csv(std::ostream& os, const MarginalTable& table) {
    for (const auto& [key, p] : table.probs) {
        os << to_string(table.surface) << ',' << table.obs1 << ',' << key.first << ','
           << table.obs2 << ',' << key.second << ',' << format_probability(p) << '\n';
    }
}

}  // namespace relborn
