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

#include "relborn/emit.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace relborn {

namespace {

// std::map-backed object: keys are always sorted.
using Json = nlohmann::json;

Json entry_json(const ChEntry& e) {
    return {{"id", e.id}, {"value", e.value}, {"violation", e.violation}, {"violated", e.violated}};
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json table_json(const MarginalTable& t) {
    Json entries = Json::array();
    for (const auto& [key, p] : t.probs) {
        entries.push_back({{"label1", key.first}, {"label2", key.second}, {"probability", p}});
    }
    return {{"surface", std::string(to_string(t.surface))},
            {"obs1", t.obs1},
            {"obs2", t.obs2},
            {"entries", entries},
            {"notes", t.notes}};
}

Json tables_json(const FourTables& tables) {
    Json out = Json::array();
    for (Surface s : kAllSurfaces) out.push_back(table_json(tables[s]));
    return out;
}

Json timing_json(const std::optional<double>& ms) {
    return ms ? Json{{"wall_ms", *ms}} : Json(nullptr);
}

Json report_json(const RunReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.no_signaling.checks) {
        checks.push_back({{"description", c.description}, {"deviation", c.deviation}});
    }
    Json consistency = {
        {"no_signaling",
         {{"passed", r.no_signaling.passed},
          {"max_deviation", r.no_signaling.max_deviation},
          {"checks", checks}}},
        {"overlap",
         {{"passed", r.overlap.passed},
          {"max_deviation", r.overlap.max_deviation},
          {"worst", r.overlap.worst}}}};

    const Verdict& v = r.verdict;
    Json verdict = {{"status", v.feasible() ? "feasible" : "infeasible"},
                    {"tol", r.tol},
                    {"phase1_objective", v.phase1_objective},
                    {"marginal", v.marginal},
                    {"iterations", v.iterations},
                    {"certificate", v.certificate ? entry_json(*v.certificate) : Json(nullptr)},
                    {"witness", v.witness.empty() ? Json(nullptr) : Json(v.witness)},
                    {"forced_values", r.forced_values}};

    Json out = {{"scenario", r.scenario},
                {"tables", tables_json(r.tables)},
                {"consistency", consistency},
                {"verdict", verdict},
                {"ch_max", r.ch ? entry_json(r.ch->max_value) : Json(nullptr)},
                {"timing", timing_json(r.timing_ms)}};
    if (!r.spectra.empty()) {
        Json spectra = Json::array();
        for (const auto& s : r.spectra) {
            Json blocks = Json::array();
            for (std::size_t b = 0; b < 2; ++b) {
                blocks.push_back({{"eigenvalues", s.eigenvalues[b]},
                                  {"min_gap", optional_json(s.min_gap[b])},
                                  {"max_leakage", s.max_leakage[b]}});
            }
            spectra.push_back({{"surface", std::string(to_string(s.surface))}, {"blocks", blocks}});
        }
        out["spectra"] = spectra;
    }
    return out;
}

Json sweep_json(const SweepReport& r) {
    Json rows = Json::array();
    double worst = 0.0;
    for (const auto& row : r.rows) {
        rows.push_back({{"phi", row.phi},
                        {"S", row.s},
                        {"max_ch", row.max_ch},
                        {"lp_feasible", row.lp_feasible},
                        {"phase1_objective", row.phase1_objective},
                        {"max_consistency_deviation", row.max_consistency_deviation}});
        worst = std::max(worst, row.max_consistency_deviation);
    }
    return {{"scenario", "singlet_sweep"},
            {"tables", Json::array()},
            {"consistency", {{"max_deviation", worst}}},
            {"verdict", nullptr},
            {"ch_max", nullptr},
            {"timing", timing_json(r.timing_ms)},
            {"sweep",
             {{"phi_min", r.phi_min}, {"phi_max", r.phi_max}, {"tol", r.tol}, {"rows", rows}}}};
}

std::string report_csv(const RunReport& r) {
    std::ostringstream os;
    os << kTableCsvHeader << '\n';
    for (Surface s : kAllSurfaces) write_table_csv(os, r.tables[s]);
    return os.str();
}

std::string sweep_csv(const SweepReport& r) {
    std::ostringstream os;
    os << kSweepCsvHeader << '\n';
    for (const auto& row : r.rows) {
        os << format_probability(row.phi) << ',' << format_probability(row.s) << ','
           << format_probability(row.max_ch) << ',' << (row.lp_feasible ? 1 : 0) << '\n';
    }
    return os.str();
}

void text_table(std::ostream& os, const MarginalTable& t) {
    os << "  " << to_string(t.surface) << " (" << t.obs1 << ", " << t.obs2 << ")\n";
    for (const auto& [key, p] : t.probs) {
        os << "    " << t.obs1 << '=' << key.first << ' ' << t.obs2 << '=' << key.second << "  "
           << format_probability(p) << '\n';
    }
    for (const auto& n : t.notes) os << "    note: " << n << '\n';
}

std::string report_text(const RunReport& r) {
    std::ostringstream os;
    os << "scenario: " << r.scenario << "\n\ntables:\n";
    for (Surface s : kAllSurfaces) text_table(os, r.tables[s]);

    os << "\nconsistency:\n";
    os << "  no-signaling " << (r.no_signaling.passed ? "ok" : "FAILED")
       << ", max deviation " << format_probability(r.no_signaling.max_deviation) << '\n';
    for (const auto& c : r.no_signaling.checks) {
        os << "    " << c.description << ": " << format_probability(c.deviation) << '\n';
    }
    os << "  overlap " << (r.overlap.passed ? "ok" : "FAILED") << ", max deviation "
       << format_probability(r.overlap.max_deviation);
    if (!r.overlap.worst.empty()) os << " (" << r.overlap.worst << ')';
    os << '\n';

    if (!r.forced_values.empty()) {
        os << "\nforced values:\n";
        for (const auto& line : r.forced_values) os << "  " << line << '\n';
    }

    const Verdict& v = r.verdict;
    os << "\nverdict: " << (v.feasible() ? "feasible" : "infeasible")
       << (v.marginal ? " (marginal)" : "") << '\n';
    os << "  phase-1 objective " << format_probability(v.phase1_objective) << ", tol "
       << format_probability(r.tol) << ", " << v.iterations << " pivots\n";
    if (v.certificate) {
        os << "  certificate: " << v.certificate->id << " = "
           << format_probability(v.certificate->value) << '\n';
    }
    if (!v.witness.empty()) {
        os << "  witness (nonzero entries):\n";
        // Names need the problem's label order; rebuild it from alpha/beta.
        const std::array<std::vector<std::string>, 4> labels = {
            r.tables.alpha.labels1, r.tables.alpha.labels2, r.tables.beta.labels1,
            r.tables.beta.labels2};
        const std::size_t n2 = labels[1].size(), n3 = labels[2].size(), n4 = labels[3].size();
        for (std::size_t i = 0; i < v.witness.size(); ++i) {
            if (v.witness[i] == 0.0) continue;
            const std::size_t a1 = i / (n2 * n3 * n4), a2 = i / (n3 * n4) % n2,
                              b1 = i / n4 % n3, b2 = i % n4;
            os << "    A1=" << labels[0][a1] << ",A2=" << labels[1][a2] << ",B1=" << labels[2][b1]
               << ",B2=" << labels[3][b2] << "  " << format_probability(v.witness[i]) << '\n';
        }
    }

    if (r.ch) {
        os << "\nCH battery:\n";
        os << "  max " << r.ch->max_value.id << " = " << format_probability(r.ch->max_value.value)
           << '\n';
        os << "  " << (r.ch->any_violated ? "violated: " : "no violation; closest: ")
           << r.ch->most_violated.id << " = " << format_probability(r.ch->most_violated.value)
           << '\n';
    }

    for (const auto& s : r.spectra) {
        if (&s == &r.spectra.front()) os << "\nblock spectra:\n";
        for (std::size_t b = 0; b < 2; ++b) {
            os << "  " << to_string(s.surface) << " block " << b + 1 << ':';
            for (double e : s.eigenvalues[b]) os << ' ' << format_probability(e);
            os << "  gap ";
            if (s.min_gap[b]) {
                os << format_probability(*s.min_gap[b]);
            } else {
                os << "n/a";
            }
            os << "  leakage " << format_probability(s.max_leakage[b]) << '\n';
        }
    }

    if (r.timing_ms) os << "\ntiming: " << format_probability(*r.timing_ms) << " ms\n";
    return os.str();
}

std::string sweep_text(const SweepReport& r) {
    std::ostringstream os;
    os << "singlet sweep: phi in [" << format_probability(r.phi_min) << ", "
       << format_probability(r.phi_max) << "], " << r.rows.size() << " points, tol "
       << format_probability(r.tol) << "\n\n";
    os << "phi                     S                       max_ch                  lp\n";
    for (const auto& row : r.rows) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "%-23.17g %-23.17g %-23.17g %s\n", row.phi, row.s,
                      row.max_ch, row.lp_feasible ? "feasible" : "infeasible");
        os << buf;
    }
    if (r.timing_ms) os << "\ntiming: " << format_probability(*r.timing_ms) << " ms\n";
    return os.str();
}

}  // namespace

std::optional<Format> parse_format(std::string_view name) {
    if (name == "text") return Format::kText;
    if (name == "csv") return Format::kCsv;
    if (name == "json") return Format::kJson;
    return std::nullopt;
}

std::string render(const RunReport& report, Format format) {
    switch (format) {
        case Format::kText:
            return report_text(report);
        case Format::kCsv:
            return report_csv(report);
        case Format::kJson:
            return report_json(report).dump(2) + "\n";
    }
    return {};
}

std::string render(const SweepReport& report, Format format) {
    switch (format) {
        case Format::kText:
            return sweep_text(report);
        case Format::kCsv:
            return sweep_csv(report);
        case Format::kJson:
            return sweep_json(report).dump(2) + "\n";
    }
    return {};
}

}  // namespace relborn
