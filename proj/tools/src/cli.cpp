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

#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <numbers>
#include <string>

#include "CLI11.hpp"
#include "relborn/config.hpp"
#include "relborn/emit.hpp"
#include "relborn/scenarios.hpp"

namespace relborn::cli {

namespace {

struct Common {
    Format format = Format::kText;
    std::string out_path;
    double tol = kFeasibilityTol;
    bool timing = false;
};

void add_common(CLI::App* sub, Common& c) {
    static const std::map<std::string, Format> formats = {
        {"text", Format::kText}, {"csv", Format::kCsv}, {"json", Format::kJson}};
    sub->add_option("--format", c.format, "text, csv or json")
        ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    sub->add_option("--out", c.out_path, "write the report here instead of stdout");
    sub->add_option("--tol", c.tol, "feasibility tolerance")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--timing", c.timing, "record wall time (output is then not reproducible)");
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        out.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::ios_base::failure("cannot open '" + path + "' for writing");
    f << text;
    f.close();
    if (!f) throw std::ios_base::failure("failed writing '" + path + "'");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Four-hypersurface Born-rule scenarios and joint-distribution feasibility",
                 "relborn"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "relborn 0.1.0");

    Common common;
    CLI::App* hardy = app.add_subcommand("hardy", "Hardy-Jordan state, Hadamard on each side");
    CLI::App* ancilla =
        app.add_subcommand("ancilla", "Hardy-Jordan state with pointer ancillas");
    CLI::App* sweep = app.add_subcommand("sweep", "singlet with opposite rotations over phi");
    CLI::App* custom = app.add_subcommand("custom", "run a scenario from a config file");
    for (CLI::App* sub : {hardy, ancilla, sweep, custom}) add_common(sub, common);

    double phi_min = 0.0, phi_max = std::numbers::pi / 2;
    std::size_t steps = kDefaultSweepSteps;
    unsigned threads = 0;
    sweep->add_option("--phi-min", phi_min, "radians")->capture_default_str();
    sweep->add_option("--phi-max", phi_max, "radians")->capture_default_str();
    sweep->add_option("--steps", steps, "grid points, both ends included")
        ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 24))
        ->capture_default_str();
    sweep->add_option("--threads", threads, "worker threads (0 = all cores)");

    std::string config_path;
    custom->add_option("--config", config_path, "scenario file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    const auto t0 = std::chrono::steady_clock::now();
    try {
        std::string text;
        if (*sweep) {
            SweepReport r = run_singlet_sweep(phi_min, phi_max, steps, common.tol, threads);
            if (common.timing) r.timing_ms = elapsed_ms(t0);
            text = render(r, common.format);
        } else {
            RunReport r;
            if (*hardy) {
                r = run_hardy(common.tol);
            } else if (*ancilla) {
                r = run_ancilla(common.tol);
            } else {
                r = run_custom(config_path, common.tol);
            }
            if (common.timing) r.timing_ms = elapsed_ms(t0);
            text = render(r, common.format);
        }
        emit(text, common.out_path, out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        // Bad sweep bounds and similar argument problems.
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    return kExitOk;
}

}  // namespace relborn::cli
