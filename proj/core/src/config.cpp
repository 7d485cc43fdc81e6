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

#include "relborn/config.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

namespace relborn {

ConfigError::ConfigError(const std::string& source, int line, const std::string& what)
    : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

namespace {

class Parser {
   public:
    explicit Parser(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const YAML::Node& at, const std::string& what) const {
        throw ConfigError(source_, line_of(at), what);
    }

    static int line_of(const YAML::Node& n) { return n.IsDefined() ? n.Mark().line + 1 : 0; }

    YAML::Node require(const YAML::Node& parent, const char* key) const {
        const YAML::Node n = parent[key];
        if (!n) fail(parent, std::string("missing key '") + key + "'");
        return n;
    }

    double number(const YAML::Node& n) const {
        if (!n.IsScalar()) fail(n, "expected a number");
        try {
            return n.as<double>();
        } catch (const YAML::Exception&) {
            fail(n, "expected a number, got '" + n.Scalar() + "'");
        }
    }

    std::size_t index(const YAML::Node& n) const {
        if (!n.IsScalar()) fail(n, "expected a non-negative integer");
        try {
            const long v = n.as<long>();
            if (v < 0) fail(n, "expected a non-negative integer");
            return static_cast<std::size_t>(v);
        } catch (const YAML::Exception&) {
            fail(n, "expected a non-negative integer, got '" + n.Scalar() + "'");
        }
    }

    Complex complex(const YAML::Node& n) const {
        if (n.IsScalar()) return number(n);
        if (n.IsSequence() && n.size() == 2) return {number(n[0]), number(n[1])};
        fail(n, "expected a number or a [re, im] pair");
    }

    ComplexMatrix matrix(const YAML::Node& n) const {
        if (!n.IsSequence() || n.size() == 0) fail(n, "expected a matrix as a list of rows");
        const std::size_t rows = n.size();
        std::size_t cols = 0;
        std::vector<Complex> entries;
        for (const YAML::Node& row : n) {
            if (!row.IsSequence()) fail(row, "matrix row must be a list");
            if (cols == 0) cols = row.size();
            if (row.size() != cols || cols == 0) fail(row, "ragged matrix row");
            for (const YAML::Node& z : row) entries.push_back(complex(z));
        }
        try {
            return ComplexMatrix(rows, cols, std::move(entries));
        } catch (const std::invalid_argument& e) {
            fail(n, e.what());
        }
    }

    ChannelSpec channel(const YAML::Node& n) const {
        ChannelSpec c;
        c.line = line_of(n);
        if (n.IsScalar()) {
            const std::string s = n.Scalar();
            const auto colon = s.find(':');
            c.kind = s.substr(0, colon);
            if (c.kind == "rotation" || c.kind == "dephasing") {
                if (colon == std::string::npos) fail(n, c.kind + " needs a parameter, e.g. " + c.kind + ":0.3");
                const std::string arg = s.substr(colon + 1);
                std::size_t used = 0;
                try {
                    c.parameter = std::stod(arg, &used);
                } catch (const std::exception&) {
                    used = 0;
                }
                if (used == 0 || used != arg.size()) fail(n, "bad parameter '" + arg + "'");
            } else if (colon != std::string::npos ||
                       (c.kind != "identity" && c.kind != "hadamard" && c.kind != "block_hadamard")) {
                fail(n, "unknown channel '" + s + "'");
            }
            return c;
        }
        if (n.IsMap()) {
            if (n["unitary"]) {
                c.kind = "unitary";
                c.matrices.push_back(matrix(n["unitary"]));
                return c;
            }
            if (n["kraus"]) {
                c.kind = "kraus";
                const YAML::Node list = n["kraus"];
                if (!list.IsSequence() || list.size() == 0) fail(list, "kraus must be a non-empty list");
                for (const YAML::Node& m : list) c.matrices.push_back(matrix(m));
                return c;
            }
        }
        fail(n, "channel must be a builder name or a map with 'unitary' or 'kraus'");
    }

    ObservableSpec observable(const YAML::Node& n) const {
        if (!n.IsMap()) fail(n, "observable must be a map with labels and eigenvalues");
        ObservableSpec o;
        o.line = line_of(n);
        const YAML::Node labels = require(n, "labels");
        const YAML::Node values = require(n, "eigenvalues");
        if (!labels.IsSequence()) fail(labels, "labels must be a list");
        if (!values.IsSequence()) fail(values, "eigenvalues must be a list");
        for (const YAML::Node& l : labels) {
            if (!l.IsScalar()) fail(l, "label must be a string");
            o.labels.push_back(l.Scalar());
        }
        for (const YAML::Node& v : values) o.eigenvalues.push_back(number(v));
        if (const YAML::Node g = n["groups"]) {
            if (!g.IsSequence()) fail(g, "groups must be a list of index lists");
            std::vector<std::vector<std::size_t>> groups;
            for (const YAML::Node& grp : g) {
                if (!grp.IsSequence()) fail(grp, "group must be a list of basis indices");
                std::vector<std::size_t> idx;
                for (const YAML::Node& i : grp) idx.push_back(index(i));
                groups.push_back(std::move(idx));
            }
            o.groups = std::move(groups);
        }
        return o;
    }

    std::array<ObservableSpec, 2> observable_pair(const YAML::Node& n) const {
        if (!n.IsSequence() || n.size() != 2) fail(n, "expected two observables (subsystem 1, 2)");
        return {observable(n[0]), observable(n[1])};
    }

    ScenarioConfig parse(const std::string& text) const {
        YAML::Node root;
        try {
            root = YAML::Load(text);
        } catch (const YAML::Exception& e) {
            throw ConfigError(source_, e.mark.line + 1, e.msg);
        }
        if (!root.IsMap()) throw ConfigError(source_, 1, "top level must be a map");

        ScenarioConfig cfg;
        cfg.source = source_;
        const YAML::Node name = root["name"];
        cfg.name = name && name.IsScalar() ? name.Scalar() : "custom";

        const YAML::Node dims = require(root, "dims");
        if (!dims.IsSequence()) fail(dims, "dims must be a list");
        cfg.dims_line = line_of(dims);
        for (const YAML::Node& d : dims) cfg.dims.push_back(index(d));

        const YAML::Node state = require(root, "state");
        if (!state.IsSequence()) fail(state, "state must be a list of amplitudes");
        cfg.state_line = line_of(state);
        for (const YAML::Node& z : state) cfg.amplitudes.push_back(complex(z));

        const YAML::Node channels = require(root, "channels");
        if (!channels.IsSequence() || channels.size() != 2) {
            fail(channels, "channels must list exactly two entries (subsystem 1, 2)");
        }
        cfg.channels = {channel(channels[0]), channel(channels[1])};

        cfg.observables_alpha = observable_pair(require(root, "observables"));
        if (const YAML::Node beta = root["observables_beta"]) {
            cfg.observables_beta = observable_pair(beta);
        } else {
            cfg.observables_beta = cfg.observables_alpha;
        }
        return cfg;
    }

   private:
    std::string source_;
};

QuantumChannel make_channel(const ScenarioConfig& cfg, const SubsystemLayout& layout,
                            std::size_t subsystem) {
    const ChannelSpec& c = cfg.channels[subsystem];
    try {
        if (c.kind == "identity") return QuantumChannel::identity(subsystem, layout.dim(subsystem));
        if (c.kind == "hadamard") return hadamard_channel(layout, subsystem);
        if (c.kind == "block_hadamard") return block_hadamard_channel(layout, subsystem);
        if (c.kind == "dephasing") return dephasing_kraus(layout, subsystem, c.parameter);
        if (c.kind == "rotation") {
            if (layout != SubsystemLayout({2, 2})) {
                throw std::invalid_argument("rotation channels need a 2x2 layout");
            }
            auto pair = rotation_channels(c.parameter);
            return subsystem == 0 ? pair.first : pair.second;
        }
        QuantumChannel ch = c.kind == "unitary" ? QuantumChannel::unitary(subsystem, c.matrices[0])
                                                : QuantumChannel::kraus(subsystem, c.matrices);
        if (ch.local_dim() != layout.dim(subsystem)) {
            throw std::invalid_argument("operator dimension " + std::to_string(ch.local_dim()) +
                                        " does not match subsystem dimension " +
                                        std::to_string(layout.dim(subsystem)));
        }
        const ChannelReport r = validate_channel(ch);
        if (!r.ok) throw std::invalid_argument(r.message);
        return ch;
    } catch (const std::exception& e) {
        throw ConfigError(cfg.source, c.line,
                          "channel " + std::to_string(subsystem + 1) + ": " + e.what());
    }
}

LocalObservable make_observable(const ScenarioConfig& cfg, const ObservableSpec& o,
                                const SubsystemLayout& layout, std::size_t subsystem) {
    try {
        if (o.groups) {
            return grouped_observable(subsystem, layout.dim(subsystem), o.labels, o.eigenvalues,
                                      *o.groups);
        }
        if (o.labels.size() != layout.dim(subsystem)) {
            throw std::invalid_argument(std::to_string(o.labels.size()) + " outcomes for a " +
                                        std::to_string(layout.dim(subsystem)) +
                                        "-dim subsystem (use groups to coarse-grain)");
        }
        return computational_observable(subsystem, o.labels, o.eigenvalues);
    } catch (const std::exception& e) {
        throw ConfigError(cfg.source, o.line,
                          "observable on subsystem " + std::to_string(subsystem + 1) + ": " +
                              e.what());
    }
}

}  // namespace

ScenarioConfig parse_config(const std::string& text, const std::string& source) {
    return Parser(source).parse(text);
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, 0, "cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path);
}

FourSurfaceScenario build_scenario(const ScenarioConfig& cfg) {
    SubsystemLayout layout;
    try {
        layout = SubsystemLayout(cfg.dims);
        if (layout.count() != 2) throw std::invalid_argument("exactly two subsystems are supported");
    } catch (const std::exception& e) {
        throw ConfigError(cfg.source, cfg.dims_line, std::string("dims: ") + e.what());
    }
    std::optional<StateVector> psi;
    try {
        psi = make_state(layout, cfg.amplitudes);
    } catch (const std::exception& e) {
        throw ConfigError(cfg.source, cfg.state_line, std::string("state: ") + e.what());
    }
    QuantumChannel ch1 = make_channel(cfg, layout, 0);
    QuantumChannel ch2 = make_channel(cfg, layout, 1);
    LocalObservable a1 = make_observable(cfg, cfg.observables_alpha[0], layout, 0);
    LocalObservable a2 = make_observable(cfg, cfg.observables_alpha[1], layout, 1);
    LocalObservable b1 = make_observable(cfg, cfg.observables_beta[0], layout, 0);
    LocalObservable b2 = make_observable(cfg, cfg.observables_beta[1], layout, 1);
    try {
        return FourSurfaceScenario(DensityOperator::from_state(*psi), std::move(ch1), std::move(ch2),
                                   std::move(a1), std::move(a2), std::move(b1), std::move(b2));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(cfg.source, 1, e.what());
    }
}

}  // namespace relborn
