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

#include "relborn/hypersurface.hpp"

#include <algorithm>
#include <stdexcept>

namespace relborn {

std::string_view to_string(Surface s) {
    switch (s) {
        case Surface::kAlpha: return "alpha";
        case Surface::kBeta: return "beta";
        case Surface::kGamma: return "gamma";
        case Surface::kDelta: return "delta";
    }
    return "?";
}

namespace {

void require_on(const LocalObservable& obs, std::size_t subsystem, std::size_t dim,
                const char* name) {
    if (obs.subsystem() != subsystem || obs.local_dim() != dim) {
        throw std::invalid_argument(std::string("scenario: observable ") + name +
                                    " must act on subsystem " + std::to_string(subsystem + 1) +
                                    " (dimension " + std::to_string(dim) + ")");
    }
}

void require_channel(const QuantumChannel& ch, std::size_t subsystem, std::size_t dim) {
    if (ch.subsystem() != subsystem || ch.local_dim() != dim) {
        throw std::invalid_argument("scenario: channel " + std::to_string(subsystem + 1) +
                                    " must act on subsystem " + std::to_string(subsystem + 1) +
                                    " (dimension " + std::to_string(dim) + ")");
    }
    const ChannelReport r = validate_channel(ch);
    if (!r.ok) throw std::invalid_argument("scenario: invalid channel: " + r.message);
}

}  // namespace

FourSurfaceScenario::FourSurfaceScenario(DensityOperator rho_alpha, QuantumChannel channel_1,
                                         QuantumChannel channel_2, LocalObservable a1,
                                         LocalObservable a2, LocalObservable b1,
                                         LocalObservable b2)
    : rho_alpha_(std::move(rho_alpha)),
      channel_1_(std::move(channel_1)),
      channel_2_(std::move(channel_2)),
      a1_(std::move(a1)),
      a2_(std::move(a2)),
      b1_(std::move(b1)),
      b2_(std::move(b2)) {
    const SubsystemLayout& lay = rho_alpha_.layout();
    if (lay.count() != 2) {
        throw std::invalid_argument("scenario: expected two subsystems, got layout " +
                                    lay.to_string());
    }
    require_channel(channel_1_, 0, lay.dim(0));
    require_channel(channel_2_, 1, lay.dim(1));
    require_on(a1_, 0, lay.dim(0), "A1");
    require_on(b1_, 0, lay.dim(0), "B1");
    require_on(a2_, 1, lay.dim(1), "A2");
    require_on(b2_, 1, lay.dim(1), "B2");
}

const QuantumChannel& FourSurfaceScenario::channel(std::size_t subsystem) const {
    if (subsystem == 0) return channel_1_;
    if (subsystem == 1) return channel_2_;
    throw std::out_of_range("scenario: no channel on subsystem " + std::to_string(subsystem + 1));
}

std::pair<const LocalObservable&, const LocalObservable&> FourSurfaceScenario::observables_on(
    Surface s) const {
    switch (s) {
        case Surface::kAlpha: return {a1_, a2_};
        case Surface::kBeta: return {b1_, b2_};
        case Surface::kGamma: return {b1_, a2_};
        case Surface::kDelta: return {a1_, b2_};
    }
    throw std::logic_error("unknown surface");
}

std::pair<std::string, std::string> FourSurfaceScenario::observable_names(Surface s) const {
    switch (s) {
        case Surface::kAlpha: return {"A1", "A2"};
        case Surface::kBeta: return {"B1", "B2"};
        case Surface::kGamma: return {"B1", "A2"};
        case Surface::kDelta: return {"A1", "B2"};
    }
    throw std::logic_error("unknown surface");
}

ComplexMatrix apply_channel(const ComplexMatrix& rho, const SubsystemLayout& layout,
                            const QuantumChannel& channel) {
    ComplexMatrix out(rho.rows(), rho.cols());
    for (const ComplexMatrix& k : channel.kraus_operators()) {
        const ComplexMatrix full = embed(k, layout, channel.subsystem());
        out += full * rho * adjoint(full);
    }
    return out;
}

DensityOperator state_on(const FourSurfaceScenario& scenario, Surface surface) {
    const SubsystemLayout& lay = scenario.layout();
    const ComplexMatrix& rho = scenario.rho_alpha().matrix();
    switch (surface) {
        case Surface::kAlpha: return scenario.rho_alpha();
        case Surface::kBeta:
            return DensityOperator(
                lay, apply_channel(apply_channel(rho, lay, scenario.channel(0)), lay,
                                   scenario.channel(1)));
        case Surface::kGamma: return DensityOperator(lay, apply_channel(rho, lay, scenario.channel(0)));
        case Surface::kDelta: return DensityOperator(lay, apply_channel(rho, lay, scenario.channel(1)));
    }
    throw std::logic_error("unknown surface");
}

ComplexMatrix effective_observable(const QuantumChannel& channel, const LocalObservable& b) {
    if (channel.subsystem() != b.subsystem() || channel.local_dim() != b.local_dim()) {
        throw std::invalid_argument("effective_observable: channel on subsystem " +
                                    std::to_string(channel.subsystem() + 1) +
                                    ", observable on subsystem " +
                                    std::to_string(b.subsystem() + 1));
    }
    const ComplexMatrix b_op = b.as_operator();
    ComplexMatrix out(b_op.rows(), b_op.cols());
    for (const ComplexMatrix& k : channel.kraus_operators()) out += adjoint(k) * b_op * k;
    return out;
}

NoSignalingReport check_no_signaling(const FourSurfaceScenario& scenario, double tol) {
    std::array<DensityOperator, 4> states = {
        state_on(scenario, Surface::kAlpha), state_on(scenario, Surface::kBeta),
        state_on(scenario, Surface::kGamma), state_on(scenario, Surface::kDelta)};
    const auto& [alpha, beta, gamma, delta] = states;

    NoSignalingReport report;
    auto compare = [&](const DensityOperator& x, const DensityOperator& y, std::size_t subsystem,
                       std::string description) {
        const double dev = max_abs_diff(x.reduced(subsystem), y.reduced(subsystem));
        report.checks.push_back({std::move(description), dev});
        report.max_deviation = std::max(report.max_deviation, dev);
    };
    compare(gamma, alpha, 1, "subsystem 2: gamma vs alpha");
    compare(delta, alpha, 0, "subsystem 1: delta vs alpha");
    compare(beta, gamma, 0, "subsystem 1: beta vs gamma");
    compare(beta, delta, 1, "subsystem 2: beta vs delta");
    report.passed = report.max_deviation <= tol;
    return report;
}

}  // namespace relborn
