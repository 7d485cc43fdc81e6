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

#include "relborn/quantum_objects.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace relborn {

namespace {

const Complex kI{0.0, 1.0};

void require_local_dim(const SubsystemLayout& layout, std::size_t subsystem, std::size_t want,
                       const char* who) {
    const std::size_t d = layout.dim(subsystem);
    if (d != want) {
        throw std::invalid_argument(std::string(who) + ": subsystem " +
                                    std::to_string(subsystem + 1) + " has dimension " +
                                    std::to_string(d) + ", expected " + std::to_string(want));
    }
}

std::string fmt_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

}  // namespace

// States ------------------------------------------------------------------------

StateVector make_state(SubsystemLayout layout, std::vector<Complex> amplitudes) {
    if (amplitudes.size() != layout.total_dim()) {
        throw std::invalid_argument("make_state: " + std::to_string(amplitudes.size()) +
                                    " amplitudes for layout " + layout.to_string());
    }
    for (Complex z : amplitudes) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("make_state: non-finite amplitude");
        }
    }
    const double norm = vector_norm(amplitudes);
    if (std::abs(norm - 1.0) > kStateNormTol) {
        throw std::invalid_argument("make_state: state norm " + std::to_string(norm) +
                                    " deviates from 1");
    }
    if (std::abs(norm * norm - 1.0) > 1e-12) {
        for (Complex& z : amplitudes) z /= norm;
    }
    return StateVector{std::move(layout), std::move(amplitudes)};
}

bool same_ray(const StateVector& a, const StateVector& b, double tol) {
    if (a.layout != b.layout) return false;
    return std::abs(std::abs(inner_product(a.amplitudes, b.amplitudes)) - 1.0) <= tol;
}

DensityOperator::DensityOperator(SubsystemLayout layout, ComplexMatrix matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
    const std::size_t n = layout_.total_dim();
    if (!matrix_.is_square() || matrix_.rows() != n) {
        throw std::invalid_argument("DensityOperator: matrix does not match layout " +
                                    layout_.to_string());
    }
    if (hermiticity_defect(matrix_) > kHermitianTol) {
        throw std::invalid_argument("DensityOperator: matrix is not Hermitian");
    }
    const Complex tr = trace(matrix_);
    if (std::abs(tr - Complex{1.0}) > 1e-12) {
        throw std::invalid_argument("DensityOperator: trace " + std::to_string(tr.real()) +
                                    " is not 1");
    }
    const Eigensystem es = hermitian_eigensystem(matrix_);
    if (es.values.back() < -1e-10) {
        throw std::invalid_argument("DensityOperator: negative eigenvalue " +
                                    fmt_double(es.values.back()));
    }
}

DensityOperator DensityOperator::from_state(const StateVector& psi) {
    return DensityOperator(psi.layout, ComplexMatrix::outer(psi.amplitudes, psi.amplitudes));
}

ComplexMatrix DensityOperator::reduced(std::size_t subsystem) const {
    return partial_trace(matrix_, layout_, subsystem);
}

// Observables ----------------------------------------------------------------------

LocalObservable::LocalObservable(std::size_t subsystem, std::vector<Outcome> outcomes)
    : subsystem_(subsystem), outcomes_(std::move(outcomes)) {
    if (outcomes_.size() < 2) throw std::invalid_argument("LocalObservable: fewer than 2 outcomes");
    const std::size_t d = outcomes_.front().projector.rows();
    std::set<std::string> labels;
    std::set<double> values;
    ComplexMatrix sum(d, d);
    for (const Outcome& o : outcomes_) {
        if (o.label.empty()) throw std::invalid_argument("LocalObservable: empty label");
        if (!labels.insert(o.label).second) {
            throw std::invalid_argument("LocalObservable: duplicate label '" + o.label + "'");
        }
        if (!values.insert(o.eigenvalue).second) {
            throw std::invalid_argument("LocalObservable: duplicate eigenvalue " +
                                        fmt_double(o.eigenvalue));
        }
        const ComplexMatrix& p = o.projector;
        if (!p.is_square() || p.rows() != d) {
            throw std::invalid_argument("LocalObservable: projector shape mismatch");
        }
        if (hermiticity_defect(p) > kHermitianTol || max_abs_diff(p * p, p) > kHermitianTol) {
            throw std::invalid_argument("LocalObservable: '" + o.label + "' is not a projector");
        }
        sum += p;
    }
    for (std::size_t i = 0; i < outcomes_.size(); ++i) {
        for (std::size_t j = i + 1; j < outcomes_.size(); ++j) {
            if (max_abs(outcomes_[i].projector * outcomes_[j].projector) > kHermitianTol) {
                throw std::invalid_argument("LocalObservable: projectors not orthogonal");
            }
        }
    }
    if (max_abs_diff(sum, ComplexMatrix::identity(d)) > 1e-12) {
        throw std::invalid_argument("LocalObservable: projectors do not sum to identity");
    }
}

const LocalObservable::Outcome& LocalObservable::outcome(const std::string& label) const {
    return outcomes_[index_of(label)];
}

std::size_t LocalObservable::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < outcomes_.size(); ++i) {
        if (outcomes_[i].label == label) return i;
    }
    throw std::invalid_argument("LocalObservable: unknown label '" + label + "'");
}

std::vector<std::string> LocalObservable::labels() const {
    std::vector<std::string> out;
    for (const Outcome& o : outcomes_) out.push_back(o.label);
    return out;
}

ComplexMatrix LocalObservable::as_operator() const {
    ComplexMatrix op(local_dim(), local_dim());
    for (const Outcome& o : outcomes_) op += o.eigenvalue * o.projector;
    return op;
}

LocalObservable computational_observable(std::size_t subsystem, std::vector<std::string> labels,
                                         std::vector<double> eigenvalues) {
    const std::size_t n = labels.size();
    std::vector<std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) groups.push_back({i});
    return grouped_observable(subsystem, n, std::move(labels), std::move(eigenvalues), groups);
}

LocalObservable grouped_observable(std::size_t subsystem, std::size_t local_dim,
                                   std::vector<std::string> labels, std::vector<double> eigenvalues,
                                   const std::vector<std::vector<std::size_t>>& groups) {
    if (labels.size() != eigenvalues.size() || labels.size() != groups.size()) {
        throw std::invalid_argument("observable: labels, eigenvalues and groups differ in count");
    }
    std::vector<int> seen(local_dim, 0);
    std::vector<LocalObservable::Outcome> outcomes;
    for (std::size_t k = 0; k < labels.size(); ++k) {
        ComplexMatrix p(local_dim, local_dim);
        for (std::size_t idx : groups[k]) {
            if (idx >= local_dim) throw std::invalid_argument("observable: basis index out of range");
            ++seen[idx];
            p(idx, idx) = 1.0;
        }
        outcomes.push_back({std::move(labels[k]), eigenvalues[k], std::move(p)});
    }
    if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
        throw std::invalid_argument("observable: groups do not partition the local basis");
    }
    return LocalObservable(subsystem, std::move(outcomes));
}

LocalObservable qubit_r_observable(std::size_t subsystem) {
    return computational_observable(subsystem, {"+", "-"}, {1.0, -1.0});
}

LocalObservable pointer_observable(std::size_t subsystem) {
    return grouped_observable(subsystem, 4, {"+", "-"}, {1.0, -1.0}, {{0, 2}, {1, 3}});
}

// Channels ---------------------------------------------------------------------------

QuantumChannel QuantumChannel::unitary(std::size_t subsystem, ComplexMatrix u) {
    if (!u.is_square() || u.rows() == 0) {
        throw std::invalid_argument("QuantumChannel: unitary must be square");
    }
    const std::size_t d = u.rows();
    return QuantumChannel(subsystem, d, Unitary{std::move(u)});
}

QuantumChannel QuantumChannel::kraus(std::size_t subsystem, std::vector<ComplexMatrix> ops) {
    if (ops.empty()) throw std::invalid_argument("QuantumChannel: empty Kraus list");
    const std::size_t d = ops.front().rows();
    for (const ComplexMatrix& k : ops) {
        if (k.rows() != d || k.cols() != d) {
            throw std::invalid_argument("QuantumChannel: Kraus operators must share a square shape");
        }
    }
    return QuantumChannel(subsystem, d, Kraus{std::move(ops)});
}

QuantumChannel QuantumChannel::identity(std::size_t subsystem, std::size_t local_dim) {
    return unitary(subsystem, ComplexMatrix::identity(local_dim));
}

std::vector<ComplexMatrix> QuantumChannel::kraus_operators() const {
    if (const auto* u = std::get_if<Unitary>(&kind_)) return {u->u};
    return std::get<Kraus>(kind_).ops;
}

ChannelReport validate_channel(const QuantumChannel& ch, double tol) {
    ComplexMatrix gram(ch.local_dim(), ch.local_dim());
    for (const ComplexMatrix& k : ch.kraus_operators()) gram += adjoint(k) * k;
    ChannelReport r;
    r.deviation = max_abs_diff(gram, ComplexMatrix::identity(ch.local_dim()));
    r.ok = r.deviation <= tol;
    if (!r.ok) {
        r.message = std::string(ch.is_unitary() ? "U^dagger U" : "sum_k K_k^dagger K_k") +
                    " deviates from identity by " + fmt_double(r.deviation) + " on subsystem " +
                    std::to_string(ch.subsystem() + 1);
    }
    return r;
}

// Named objects ------------------------------------------------------------------------

StateVector hardy_jordan() {
    const double s = 1.0 / (2.0 * std::sqrt(3.0));
    return make_state(SubsystemLayout({2, 2}), {s, -s, -s, -3.0 * s});
}

StateVector singlet() {
    const double s = 1.0 / std::sqrt(2.0);
    return make_state(SubsystemLayout({2, 2}), {0.0, s, -s, 0.0});
}

QuantumChannel hadamard_channel(const SubsystemLayout& layout, std::size_t subsystem) {
    require_local_dim(layout, subsystem, 2, "hadamard_channel");
    const double s = 1.0 / std::sqrt(2.0);
    return QuantumChannel::unitary(subsystem, ComplexMatrix{{s, s}, {s, -s}});
}

ComplexMatrix rotation_generator() {
    // i(|-><+| - |+><-|): entry (-,+) = i, entry (+,-) = -i.
    return ComplexMatrix{{0.0, -kI}, {kI, 0.0}};
}

std::pair<QuantumChannel, QuantumChannel> rotation_channels(double phi) {
    const ComplexMatrix h = rotation_generator();
    return {QuantumChannel::unitary(0, exp_generator(h, phi)),
            QuantumChannel::unitary(1, exp_generator(-1.0 * h, phi))};
}

QuantumChannel dephasing_kraus(const SubsystemLayout& layout, std::size_t subsystem, double p) {
    require_local_dim(layout, subsystem, 2, "dephasing_kraus");
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("dephasing_kraus: p = " + fmt_double(p) + " outside [0, 1]");
    }
    const double a = std::sqrt(1.0 - p);
    const double b = std::sqrt(p);
    return QuantumChannel::kraus(subsystem, {ComplexMatrix{{a, 0.0}, {0.0, a}},
                                             ComplexMatrix{{b, 0.0}, {0.0, -b}}});
}

StateVector ancilla_extend(const StateVector& state) {
    if (state.layout != SubsystemLayout({2, 2})) {
        throw std::invalid_argument("ancilla_extend: expected a 2x2 state, got " +
                                    state.layout.to_string());
    }
    std::vector<Complex> out(16);
    for (std::size_t r1 = 0; r1 < 2; ++r1) {
        for (std::size_t r2 = 0; r2 < 2; ++r2) {
            // |r p> with p = r sits at block index 3r.
            out[4 * (3 * r1) + 3 * r2] = state.amplitudes[2 * r1 + r2];
        }
    }
    return make_state(SubsystemLayout({4, 4}), std::move(out));
}

QuantumChannel block_hadamard_channel(const SubsystemLayout& layout, std::size_t subsystem) {
    require_local_dim(layout, subsystem, 4, "block_hadamard_channel");
    const double s = 1.0 / std::sqrt(2.0);
    ComplexMatrix u = ComplexMatrix::identity(4);
    u(0, 0) = s;
    u(0, 3) = s;
    u(3, 0) = s;
    u(3, 3) = -s;
    return QuantumChannel::unitary(subsystem, std::move(u));
}

}  // namespace relborn
