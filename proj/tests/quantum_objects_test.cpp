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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "relborn/hypersurface.hpp"
#include "support/random_objects.hpp"

namespace relborn {
namespace {

using testing::Rng;

const SubsystemLayout kQubits({2, 2});

std::vector<Complex> evolve(const QuantumChannel& ch, const StateVector& psi) {
    const auto& u = std::get<QuantumChannel::Unitary>(ch.kind()).u;
    return mat_vec(embed(u, psi.layout, ch.subsystem()), psi.amplitudes);
}

void expect_amplitudes(const std::vector<Complex>& got, const std::vector<double>& want,
                       double tol = 1e-14) {
    ASSERT_EQ(got.size(), want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        EXPECT_NEAR(std::abs(got[i] - want[i]), 0.0, tol) << "index " << i;
    }
}

TEST(StateVector, Construction) {
    const StateVector pp = make_state(kQubits, {1.0, 0.0, 0.0, 0.0});
    EXPECT_EQ(pp.amplitudes[0], Complex(1.0));
    EXPECT_THROW(make_state(kQubits, {0.0, 0.0, 0.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(make_state(kQubits, {1.0, 0.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(make_state(kQubits, {1.0, 1.0, 0.0, 0.0}), std::invalid_argument);
}

TEST(StateVector, HardyAmplitudesNormalized) {
    // (1 + 1 + 1 + 9) / 12.
    const double s = 1 / (2 * std::sqrt(3.0));
    const StateVector psi = make_state(kQubits, {s, -s, -s, -3 * s});
    EXPECT_NEAR(vector_norm(psi.amplitudes), 1.0, 1e-15);
    EXPECT_TRUE(same_ray(psi, hardy_jordan()));
}

TEST(StateVector, RescalesWithinTolerance) {
    const StateVector psi = make_state(kQubits, {1.0 + 5e-10, 0.0, 0.0, 0.0});
    EXPECT_NEAR(vector_norm(psi.amplitudes), 1.0, 1e-15);
}

TEST(DensityOperator, Validates) {
    EXPECT_THROW(DensityOperator(kQubits, ComplexMatrix::identity(4)), std::invalid_argument);
    EXPECT_THROW(DensityOperator(kQubits, 0.5 * ComplexMatrix::identity(2)), std::invalid_argument);
    // Unit trace and Hermitian, but one eigenvalue is -1/2.
    const Complex d[] = {1.0, 0.5, -0.5, 0.0};
    EXPECT_THROW(DensityOperator(kQubits, ComplexMatrix::diagonal(d)), std::invalid_argument);
    ComplexMatrix skew = 0.25 * ComplexMatrix::identity(4);
    skew(0, 1) = 0.1;
    EXPECT_THROW(DensityOperator(kQubits, skew), std::invalid_argument);
    EXPECT_NO_THROW(DensityOperator(kQubits, 0.25 * ComplexMatrix::identity(4)));
}

TEST(HardyJordan, AlphaProbabilities) {
    const DensityOperator rho = DensityOperator::from_state(hardy_jordan());
    const double want[] = {1.0 / 12, 1.0 / 12, 1.0 / 12, 3.0 / 4};
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(rho.matrix()(i, i).real(), want[i], 1e-15);
    EXPECT_NEAR(trace(rho.matrix()).real(), 1.0, 1e-12);
}

TEST(HardyJordan, ReducedOperator) {
    const ComplexMatrix r = DensityOperator::from_state(hardy_jordan()).reduced(0);
    const ComplexMatrix want = {{1.0 / 6, 1.0 / 6}, {1.0 / 6, 5.0 / 6}};
    EXPECT_LT(max_abs_diff(r, want), 1e-15);
}

TEST(Singlet, Probabilities) {
    const DensityOperator rho = DensityOperator::from_state(singlet());
    const double want[] = {0.0, 0.5, 0.5, 0.0};
    for (int i = 0; i < 4; ++i) EXPECT_NEAR(rho.matrix()(i, i).real(), want[i], 1e-15);
    const ComplexMatrix half = 0.5 * ComplexMatrix::identity(2);
    EXPECT_LT(max_abs_diff(rho.reduced(0), half), 1e-15);
    EXPECT_LT(max_abs_diff(rho.reduced(1), half), 1e-15);
}

TEST(Singlet, RotationalInvariance) {
    // (V (x) V) singlet = det(V) singlet.
    Rng rng(21);
    const StateVector s = singlet();
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix v = testing::random_unitary(rng, 2);
        const Complex det = v(0, 0) * v(1, 1) - v(0, 1) * v(1, 0);
        const std::vector<Complex> out = mat_vec(tensor_product(v, v), s.amplitudes);
        for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(out[i] - det * s.amplitudes[i]), 0.0, 1e-14);
    }
}

TEST(Hadamard, ActionAndInvolution) {
    const QuantumChannel h = hadamard_channel(kQubits, 0);
    const auto& u = std::get<QuantumChannel::Unitary>(h.kind()).u;
    const std::vector<Complex> plus = {1.0, 0.0};
    const double r = 1 / std::sqrt(2.0);
    expect_amplitudes(mat_vec(u, plus), {r, r});
    EXPECT_LT(max_abs_diff(u * u, ComplexMatrix::identity(2)), 1e-15);
    EXPECT_TRUE(validate_channel(h).ok);
}

TEST(Hadamard, BothSidesOnHardy) {
    const StateVector psi = hardy_jordan();
    const std::vector<Complex> out = mat_vec(
        tensor_product(std::get<QuantumChannel::Unitary>(hadamard_channel(kQubits, 0).kind()).u,
                       std::get<QuantumChannel::Unitary>(hadamard_channel(kQubits, 1).kind()).u),
        psi.amplitudes);
    const double r = 1 / std::sqrt(3.0);
    // Equal to (-1, 1, 1, 0)/sqrt(3) up to global sign.
    const double sign = out[0].real() < 0 ? 1.0 : -1.0;
    expect_amplitudes(out, {-sign * r, sign * r, sign * r, 0.0});
}

TEST(RotationChannels, ZeroIsIdentity) {
    auto [u1, u2] = rotation_channels(0.0);
    EXPECT_LT(max_abs_diff(std::get<QuantumChannel::Unitary>(u1.kind()).u, ComplexMatrix::identity(2)),
              1e-15);
    EXPECT_LT(max_abs_diff(std::get<QuantumChannel::Unitary>(u2.kind()).u, ComplexMatrix::identity(2)),
              1e-15);
}

TEST(RotationChannels, SingletAmplitudes) {
    for (double phi : {0.1, std::numbers::pi / 8, 0.5, 1.2}) {
        auto [u1, u2] = rotation_channels(phi);
        const double c = std::cos(phi), s = std::sin(phi), r = 1 / std::sqrt(2.0);
        const std::vector<Complex> gamma = evolve(u1, singlet());
        expect_amplitudes(gamma, {s * r, c * r, -c * r, s * r});
        // U1 |+> = cos(phi)|+> + sin(phi)|->.
        const auto& m1 = std::get<QuantumChannel::Unitary>(u1.kind()).u;
        EXPECT_NEAR(std::abs(m1(0, 0) - c), 0.0, 1e-15);
        EXPECT_NEAR(std::abs(m1(1, 0) - s), 0.0, 1e-15);

        const StateVector g = make_state(kQubits, gamma);
        const double c2 = std::cos(2 * phi), s2 = std::sin(2 * phi);
        expect_amplitudes(evolve(u2, g), {s2 * r, c2 * r, -c2 * r, s2 * r});
    }
}

TEST(Observable, QubitR) {
    const LocalObservable r = qubit_r_observable(1);
    EXPECT_EQ(r.subsystem(), 1u);
    EXPECT_EQ(r.labels(), (std::vector<std::string>{"+", "-"}));
    const Complex p0[] = {1.0, 0.0}, p1[] = {0.0, 1.0};
    EXPECT_EQ(r.outcome("+").projector, ComplexMatrix::diagonal(p0));
    EXPECT_EQ(r.outcome("-").projector, ComplexMatrix::diagonal(p1));
    EXPECT_EQ(r.outcome("+").projector + r.outcome("-").projector, ComplexMatrix::identity(2));
    const Complex z[] = {1.0, -1.0};
    EXPECT_EQ(r.as_operator(), ComplexMatrix::diagonal(z));
}

TEST(Observable, HardyBornPairing) {
    const LocalObservable a1 = qubit_r_observable(0), a2 = qubit_r_observable(1);
    const ComplexMatrix p =
        tensor_product(a1.outcome("+").projector, a2.outcome("+").projector);
    const DensityOperator rho = DensityOperator::from_state(hardy_jordan());
    EXPECT_NEAR(trace(p * rho.matrix()).real(), 1.0 / 12, 1e-15);
}

TEST(Observable, RejectsInvalid) {
    const Complex p0[] = {1.0, 0.0}, p1[] = {0.0, 1.0};
    using O = LocalObservable::Outcome;
    const ComplexMatrix a = ComplexMatrix::diagonal(p0), b = ComplexMatrix::diagonal(p1);
    // Incomplete.
    EXPECT_THROW(LocalObservable(0, {O{"+", 1.0, a}}), std::invalid_argument);
    // Duplicate label, duplicate eigenvalue.
    EXPECT_THROW(LocalObservable(0, {O{"+", 1.0, a}, O{"+", -1.0, b}}), std::invalid_argument);
    EXPECT_THROW(LocalObservable(0, {O{"+", 1.0, a}, O{"-", 1.0, b}}), std::invalid_argument);
    // Not idempotent.
    EXPECT_THROW(LocalObservable(0, {O{"+", 1.0, 0.5 * ComplexMatrix::identity(2)},
                                     O{"-", -1.0, 0.5 * ComplexMatrix::identity(2)}}),
                 std::invalid_argument);
    // Overlapping projectors.
    EXPECT_THROW(LocalObservable(0, {O{"+", 1.0, a}, O{"-", -1.0, a}}), std::invalid_argument);
}

TEST(Observable, Pointer) {
    const LocalObservable p = pointer_observable(0);
    EXPECT_EQ(p.local_dim(), 4u);
    const Complex plus[] = {1.0, 0.0, 1.0, 0.0};
    EXPECT_EQ(p.outcome("+").projector, ComplexMatrix::diagonal(plus));
}

TEST(Channel, Validation) {
    EXPECT_TRUE(validate_channel(hadamard_channel(kQubits, 0)).ok);
    const double p = 0.3;
    const Complex z[] = {std::sqrt(p), -std::sqrt(p)};
    const QuantumChannel deph = QuantumChannel::kraus(
        0, {std::sqrt(1 - p) * ComplexMatrix::identity(2), ComplexMatrix::diagonal(z)});
    EXPECT_TRUE(validate_channel(deph).ok);
    const ChannelReport doubled = validate_channel(
        QuantumChannel::kraus(0, {ComplexMatrix::identity(2), ComplexMatrix::identity(2)}));
    EXPECT_FALSE(doubled.ok);
    EXPECT_NEAR(doubled.deviation, 1.0, 1e-15);
    const ChannelReport not_unitary =
        validate_channel(QuantumChannel::unitary(0, 2.0 * ComplexMatrix::identity(2)));
    EXPECT_FALSE(not_unitary.ok);
}

TEST(Channel, RandomUnitariesValidate) {
    Rng rng(22);
    for (std::size_t n : {2, 3, 4}) {
        EXPECT_TRUE(validate_channel(QuantumChannel::unitary(0, testing::random_unitary(rng, n))).ok);
    }
}

TEST(Dephasing, Parameters) {
    const ComplexMatrix plus_x = {{0.5, 0.5}, {0.5, 0.5}};
    const SubsystemLayout single({2, 2});
    for (double p : {0.0, 0.2, 0.5, 0.9, 1.0}) {
        const QuantumChannel ch = dephasing_kraus(single, 0, p);
        EXPECT_TRUE(validate_channel(ch).ok) << p;
        ComplexMatrix out(2, 2);
        for (const auto& k : ch.kraus_operators()) out += k * plus_x * adjoint(k);
        EXPECT_NEAR(std::abs(out(0, 1) - 0.5 * (1 - 2 * p)), 0.0, 1e-15) << p;
        EXPECT_NEAR(std::abs(out(0, 0) - 0.5), 0.0, 1e-15) << p;
    }
    const QuantumChannel zero = dephasing_kraus(single, 0, 0.0);
    ComplexMatrix sum(2, 2);
    Rng rng(23);
    const ComplexMatrix m = testing::random_matrix(rng, 2, 2);
    for (const auto& k : zero.kraus_operators()) sum += k * m * adjoint(k);
    EXPECT_LT(max_abs_diff(sum, m), 1e-15);
    EXPECT_THROW(dephasing_kraus(single, 0, -0.1), std::invalid_argument);
    EXPECT_THROW(dephasing_kraus(single, 0, 1.1), std::invalid_argument);
}

TEST(Ancilla, Extend) {
    const StateVector pp = ancilla_extend(make_state(kQubits, {1.0, 0.0, 0.0, 0.0}));
    EXPECT_EQ(pp.layout, SubsystemLayout({4, 4}));
    EXPECT_EQ(pp.amplitudes[0], Complex(1.0));

    const StateVector psi = ancilla_extend(hardy_jordan());
    const double s = 1 / (2 * std::sqrt(3.0));
    // Block basis |r p> -> 2r + p; correlated indices 0 and 3 per side.
    std::vector<double> want(16, 0.0);
    want[4 * 0 + 0] = s;
    want[4 * 0 + 3] = -s;
    want[4 * 3 + 0] = -s;
    want[4 * 3 + 3] = -3 * s;
    expect_amplitudes(psi.amplitudes, want, 1e-15);
    EXPECT_NEAR(vector_norm(psi.amplitudes), 1.0, 1e-15);
}

TEST(Ancilla, BlockHadamard) {
    const SubsystemLayout blocks({4, 4});
    const QuantumChannel ch = block_hadamard_channel(blocks, 0);
    const auto& u = std::get<QuantumChannel::Unitary>(ch.kind()).u;
    EXPECT_LT(max_abs_diff(adjoint(u) * u, ComplexMatrix::identity(4)), 1e-15);
    const double r = 1 / std::sqrt(2.0);
    expect_amplitudes(mat_vec(u, std::vector<Complex>{1.0, 0.0, 0.0, 0.0}), {r, 0.0, 0.0, r});
    expect_amplitudes(mat_vec(u, std::vector<Complex>{0.0, 1.0, 0.0, 0.0}), {0.0, 1.0, 0.0, 0.0});
    expect_amplitudes(mat_vec(u, std::vector<Complex>{0.0, 0.0, 1.0, 0.0}), {0.0, 0.0, 1.0, 0.0});
}

}  // namespace
}  // namespace relborn
