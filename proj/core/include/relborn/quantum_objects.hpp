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

// States, observables and channels on a two-party tensor-product space,
// together with builders for the named objects used by the demonstrations.
//
// Subsystem indices are zero-based in code. Reports print them one-based
// (A1, B2, ...).

#ifndef RELBORN_QUANTUM_OBJECTS_HPP
#define RELBORN_QUANTUM_OBJECTS_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "relborn/tensor_algebra.hpp"

namespace relborn {

/// make_state rejects inputs whose norm is further than this from 1.
inline constexpr double kStateNormTol = 1e-9;
/// Completeness / unitarity tolerance for channels.
inline constexpr double kChannelTol = 1e-10;

struct StateVector {
    SubsystemLayout layout;
    std::vector<Complex> amplitudes;
};

/// Validates length and norm. Inputs within kStateNormTol of unit norm are
/// rescaled so the stored vector satisfies |psi|^2 = 1 to 1e-12.
StateVector make_state(SubsystemLayout layout, std::vector<Complex> amplitudes);

/// |<a|b>| == 1 within tol, i.e. equal up to a global phase.
bool same_ray(const StateVector& a, const StateVector& b, double tol = 1e-10);

class DensityOperator {
   public:
    /// Throws std::invalid_argument unless Hermitian (1e-10), unit trace
    /// (1e-12) and positive semidefinite (eigenvalues >= -1e-10).
    DensityOperator(SubsystemLayout layout, ComplexMatrix matrix);
    static DensityOperator from_state(const StateVector& psi);

    const SubsystemLayout& layout() const { return layout_; }
    const ComplexMatrix& matrix() const { return matrix_; }

    /// Reduced operator on one subsystem.
    ComplexMatrix reduced(std::size_t subsystem) const;

   private:
    SubsystemLayout layout_;
    ComplexMatrix matrix_;
};

/// A projective observable on one subsystem with diagonal projectors.
class LocalObservable {
   public:
    struct Outcome {
        std::string label;
        double eigenvalue;
        ComplexMatrix projector;
    };

    /// Throws std::invalid_argument unless the projectors are Hermitian,
    /// idempotent, mutually orthogonal and complete, and labels and
    /// eigenvalues are distinct.
    LocalObservable(std::size_t subsystem, std::vector<Outcome> outcomes);

    std::size_t subsystem() const { return subsystem_; }
    std::size_t local_dim() const { return outcomes_.front().projector.rows(); }
    std::size_t outcome_count() const { return outcomes_.size(); }
    const std::vector<Outcome>& outcomes() const { return outcomes_; }
    const Outcome& outcome(const std::string& label) const;
    std::size_t index_of(const std::string& label) const;
    std::vector<std::string> labels() const;

    /// sum_k eigenvalue_k * P_k.
    ComplexMatrix as_operator() const;

   private:
    std::size_t subsystem_;
    std::vector<Outcome> outcomes_;
};

/// Projectors onto single standard-basis vectors; local dim = labels.size().
LocalObservable computational_observable(std::size_t subsystem, std::vector<std::string> labels,
                                         std::vector<double> eigenvalues);

/// Diagonal projectors onto groups of standard-basis vectors. The groups must
/// partition {0, .., local_dim - 1}.
LocalObservable grouped_observable(std::size_t subsystem, std::size_t local_dim,
                                   std::vector<std::string> labels, std::vector<double> eigenvalues,
                                   const std::vector<std::vector<std::size_t>>& groups);

/// Two-outcome qubit observable with labels "+", "-" and eigenvalues +1, -1.
LocalObservable qubit_r_observable(std::size_t subsystem);

class QuantumChannel {
   public:
    struct Unitary {
        ComplexMatrix u;
    };
    struct Kraus {
        std::vector<ComplexMatrix> ops;
    };

    /// Structural checks only (square, consistent dims). Use validate_channel
    /// for unitarity / completeness.
    static QuantumChannel unitary(std::size_t subsystem, ComplexMatrix u);
    static QuantumChannel kraus(std::size_t subsystem, std::vector<ComplexMatrix> ops);
    static QuantumChannel identity(std::size_t subsystem, std::size_t local_dim);

    std::size_t subsystem() const { return subsystem_; }
    std::size_t local_dim() const { return local_dim_; }
    bool is_unitary() const { return std::holds_alternative<Unitary>(kind_); }
    const std::variant<Unitary, Kraus>& kind() const { return kind_; }

    /// Kraus operators; a unitary channel yields {U}.
    std::vector<ComplexMatrix> kraus_operators() const;

   private:
    QuantumChannel(std::size_t subsystem, std::size_t local_dim, std::variant<Unitary, Kraus> kind)
        : subsystem_(subsystem), local_dim_(local_dim), kind_(std::move(kind)) {}

    std::size_t subsystem_;
    std::size_t local_dim_;
    std::variant<Unitary, Kraus> kind_;
};

struct ChannelReport {
    bool ok = false;
    /// max |U^dagger U - I| or max |sum_k K_k^dagger K_k - I|.
    double deviation = 0.0;
    std::string message;
};

ChannelReport validate_channel(const QuantumChannel& ch, double tol = kChannelTol);

// Named objects -------------------------------------------------------------

/// (|++> - |+-> - |-+> - 3|-->) / (2 sqrt 3) on a 2x2 layout.
StateVector hardy_jordan();
/// (|+-> - |-+>) / sqrt 2 on a 2x2 layout.
StateVector singlet();

/// (1/sqrt 2) [[1, 1], [1, -1]] on a qubit subsystem of `layout`.
QuantumChannel hadamard_channel(const SubsystemLayout& layout, std::size_t subsystem);

/// Generator of the subsystem-1 rotation, i(|-><+| - |+><-|), in units of hbar*omega.
ComplexMatrix rotation_generator();

/// exp(-i H phi) pair rotating subsystem 1 by +phi (|+> -> cos|+> + sin|->)
/// and subsystem 2 by -phi (|+> -> cos|+> - sin|->), on a 2x2 layout.
std::pair<QuantumChannel, QuantumChannel> rotation_channels(double phi);

/// Kraus set {sqrt(1-p) I, sqrt(p) Z} on a qubit subsystem. Requires 0 <= p <= 1.
QuantumChannel dephasing_kraus(const SubsystemLayout& layout, std::size_t subsystem, double p);

/// Replaces each |r_i^(+/-)> of a 2x2 state by |r_i^(+/-)>|p_i^(+/-)>. The
/// result lives on 4x4 with block basis |r p> at index 2r + p.
StateVector ancilla_extend(const StateVector& state);

/// Hadamard on span{|r+p+>, |r-p->} of a 4-dim block, identity on
/// span{|r+p->, |r-p+>}.
QuantumChannel block_hadamard_channel(const SubsystemLayout& layout, std::size_t subsystem);

/// Two-outcome pointer observable on a 4-dim block: "+" projects onto
/// pointer state p+ (indices 0, 2), "-" onto p- (indices 1, 3).
LocalObservable pointer_observable(std::size_t subsystem);

}  // namespace relborn

#endif  // RELBORN_QUANTUM_OBJECTS_HPP
