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

// Four intersecting spacelike surfaces. alpha and beta are equal-time slices
// of one frame; between them each subsystem undergoes a local channel.
// gamma crosses subsystem 1 after its channel and subsystem 2 before its
// channel; delta is the mirror image. All states are expressed in the
// coordinate basis of the alpha/beta frame.
//
// Observable pairing per surface:
//   alpha: (A1, A2)   beta: (B1, B2)   gamma: (B1, A2)   delta: (A1, B2)

#ifndef RELBORN_HYPERSURFACE_HPP
#define RELBORN_HYPERSURFACE_HPP

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relborn/quantum_objects.hpp"

namespace relborn {

enum class Surface { kAlpha, kBeta, kGamma, kDelta };

inline constexpr std::array<Surface, 4> kAllSurfaces = {Surface::kAlpha, Surface::kBeta,
                                                        Surface::kGamma, Surface::kDelta};

std::string_view to_string(Surface s);

/// Initial state plus one local channel per subsystem, and the observables
/// that are definite on alpha (A1, A2) and on beta (B1, B2).
class FourSurfaceScenario {
   public:
    /// Throws std::invalid_argument if the layout is not bipartite, a channel
    /// or observable sits on the wrong subsystem or dimension, or a channel
    /// fails validate_channel.
    FourSurfaceScenario(DensityOperator rho_alpha, QuantumChannel channel_1,
                        QuantumChannel channel_2, LocalObservable a1, LocalObservable a2,
                        LocalObservable b1, LocalObservable b2);

    const DensityOperator& rho_alpha() const { return rho_alpha_; }
    const SubsystemLayout& layout() const { return rho_alpha_.layout(); }
    const QuantumChannel& channel(std::size_t subsystem) const;
    const LocalObservable& a1() const { return a1_; }
    const LocalObservable& a2() const { return a2_; }
    const LocalObservable& b1() const { return b1_; }
    const LocalObservable& b2() const { return b2_; }

    /// The (subsystem-1, subsystem-2) observables definite on `s`.
    std::pair<const LocalObservable&, const LocalObservable&> observables_on(Surface s) const;
    /// Names of observables_on(s), e.g. {"B1", "A2"} for gamma.
    std::pair<std::string, std::string> observable_names(Surface s) const;

   private:
    DensityOperator rho_alpha_;
    QuantumChannel channel_1_;
    QuantumChannel channel_2_;
    LocalObservable a1_, a2_, b1_, b2_;
};

/// rho -> sum_k (K_k on its subsystem) rho (K_k on its subsystem)^dagger.
ComplexMatrix apply_channel(const ComplexMatrix& rho, const SubsystemLayout& layout,
                            const QuantumChannel& channel);

/// alpha: rho(alpha); beta: both channels; gamma: channel 1 only; delta:
/// channel 2 only.
DensityOperator state_on(const FourSurfaceScenario& scenario, Surface surface);

/// Heisenberg-picture observable sum_k K_k^dagger B K_k (U^dagger B U for a
/// unitary channel). Generally not a projective observable for Kraus channels.
ComplexMatrix effective_observable(const QuantumChannel& channel, const LocalObservable& b);

struct NoSignalingReport {
    struct Check {
        std::string description;
        double deviation;
    };
    bool passed = true;
    double max_deviation = 0.0;
    std::vector<Check> checks;
};

/// Compares reduced states of surfaces that share a subsystem segment:
/// subsystem 2 on alpha/gamma and beta/delta, subsystem 1 on alpha/delta and
/// beta/gamma.
NoSignalingReport check_no_signaling(const FourSurfaceScenario& scenario, double tol = 1e-10);

}  // namespace relborn

#endif  // RELBORN_HYPERSURFACE_HPP
