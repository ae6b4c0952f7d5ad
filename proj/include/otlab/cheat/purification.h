// Copyright 2026 The otlab Authors
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

#pragma once

// Bob's entangled first message in qutrit OT against its unentangled
// counterpart. Bob prepares sum_i alpha_i |i>|e_i>, sends the qutrit, gets it
// back as sum_i alpha_i (-1)^{x_i} |i>|e_i> (x_2 = 0) and measures. The
// purified strategy sends sum_i alpha_i |i> alone and afterwards applies
// |i>|0> -> |i>|e_i>, reaching the same state.

#include <array>
#include <vector>

#include "otlab/qlin/linalg.h"
#include "otlab/util/rng.h"

namespace otlab::cheat {

using qlin::ComplexMatrix;
using qlin::ComplexVector;

struct EntangledBobStrategy {
    /// Amplitudes of the sent qutrit, unit norm.
    ComplexVector alpha;
    /// Unit encodings |e_0>, |e_1>, |e_2> of a common dimension.
    std::array<ComplexVector, 3> encodings;
    /// POVM on qutrit (x) encoding space; element 2 * x0 + x1 guesses (x0, x1).
    std::array<ComplexMatrix, 4> measurement;

    std::size_t ancilla_dim() const { return static_cast<std::size_t>(encodings[0].size()); }
};

struct PurificationCheck {
    double prob_entangled = 0;
    double prob_purified = 0;
};

/// The controlled unitary sum_i |i><i| (x) W_i with W_i |0> = |e_i>.
ComplexMatrix encoding_unitary(const std::array<ComplexVector, 3> &encodings);

/// Success of both strategies over uniform (x0, x1), each from its own state
/// vector. Throws ValidationError for non-normalized inputs or an invalid POVM
/// and DimensionError for mismatched sizes.
PurificationCheck purification_equivalence_check(const EntangledBobStrategy &strategy);

/// Haar-random alpha and encodings with a random projective measurement.
EntangledBobStrategy random_entangled_strategy(std::size_t ancilla_dim, Rng &rng);

}  // namespace otlab::cheat
