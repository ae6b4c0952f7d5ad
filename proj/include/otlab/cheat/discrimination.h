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

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "otlab/qlin/linalg.h"
#include "otlab/sdp/problem.h"
#include "otlab/sdp/solver.h"

namespace otlab::cheat {

using qlin::ComplexMatrix;

struct HelstromResult {
    double probability = 0;
    /// Projectors onto the nonnegative and negative eigenspaces of s0 - s1.
    std::array<ComplexMatrix, 2> measurement;
};

/// Optimal guess between two equiprobable states: 1/2 + ||s0 - s1||_1 / 4.
/// The kernel of s0 - s1 goes to outcome 0. Throws DimensionError on a size mismatch.
HelstromResult helstrom(const qlin::DensityMatrix &s0, const qlin::DensityMatrix &s1);

/// Decoding n uniformly chosen values from d-dimensional pure encodings
/// succeeds with probability at most min(1, d / n).
double nayak_bound(std::size_t d, std::size_t n);

struct DiscriminationResult {
    /// Success probability of `povm`, which is feasible to rounding error.
    double probability = 0;
    /// Dual value of the solve; no measurement does better.
    double upper_bound = 0;
    std::vector<ComplexMatrix> povm;
    sdp::SdpProblem problem;
    sdp::SdpSolution solution;
};

/// max sum_i p_i <psi_i|E_i|psi_i> over POVMs {E_i}.
sdp::SdpProblem discrimination_sdp(std::span<const qlin::PureState> states, std::span<const double> priors);

/// Solves discrimination_sdp and rescales the primal blocks into an exact
/// POVM (E_i -> S^{-1/2} E_i S^{-1/2} with S = sum E_i).
///
/// Throws DimensionError for states of different dimension, PreconditionError
/// when the priors are negative, mismatched or do not sum to 1, and
/// ConvergenceError from the solver.
DiscriminationResult optimal_discrimination(std::span<const qlin::PureState> states, std::span<const double> priors,
                                            double tol = 1e-9);

}  // namespace otlab::cheat
