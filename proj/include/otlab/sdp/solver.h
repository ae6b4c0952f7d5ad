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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "otlab/sdp/problem.h"

namespace otlab::sdp {

struct Residuals {
    /// max |L(X) - R| over constraint entries.
    double primal = 0;
    /// max |sum L^*(Y) - C - Z| over block entries.
    double dual = 0;
    /// |primal value - dual value|.
    double gap = 0;
};

struct SdpSolution {
    double primal_value = 0;
    double dual_value = 0;
    /// Block variables (in block coordinates).
    std::vector<ComplexMatrix> primal;
    /// One Hermitian matrix per constraint.
    std::vector<ComplexMatrix> dual;
    /// Dual slack per block; positive semidefinite.
    std::vector<ComplexMatrix> slack;
    Residuals residuals;
    std::size_t iterations = 0;
};

inline constexpr std::size_t kMaxSdpDim = 256;

struct SolverOptions {
    double tol = 1e-7;
    std::size_t max_iterations = 100;
    /// Start from a random interior point instead of the identity.
    std::optional<std::uint64_t> random_start_seed;
};

/// Primal-dual interior-point method (HKM direction, Mehrotra predictor-corrector)
/// from an infeasible start. Returns the first iterate whose three residuals are
/// all below tol. Iteration stops early once rounding makes the primal residual
/// grow again.
///
/// Throws PreconditionError when the blocks exceed kMaxSdpDim in total and
/// ConvergenceError (carrying the best residuals) when the iteration cap is hit.
SdpSolution solve_sdp(const SdpProblem &problem, const SolverOptions &options);
SdpSolution solve_sdp(const SdpProblem &problem, double tol = 1e-7);

}  // namespace otlab::sdp
