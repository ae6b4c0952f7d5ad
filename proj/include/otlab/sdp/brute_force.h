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
#include <string>
#include <vector>

#include "otlab/model/spec.h"
#include "otlab/qlin/linalg.h"

namespace otlab::sdp {

/// Largest cheater unitary (message space times workspace) the search accepts.
inline constexpr std::size_t kMaxBruteForceDim = 64;

struct BruteForceOptions {
    std::size_t restarts = 20;
    /// Cheater's private workspace; 0 picks the largest with dim_m * w <= kMaxBruteForceDim.
    std::size_t workspace_dim = 0;
    std::size_t max_iterations = 3000;
    /// Stop a restart when the gradient norm falls below this.
    double gradient_tol = 1e-9;
    std::uint64_t seed = 1;
    /// The first restart begins at the cheater's honest unitaries (workspace = cheater's private space).
    bool start_from_honest = false;
};

struct BruteForceResult {
    /// Best success probability found; a lower bound on the optimum.
    double value = 0;
    std::vector<double> restart_values;
    /// Cheater's unitaries (on M (x) W, or W (x) M for Alice) of the best restart.
    std::vector<qlin::ComplexMatrix> unitaries;
    std::size_t workspace_dim = 0;
};

/// Searches pure cheating strategies directly: the cheater holds a workspace W
/// and applies one unitary on M and W at each of its turns. Each restart
/// starts from Haar-random unitaries and climbs the success probability by
/// Riemannian gradient ascent with backtracking on the unitary group.
///
/// Throws PreconditionError when the cheater's unitary would exceed
/// kMaxBruteForceDim levels or the target is not an honest POVM label.
BruteForceResult brute_force_cheat(const model::ProtocolSpec &spec, otcore::Party cheater, const std::string &target,
                                   const BruteForceOptions &options);

double brute_force_cheat(const model::ProtocolSpec &spec, otcore::Party cheater, const std::string &target,
                         std::size_t restarts);

}  // namespace otlab::sdp
