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

#include <string>
#include <vector>

#include "otlab/sdp/problem.h"
#include "otlab/sdp/solver.h"

namespace otlab::sdp {

inline constexpr double kCertificateTol = 1e-8;

struct CertificateCheck {
    bool pass = false;
    /// Largest violation found (0 when everything holds exactly).
    double max_residual = 0;
    /// sum <Y_c, R_c>, recomputed from the dual variables.
    double dual_value = 0;
    /// Smallest eigenvalue of sum L^*(Y) - C over the blocks.
    double min_slack_eigenvalue = 0;
    /// max |sum L^*(Y) - C - Z| against the slack stored in the solution.
    double slack_mismatch = 0;
    std::vector<std::string> failures;
};

/// Re-derives dual feasibility from the problem data and the dual variables
/// alone: the slack must be positive semidefinite (eigenvalues above
/// -kCertificateTol), must match the stored slack within kCertificateTol, the
/// dual value must match the claimed one and must not fall below the claimed
/// primal value. Any dual-feasible point bounds the primal optimum from above.
CertificateCheck verify_dual_certificate(const SdpProblem &problem, const SdpSolution &solution);

}  // namespace otlab::sdp
