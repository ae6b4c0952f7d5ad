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

#include "json.hpp"
#include "otlab/sdp/certificate.h"
#include "otlab/sdp/problem.h"
#include "otlab/sdp/solver.h"

namespace otlab::sdp {

/// {"blocks": [{"name", "dim", "embedding"}], "objective": [matrix],
///  "constraints": [{"name", "dim", "rhs", "terms": [{"block", "coefficient", "kraus": [matrix]}]}],
///  "metadata": {...}}. Matrices use the [re, im] row format of protocol specs.
nlohmann::json to_json(const SdpProblem &problem);
/// Throws ValidationError on malformed input.
SdpProblem problem_from_json(const nlohmann::json &j);

/// {"primal_value", "dual_value", "primal", "dual", "slack", "residuals", "iterations"}.
nlohmann::json to_json(const SdpSolution &solution);
SdpSolution solution_from_json(const nlohmann::json &j);

nlohmann::json to_json(const CertificateCheck &check);

/// Self-contained certificate: {"problem": ..., "solution": ...}. Anyone can
/// re-run verify_dual_certificate on it without the solver.
nlohmann::json certificate_to_json(const SdpProblem &problem, const SdpSolution &solution);

}  // namespace otlab::sdp
