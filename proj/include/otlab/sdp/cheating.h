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

#include "otlab/model/spec.h"
#include "otlab/sdp/problem.h"

namespace otlab::sdp {

using otcore::Party;

/// The program whose optimum is the largest probability with which `cheater`
/// forces the honest party's POVM outcome `target`.
///
/// Variables are the honest party's view (private space together with M)
/// after each of the cheater's turns. Consecutive honest rounds form one
/// block j with unitary U_j and give the constraint
///   Tr_M(rho_j) = Tr_M(U_j rho_{j-1} U_j^*),
/// and rho_0 satisfies Tr_M(rho_0) = |0><0|. When the honest party moves
/// first, M is still |0> at that point, so rho_0 is pinned to |0><0| (x) |0><0|.
///
/// Every rho_j is restricted to S_j (x) M, where S_j is the largest support its
/// reduced state can reach; the constraints are compressed to S_j. This keeps
/// the program strictly feasible and small without changing its value.
///
/// Throws ValidationError for an invalid spec and PreconditionError when the
/// label is not an outcome of the honest party's POVM.
SdpProblem build_cheating_sdp(const model::ProtocolSpec &spec, Party cheater, const std::string &target);

}  // namespace otlab::sdp
