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

// Block semidefinite programs with Hermitian equality constraints.
//
//   maximize    sum_b <C_b, X_b>
//   subject to  sum_t c_t * sum_k K_k X_{b(t)} K_k^* = R     (one line per constraint)
//               X_b >= 0
//
// Each constraint equates Hermitian matrices of its own size, so partial
// traces and conjugations are written directly as Kraus-like maps. The dual
// has one Hermitian variable Y per constraint:
//
//   minimize    sum <Y, R>   subject to   sum L^*(Y) - C_b >= 0 on every block.

#include <cstddef>
#include <string>
#include <vector>

#include "otlab/qlin/linalg.h"

namespace otlab::sdp {

using qlin::ComplexMatrix;

/// X -> coefficient * sum_k K_k X K_k^* applied to one block.
struct MapTerm {
    std::size_t block = 0;
    double coefficient = 1.0;
    std::vector<ComplexMatrix> kraus;
};

struct Constraint {
    std::string name;
    std::size_t dim = 1;
    std::vector<MapTerm> terms;
    ComplexMatrix rhs;
};

struct Block {
    std::string name;
    std::size_t dim = 1;
    /// Isometry from the block into the ambient space (full_dim x dim). Empty means identity.
    ComplexMatrix embedding;
};

/// Descriptive data carried along with a cheating program.
struct SdpMetadata {
    std::string cheater;
    std::string target;
    /// Honest-party unitary blocks; one variable per block plus the initial state.
    std::size_t n_constraints_rounds = 0;
    /// Messages in the originating interactive protocol (0 if unknown).
    std::size_t n_messages = 0;
    /// Number of single-actor rounds in the protocol spec.
    std::size_t n_spec_rounds = 0;
    std::string n_convention;
};

struct SdpProblem {
    std::vector<Block> blocks;
    /// One Hermitian objective operator per block.
    std::vector<ComplexMatrix> objective;
    std::vector<Constraint> constraints;
    SdpMetadata metadata;

    std::size_t total_dim() const;
    /// Real dimension of the constraint space (sum of dim^2).
    std::size_t scalar_constraints() const;
};

/// Type and shape problems; empty when the program is well formed.
std::vector<std::string> problem_violations(const SdpProblem &problem);
/// Throws ValidationError with the violations.
void require_well_formed(const SdpProblem &problem);

/// Left-hand side of one constraint evaluated at the blocks x.
ComplexMatrix apply_constraint(const Constraint &c, const std::vector<ComplexMatrix> &x);

/// Adds L_c^*(y) to every block of `out` touched by constraint c.
void add_adjoint(const Constraint &c, const ComplexMatrix &y, std::vector<ComplexMatrix> &out);

/// sum_c L_c^*(Y_c) - C_b for every block b.
std::vector<ComplexMatrix> dual_slack(const SdpProblem &problem, const std::vector<ComplexMatrix> &y);

double primal_objective(const SdpProblem &problem, const std::vector<ComplexMatrix> &x);
double dual_objective(const SdpProblem &problem, const std::vector<ComplexMatrix> &y);

/// Largest entry of |L_c(x) - R_c| over all constraints.
double primal_residual(const SdpProblem &problem, const std::vector<ComplexMatrix> &x);

/// Block variables mapped back to the ambient space: V X V^*.
std::vector<ComplexMatrix> embedded_blocks(const SdpProblem &problem, const std::vector<ComplexMatrix> &x);

/// Replaces constraint `index` by its trace, a weaker condition on the same blocks.
SdpProblem relax_to_trace(const SdpProblem &problem, std::size_t index);

}  // namespace otlab::sdp
