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

// Round-structured two-party protocols on A (x) M (x) B.
//
// Alice's private space A, the message space M and Bob's private space B
// start in |0>. Each round is one unitary by one party: Alice acts on A (x) M,
// Bob on M (x) B. At the end each party measures its private space with a
// POVM whose labels are fOT outcomes.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "otlab/otcore/program.h"
#include "otlab/qlin/linalg.h"

namespace otlab::model {

using otcore::Party;
using qlin::ComplexMatrix;

struct Round {
    Party actor = Party::kAlice;
    ComplexMatrix unitary;
};

/// A named tensor factor of a private space (descriptive only).
struct Factor {
    std::string name;
    std::size_t dim = 1;
};

struct ProtocolSpec {
    std::string name;
    std::size_t dim_a = 1;
    std::size_t dim_m = 1;
    std::size_t dim_b = 1;
    std::vector<Round> rounds;
    std::map<std::string, ComplexMatrix> alice_povm;
    std::map<std::string, ComplexMatrix> bob_povm;
    std::size_t n = 1;
    std::size_t k = 1;
    /// Optional factor breakdown of A and B, most significant first.
    std::vector<Factor> alice_factors;
    std::vector<Factor> bob_factors;
    /// Messages exchanged by the interactive protocol this was compiled from (0 if unknown).
    std::size_t messages = 0;

    qlin::SubsystemLayout layout() const { return qlin::SubsystemLayout({dim_a, dim_m, dim_b}); }
};

using JointLabel = std::pair<std::string, std::string>;

struct HonestRun {
    qlin::ComplexVector final_state;
    /// Probability of each (alice label, bob label) pair; zero entries omitted.
    std::map<JointLabel, double> distribution;
    /// Norm of the global state after each round.
    std::vector<double> norms;
};

/// Dimension, unitarity and POVM checks (everything but the honest-outcome condition).
std::vector<std::string> structural_violations(const ProtocolSpec &spec);

/// All invariants, including that honest runs produce every consistent fOT
/// outcome with probability 1 / (C(n, k) 2^n) and nothing else.
std::vector<std::string> validate(const ProtocolSpec &spec);

/// Throws ValidationError carrying the violations of validate().
void require_valid(const ProtocolSpec &spec);

/// Executes the rounds on |0> and applies both POVMs. Throws ValidationError
/// when `spec` is structurally invalid.
HonestRun run_honest(const ProtocolSpec &spec);

/// Alice labels "x_1...x_n" in lexicographic order.
std::vector<std::string> fot_alice_labels(std::size_t n);
/// Bob labels "b={i,...};xb=bits" over all k-subsets and bit strings.
std::vector<std::string> fot_bob_labels(std::size_t n, std::size_t k);
/// True when the Bob label reveals exactly the bits of the Alice label at its indices.
bool consistent(const std::string &alice_label, const std::string &bob_label, std::size_t n, std::size_t k);

std::size_t binomial(std::size_t n, std::size_t k);

}  // namespace otlab::model
