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

// Explicit cheating strategies as adversary programs.

#include <string>

#include "otlab/otcore/harness.h"
#include "otlab/otcore/program.h"

namespace otlab::cheat {

using otcore::AdversaryProgram;
using otcore::Party;

/// A named adversary with the event it tries to bring about.
struct Strategy {
    std::string descriptor;
    Party party = Party::kAlice;
    std::string target_event;
    AdversaryProgram program;
    otcore::SuccessEvent event;
};

/// Qutrit OT, cheating Alice: measure the received qutrit in the
/// computational basis, guess b from outcomes 0/1 and uniformly on 2, and
/// return the measured qutrit.
Strategy alice_basis_attack();

/// Qutrit OT, cheating Bob: send the uniform superposition, then measure the
/// returned qutrit in the four-state basis of the padded 4-dim space.
Strategy bob_superposition_attack();

/// Qutrit OT, cheating Bob: send half of (|00> + |11>)/sqrt2 and decode the parity.
Strategy bob_parity_attack();

/// The basis attack lifted through the OT-with-inputs wrapper: guess B = b xor r.
Strategy alice_basis_attack_through_ot_wrapper();
/// The superposition attack lifted through the OT-with-inputs wrapper (announces r = 0).
Strategy bob_superposition_attack_through_ot_wrapper();
/// The basis attack in coin flipping from OT: announce c = guess(b) xor target.
Strategy alice_basis_attack_through_cf(std::size_t target);

/// Commitment coin flip, cheating Bob: read the commitment in the computational
/// basis and announce b' = guess(a) xor target.
Strategy commitment_cf_bob_attack(std::size_t target);
/// Commitment coin flip, cheating Alice: commit to (|00> + |11> + 2|22>)/sqrt6
/// and reveal a = b' xor target.
Strategy commitment_cf_alice_attack(std::size_t target);

/// Exact success probabilities of the analytic attacks, from the state vector.
double exact_value(const otcore::InteractiveProtocol &protocol, const Strategy &s);

/// The post-phase states sum_i alpha_i (-1)^{x_i} |i> (x_2 = 0) for a sent qutrit with amplitudes alpha.
qlin::ComplexVector phased_state(const qlin::ComplexVector &alpha, std::size_t x0, std::size_t x1);

/// The four-state measurement basis |Psi_{x0 x1}> of the padded 4-dim space (columns, index 2*x0 + x1).
qlin::ComplexMatrix superposition_measurement_basis();

}  // namespace otlab::cheat
