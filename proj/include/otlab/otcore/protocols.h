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
#include <optional>

#include "otlab/otcore/executor.h"
#include "otlab/otcore/program.h"
#include "otlab/util/rng.h"

namespace otlab::otcore {

struct OtInputs {
    std::size_t b = 0;
    std::size_t x0 = 0;
    std::size_t x1 = 0;
};

struct OtOutcome {
    bool alice_aborted = false;
    std::size_t x0 = 0, x1 = 0;
    bool bob_aborted = false;
    std::size_t b = 0, y = 0;
};

struct CfOutcome {
    std::optional<std::size_t> alice_coin;  // empty on abort
    std::optional<std::size_t> bob_coin;
};

/// Qutrit random-OT. With inputs, the input registers are prepared in the
/// given basis states; without, they are uniformly random.
/// Registers: Alice x0, x1; Bob b, r (kept qutrit), q (sent qutrit), y.
InteractiveProtocol qutrit_ot_protocol(std::optional<OtInputs> inputs = std::nullopt);

struct QutritOtRun {
    OtOutcome outcome;
    qlin::ComplexVector phi_b;      // state of (r, q) after Bob's preparation
    qlin::ComplexVector psi_b;      // state of (r, q) after Alice's phases
    std::size_t measurement = 0;    // 0: first projector, 1: second, 2: rest
    std::vector<TranscriptStep> transcript;
};

QutritOtRun qutrit_ot_run(std::size_t b, std::size_t x0, std::size_t x1, Rng &rng);

/// Replaces every input preparation of an OT with a uniform one.
InteractiveProtocol random_ot_from_ot(const InteractiveProtocol &ot);

/// Builds OT with inputs (X0, X1, B) on top of a random-OT: Bob announces
/// r = b xor B, Alice announces s_c = x_{c xor r} xor X_c, Bob outputs y xor s_B.
InteractiveProtocol ot_from_random_ot_protocol(const InteractiveProtocol &rot, std::size_t X0, std::size_t X1,
                                               std::size_t B);
OtOutcome ot_from_random_ot(const InteractiveProtocol &rot, std::size_t X0, std::size_t X1, std::size_t B, Rng &rng);

/// Coin flip from random-OT: Alice announces a random c, Bob announces b and
/// y, Alice aborts unless y = x_b; the coin is c xor b.
InteractiveProtocol cf_from_ot_protocol(const InteractiveProtocol &rot);
CfOutcome cf_from_ot(const InteractiveProtocol &rot, Rng &rng);

/// Commitment coin flip on qutrit pairs: Alice sends half of
/// (|aa> + |22>)/sqrt2, Bob announces b', Alice reveals a and the other
/// half, Bob checks the pair; the coin is a xor b'.
InteractiveProtocol qutrit_commitment_cf_protocol();

/// Alice announces a uniform coin (1-out-of-1 forcing OT).
InteractiveProtocol announce_coin_protocol();

/// Alice sends a fixed classical bit which both parties output.
InteractiveProtocol classical_message_protocol(std::size_t bit);

/// Outcome labels as structured values.
struct BobLabel {
    std::vector<std::size_t> indices;
    std::vector<std::size_t> bits;
};
std::optional<BobLabel> parse_bob_label(const std::string &label);
OtOutcome to_ot_outcome(const Outcome &o);
CfOutcome to_cf_outcome(const Outcome &o);

/// The (r, q) pair state (|bb> + sign|22>)/sqrt2.
qlin::ComplexVector qutrit_pair_state(std::size_t b, double sign = 1.0);

}  // namespace otlab::otcore
