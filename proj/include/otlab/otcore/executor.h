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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "otlab/otcore/program.h"
#include "otlab/util/rng.h"

namespace otlab::otcore {

/// Joint result of one run. `guess` is empty unless an adversary declared one;
/// the cheating party's own output is reported as "-".
struct Outcome {
    std::string alice;
    std::string bob;
    std::string guess;
    auto operator<=>(const Outcome &) const = default;
};

struct TranscriptStep {
    Party actor = Party::kAlice;
    std::string message;
    /// State of all quantum registers after the step, factors in `quantum_registers` order.
    std::optional<qlin::ComplexVector> state_after;
    std::vector<std::string> quantum_registers;
};

struct SampledRun {
    Outcome outcome;
    bool alice_aborted = false;
    bool bob_aborted = false;
    std::vector<TranscriptStep> transcript;
    /// Classical values at the end, keyed "<party>:<name>" by the holder's name for the register.
    std::map<std::string, std::size_t> final_values;
};

struct ExactRun {
    std::map<Outcome, double> distribution;
    double alice_abort = 0.0;
    double bob_abort = 0.0;

    double probability(const std::function<bool(const Outcome &)> &event) const;
};

/// Exact branch enumeration: every measurement and classical sampling point is
/// split into weighted branches; probabilities come from the state vector.
ExactRun run_exact(const InteractiveProtocol &protocol, const AdversaryProgram *adversary = nullptr);

/// One run with measurement outcomes sampled from `rng`.
SampledRun run_sampled(const InteractiveProtocol &protocol, Rng &rng, const AdversaryProgram *adversary = nullptr,
                       bool record_transcript = false);

}  // namespace otlab::otcore
