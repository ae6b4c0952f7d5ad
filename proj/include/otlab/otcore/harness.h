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

#include <cstdint>
#include <functional>

#include "otlab/otcore/executor.h"
#include "otlab/otcore/program.h"
#include "otlab/util/rng.h"

namespace otlab::otcore {

using SuccessEvent = std::function<bool(const Outcome &)>;

struct AdversaryRun {
    SampledRun run;
    bool honest_aborted = false;
    bool success = false;
};

/// One run of `protocol` with `adversary` replacing its side.
AdversaryRun scripted_adversary_run(const InteractiveProtocol &protocol, const AdversaryProgram &adversary,
                                    const SuccessEvent &event, Rng &rng);

struct MonteCarloEstimate {
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    std::uint64_t honest_aborts = 0;
    double rate = 0.0;
    /// Binomial standard error sqrt(p(1-p)/n) at the estimated rate.
    double std_error = 0.0;
    double abort_rate = 0.0;
};

/// Repeats scripted_adversary_run; trial i uses stream derive_stream(seed, i),
/// so the estimate does not depend on `jobs`.
MonteCarloEstimate estimate_success(const InteractiveProtocol &protocol, const AdversaryProgram &adversary,
                                    const SuccessEvent &event, std::uint64_t trials, std::uint64_t seed,
                                    unsigned jobs = 1);

/// Exact probability of `event` with the adversary.
double exact_success(const InteractiveProtocol &protocol, const AdversaryProgram &adversary, const SuccessEvent &event);

/// Events for guessing and forcing.
SuccessEvent alice_guesses_b();          // guess == Bob's b and Bob does not abort
SuccessEvent bob_guesses_pair();         // guess == Alice's (x0, x1) and Alice does not abort
SuccessEvent bob_guesses_parity();       // guess == x0 xor x1
SuccessEvent bob_guesses_bit(std::size_t index);  // guess == x_index
SuccessEvent alice_output_is(const std::string &label);
SuccessEvent bob_output_is(const std::string &label);

/// The honest program of `side` packaged as an adversary (no guess rule).
AdversaryProgram honest_as_adversary(const InteractiveProtocol &protocol, Party side);

/// Turns an adversary against ot_from_random_ot_protocol(rot, ...) into one
/// against `rot` alone. The wrapper steps are run locally; the messages the
/// honest side would send there (r for a cheating Alice, the masks for a
/// cheating Bob) are replaced by uniform bits, and the guess is translated
/// back to the inner variables. With uniform wrapper inputs both adversaries
/// succeed with the same probability.
AdversaryProgram inner_adversary_for_ot_wrapper(const InteractiveProtocol &rot, const AdversaryProgram &wrapper_adversary);

}  // namespace otlab::otcore
