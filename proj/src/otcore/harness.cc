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

#include "otlab/otcore/harness.h"

#include <cmath>
#include <thread>
#include <vector>

#include "otlab/error.h"
#include "otlab/otcore/protocols.h"

namespace otlab::otcore {

namespace {

bool honest_aborted(const SampledRun &run, Party side) {
    return side == Party::kAlice ? run.bob_aborted : run.alice_aborted;
}

}  // namespace

AdversaryRun scripted_adversary_run(const InteractiveProtocol &protocol, const AdversaryProgram &adversary,
                                    const SuccessEvent &event, Rng &rng) {
    AdversaryRun out;
    out.run = run_sampled(protocol, rng, &adversary);
    out.honest_aborted = honest_aborted(out.run, adversary.side);
    out.success = event(out.run.outcome);
    return out;
}

MonteCarloEstimate estimate_success(const InteractiveProtocol &protocol, const AdversaryProgram &adversary,
                                    const SuccessEvent &event, std::uint64_t trials, std::uint64_t seed,
                                    unsigned jobs) {
    jobs = std::max(1u, jobs);
    std::vector<std::uint64_t> succ(jobs, 0), aborts(jobs, 0);
    auto worker = [&](unsigned j) {
        for (std::uint64_t i = j; i < trials; i += jobs) {
            Rng rng = derive_stream(seed, i);
            auto r = scripted_adversary_run(protocol, adversary, event, rng);
            succ[j] += r.success;
            aborts[j] += r.honest_aborted;
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker, j);
        for (auto &t : pool) t.join();
    }
    MonteCarloEstimate e;
    e.seed = seed;
    e.trials = trials;
    for (unsigned j = 0; j < jobs; ++j) {
        e.successes += succ[j];
        e.honest_aborts += aborts[j];
    }
    if (trials > 0) {
        e.rate = static_cast<double>(e.successes) / static_cast<double>(trials);
        e.abort_rate = static_cast<double>(e.honest_aborts) / static_cast<double>(trials);
        e.std_error = std::sqrt(e.rate * (1 - e.rate) / static_cast<double>(trials));
    }
    return e;
}

double exact_success(const InteractiveProtocol &protocol, const AdversaryProgram &adversary, const SuccessEvent &event) {
    return run_exact(protocol, &adversary).probability(event);
}

SuccessEvent alice_guesses_b() {
    return [](const Outcome &o) {
        auto bl = parse_bob_label(o.bob);
        return bl && bl->indices.size() == 1 && o.guess.size() == 1 &&
               static_cast<std::size_t>(o.guess[0] - '0') == bl->indices[0];
    };
}

SuccessEvent bob_guesses_pair() {
    return [](const Outcome &o) { return o.alice != kAbort && o.guess == o.alice; };
}

SuccessEvent bob_guesses_parity() {
    return [](const Outcome &o) {
        return o.alice.size() == 2 && o.alice != kAbort && o.guess.size() == 1 &&
               ((o.alice[0] - '0') ^ (o.alice[1] - '0')) == (o.guess[0] - '0');
    };
}

SuccessEvent bob_guesses_bit(std::size_t index) {
    return [index](const Outcome &o) {
        return o.alice.size() == 2 && o.alice != kAbort && o.guess.size() == 1 && o.alice[index] == o.guess[0];
    };
}

SuccessEvent alice_output_is(const std::string &label) {
    return [label](const Outcome &o) { return o.alice == label; };
}

SuccessEvent bob_output_is(const std::string &label) {
    return [label](const Outcome &o) { return o.bob == label; };
}

AdversaryProgram honest_as_adversary(const InteractiveProtocol &protocol, Party side) {
    AdversaryProgram adv;
    adv.name = std::string("honest-") + party_name(side);
    adv.side = side;
    for (const auto &r : protocol.registers)
        if (r.owner == side) adv.registers.push_back(r);
    for (const auto &init : protocol.initial)
        if (init.first == side) adv.initial.push_back(init);
    for (std::size_t i = 0; i < protocol.steps.size(); ++i) {
        if (protocol.steps[i].actor != side) continue;
        adv.step_ops[i] = protocol.steps[i].ops;
        if (protocol.steps[i].message) adv.messages[i] = *protocol.steps[i].message;
    }
    return adv;
}

AdversaryProgram inner_adversary_for_ot_wrapper(const InteractiveProtocol &rot, const AdversaryProgram &wrapper_adversary) {
    const InteractiveProtocol wrapper = ot_from_random_ot_protocol(rot, 0, 0, 0);
    const Party side = wrapper_adversary.side;
    const std::size_t inner_steps = rot.steps.size();
    AdversaryProgram inner;
    inner.name = wrapper_adversary.name + "-simulated";
    inner.side = side;
    inner.registers = wrapper_adversary.registers;
    inner.initial = wrapper_adversary.initial;
    for (const auto &[i, ops] : wrapper_adversary.step_ops)
        if (i < inner_steps) inner.step_ops[i] = ops;
    for (const auto &[i, m] : wrapper_adversary.messages)
        if (i < inner_steps) inner.messages[i] = m;

    std::string sent_r;
    for (std::size_t i = inner_steps; i < wrapper.steps.size(); ++i) {
        const Step &step = wrapper.steps[i];
        if (step.actor == side) {
            auto it = wrapper_adversary.step_ops.find(i);
            if (it != wrapper_adversary.step_ops.end())
                inner.final_ops.insert(inner.final_ops.end(), it->second.begin(), it->second.end());
            auto m = wrapper_adversary.messages.find(i);
            if (m != wrapper_adversary.messages.end() && m->second.kind == TransferKind::kCopy && step.message &&
                step.message->as == "w_r")
                sent_r = m->second.reg;
        } else if (step.message) {
            const RegisterDecl &d = wrapper.reg(step.message->reg);
            inner.registers.push_back({step.message->as, d.dim, side, true});
            inner.final_ops.push_back(Prepare{step.message->as, uniform_amplitudes(d.dim)});
        }
    }
    inner.final_ops.insert(inner.final_ops.end(), wrapper_adversary.final_ops.begin(), wrapper_adversary.final_ops.end());

    if (!wrapper_adversary.guess) return inner;
    const OutputRule g = *wrapper_adversary.guess;
    OutputRule rule;
    rule.regs = g.regs;
    const std::size_t n = g.regs.size();
    if (side == Party::kAlice) {
        // Guess of B = b xor r  ->  guess of b.
        rule.regs.push_back("w_r");
        rule.label = [g, n](std::span<const std::size_t> v) {
            std::string s = g.label(v.first(n));
            if (s.size() != 1 || (s[0] != '0' && s[0] != '1')) return s;
            const std::size_t bit[1] = {static_cast<std::size_t>(s[0] - '0') ^ v[n]};
            return bits_label(bit);
        };
    } else {
        if (sent_r.empty()) throw PreconditionError("wrapper adversary never announces r");
        // Guess of (X0, X1) with s_c = x_{c xor r} xor X_c  ->  x_d = s_{d xor r} xor X_{d xor r}.
        rule.regs.insert(rule.regs.end(), {sent_r, "w_s0", "w_s1"});
        rule.label = [g, n](std::span<const std::size_t> v) {
            std::string s = g.label(v.first(n));
            if (s.size() != 2) return s;
            const std::size_t r = v[n] & 1, sm[2] = {v[n + 1], v[n + 2]};
            const std::size_t X[2] = {static_cast<std::size_t>(s[0] - '0'), static_cast<std::size_t>(s[1] - '0')};
            const std::size_t x[2] = {sm[r] ^ X[r], sm[1 ^ r] ^ X[1 ^ r]};
            return bits_label(x);
        };
    }
    inner.guess = rule;
    return inner;
}

}  // namespace otlab::otcore
