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

#include "otlab/otcore/protocols.h"

#include <cmath>

#include "otlab/error.h"

namespace otlab::otcore {

using qlin::ComplexMatrix;
using qlin::ComplexVector;

namespace {

RegisterDecl classical(const std::string &name, Party owner, std::size_t dim = 2) { return {name, dim, owner, true}; }
RegisterDecl quantum(const std::string &name, Party owner, std::size_t dim) { return {name, dim, owner, false}; }

Prepare prep_input(const std::string &reg, std::optional<std::size_t> value, std::size_t dim = 2) {
    return {reg, value ? basis_amplitudes(dim, *value) : uniform_amplitudes(dim)};
}

// Phase unitary |a> -> (-1)^{x_a}|a> on a qutrit with x_2 = 0.
ComplexMatrix phase_unitary(std::size_t x0, std::size_t x1) {
    ComplexMatrix u = ComplexMatrix::Identity(3, 3);
    if (x0) u(0, 0) = -1;
    if (x1) u(1, 1) = -1;
    return u;
}

// Maps (|bb> + |22>)/sqrt2 to |0> and (|bb> - |22>)/sqrt2 to |1> on the pair.
ComplexMatrix pair_measurement_unitary(std::size_t b) {
    std::vector<ComplexVector> src{qutrit_pair_state(b, 1.0), qutrit_pair_state(b, -1.0)};
    std::vector<std::size_t> tgt{0, 1};
    return qlin::unitary_mapping(src, tgt, 9);
}

std::string coin_label(std::size_t c) { return std::string(1, static_cast<char>('0' + c)); }

}  // namespace

ComplexVector qutrit_pair_state(std::size_t b, double sign) {
    ComplexVector v = ComplexVector::Zero(9);
    v(static_cast<Eigen::Index>(3 * b + b)) = sign / std::sqrt(2.0);
    v(8) = 1.0 / std::sqrt(2.0);
    return v;
}

InteractiveProtocol qutrit_ot_protocol(std::optional<OtInputs> inputs) {
    InteractiveProtocol p;
    p.name = inputs ? "qutrit-ot-inputs" : "qutrit-ot";
    p.registers = {classical("x0", Party::kAlice), classical("x1", Party::kAlice), classical("b", Party::kBob),
                   quantum("r", Party::kBob, 3),       quantum("q", Party::kBob, 3),     classical("y", Party::kBob)};
    p.initial = {{Party::kAlice, prep_input("x0", inputs ? std::optional(inputs->x0) : std::nullopt)},
                 {Party::kAlice, prep_input("x1", inputs ? std::optional(inputs->x1) : std::nullopt)},
                 {Party::kBob, prep_input("b", inputs ? std::optional(inputs->b) : std::nullopt)}};

    Step bob_prepare{Party::kBob, {}, Message{"q", TransferKind::kMove, "q"}};
    Controlled prep{{"b"}, {}};
    for (std::size_t b = 0; b < 2; ++b)
        prep.branches.push_back({Apply{{"r", "q"}, qlin::unitary_with_first_column(qutrit_pair_state(b))}});
    bob_prepare.ops.push_back(prep);

    Step alice_phase{Party::kAlice, {}, Message{"q", TransferKind::kMove, "q"}};
    Controlled phase{{"x0", "x1"}, {}};
    for (std::size_t x0 = 0; x0 < 2; ++x0)
        for (std::size_t x1 = 0; x1 < 2; ++x1) phase.branches.push_back({Apply{{"q"}, phase_unitary(x0, x1)}});
    alice_phase.ops.push_back(phase);

    Step bob_measure{Party::kBob, {}, std::nullopt};
    Controlled rotate{{"b"}, {}};
    for (std::size_t b = 0; b < 2; ++b) rotate.branches.push_back({Apply{{"r", "q"}, pair_measurement_unitary(b)}});
    bob_measure.ops.push_back(rotate);
    bob_measure.ops.push_back(AbortUnless{{"r", "q"}, [](std::span<const std::size_t> v) { return v[0] * 3 + v[1] < 2; }});
    bob_measure.ops.push_back(Measure{{"r", "q"}, "y", [](std::span<const std::size_t> v) {
                                          return static_cast<std::size_t>(v[0] * 3 + v[1] == 1);
                                      }});

    p.steps = {bob_prepare, alice_phase, bob_measure};
    p.alice_output = {{"x0", "x1"}, [](std::span<const std::size_t> v) { return bits_label(v); }};
    p.bob_output = {{"b", "y"}, [](std::span<const std::size_t> v) {
                        const std::size_t idx[1] = {v[0]};
                        const std::size_t bit[1] = {v[1]};
                        return bob_label(idx, bit);
                    }};
    p.roles = {{"x0", "x0"}, {"x1", "x1"}, {"b", "b"}, {"y", "y"}};
    p.n = 2;
    p.k = 1;
    return p;
}

QutritOtRun qutrit_ot_run(std::size_t b, std::size_t x0, std::size_t x1, Rng &rng) {
    if (b > 1 || x0 > 1 || x1 > 1) throw DomainError("qutrit OT inputs must be bits");
    const auto protocol = qutrit_ot_protocol(OtInputs{b, x0, x1});
    auto run = run_sampled(protocol, rng, nullptr, true);
    QutritOtRun out;
    out.outcome = to_ot_outcome(run.outcome);
    out.phi_b = *run.transcript.at(0).state_after;
    out.psi_b = *run.transcript.at(1).state_after;
    out.measurement = run.bob_aborted ? 2 : out.outcome.y;
    out.transcript = std::move(run.transcript);
    return out;
}

InteractiveProtocol random_ot_from_ot(const InteractiveProtocol &ot) {
    InteractiveProtocol p = ot;
    p.name = "random-" + ot.name;
    for (const auto &role : {"x0", "x1", "b"}) {
        auto it = ot.roles.find(role);
        if (it == ot.roles.end()) throw ValidationError("OT protocol lacks role '" + std::string(role) + "'");
        bool found = false;
        for (auto &[party, prep] : p.initial)
            if (prep.reg == it->second) {
                prep.amplitudes = uniform_amplitudes(ot.reg(it->second).dim);
                found = true;
            }
        if (!found) throw ValidationError("input register '" + it->second + "' has no preparation");
    }
    return p;
}

InteractiveProtocol ot_from_random_ot_protocol(const InteractiveProtocol &rot, std::size_t X0, std::size_t X1,
                                               std::size_t B) {
    if (X0 > 1 || X1 > 1 || B > 1) throw DomainError("OT inputs must be bits");
    const std::string x0 = rot.roles.at("x0"), x1 = rot.roles.at("x1"), b = rot.roles.at("b"), y = rot.roles.at("y");
    InteractiveProtocol p = rot;
    p.name = "ot-from-" + rot.name;
    p.registers.push_back(classical("w_X0", Party::kAlice));
    p.registers.push_back(classical("w_X1", Party::kAlice));
    p.registers.push_back(classical("w_s0", Party::kAlice));
    p.registers.push_back(classical("w_s1", Party::kAlice));
    p.registers.push_back(classical("w_B", Party::kBob));
    p.registers.push_back(classical("w_r", Party::kBob));
    p.registers.push_back(classical("w_y", Party::kBob));
    p.initial.push_back({Party::kAlice, prep_input("w_X0", X0)});
    p.initial.push_back({Party::kAlice, prep_input("w_X1", X1)});
    p.initial.push_back({Party::kBob, prep_input("w_B", B)});

    Step announce_r{Party::kBob, {}, Message{"w_r", TransferKind::kCopy, "w_r"}};
    announce_r.ops.push_back(Measure{{b, "w_B"}, "w_r", [](std::span<const std::size_t> v) { return v[0] ^ v[1]; }});

    Step masks{Party::kAlice, {}, Message{"w_s0", TransferKind::kCopy, "w_s0"}};
    for (std::size_t c = 0; c < 2; ++c) {
        masks.ops.push_back(Measure{{x0, x1, "w_r", c == 0 ? "w_X0" : "w_X1"}, c == 0 ? "w_s0" : "w_s1",
                                    [c](std::span<const std::size_t> v) { return v[c ^ v[2]] ^ v[3]; }});
    }
    Step second_mask{Party::kAlice, {}, Message{"w_s1", TransferKind::kCopy, "w_s1"}};

    Step unmask{Party::kBob, {}, std::nullopt};
    unmask.ops.push_back(Measure{{y, "w_s0", "w_s1", "w_B"}, "w_y",
                                 [](std::span<const std::size_t> v) { return v[0] ^ v[1 + v[3]]; }});
    p.steps.push_back(announce_r);
    p.steps.push_back(masks);
    p.steps.push_back(second_mask);
    p.steps.push_back(unmask);
    p.alice_output = {{"w_X0", "w_X1"}, [](std::span<const std::size_t> v) { return bits_label(v); }};
    p.bob_output = {{"w_B", "w_y"}, [](std::span<const std::size_t> v) {
                        const std::size_t idx[1] = {v[0]};
                        const std::size_t bit[1] = {v[1]};
                        return bob_label(idx, bit);
                    }};
    p.roles = {{"x0", "w_X0"}, {"x1", "w_X1"}, {"b", "w_B"}, {"y", "w_y"}};
    return p;
}

OtOutcome ot_from_random_ot(const InteractiveProtocol &rot, std::size_t X0, std::size_t X1, std::size_t B, Rng &rng) {
    return to_ot_outcome(run_sampled(ot_from_random_ot_protocol(rot, X0, X1, B), rng).outcome);
}

InteractiveProtocol cf_from_ot_protocol(const InteractiveProtocol &rot) {
    const std::string x0 = rot.roles.at("x0"), x1 = rot.roles.at("x1"), b = rot.roles.at("b"), y = rot.roles.at("y");
    InteractiveProtocol p = rot;
    p.name = "cf-from-" + rot.name;
    p.registers.push_back(classical("cf_c", Party::kAlice));
    p.initial.push_back({Party::kAlice, prep_input("cf_c", std::nullopt)});
    p.steps.push_back(Step{Party::kAlice, {}, Message{"cf_c", TransferKind::kCopy, "cf_c"}});
    p.steps.push_back(Step{Party::kBob, {}, Message{b, TransferKind::kCopy, "cf_b"}});
    p.steps.push_back(Step{Party::kBob, {}, Message{y, TransferKind::kCopy, "cf_y"}});
    Step check{Party::kAlice, {}, std::nullopt};
    check.ops.push_back(AbortUnless{{x0, x1, "cf_b", "cf_y"}, [](std::span<const std::size_t> v) { return v[3] == v[v[2]]; }});
    p.steps.push_back(check);
    p.alice_output = {{"cf_c", "cf_b"}, [](std::span<const std::size_t> v) { return coin_label(v[0] ^ v[1]); }};
    p.bob_output = {{"cf_c", b}, [](std::span<const std::size_t> v) {
                        const std::size_t idx[1] = {0};
                        const std::size_t bit[1] = {v[0] ^ v[1]};
                        return bob_label(idx, bit);
                    }};
    p.roles = {{"coin_alice", "cf_c"}, {"coin_bob", "cf_c"}};
    p.n = 1;
    p.k = 1;
    return p;
}

CfOutcome cf_from_ot(const InteractiveProtocol &rot, Rng &rng) {
    return to_cf_outcome(run_sampled(cf_from_ot_protocol(rot), rng).outcome);
}

InteractiveProtocol qutrit_commitment_cf_protocol() {
    InteractiveProtocol p;
    p.name = "qutrit-commitment-cf";
    p.registers = {classical("a", Party::kAlice), quantum("q1", Party::kAlice, 3), quantum("q2", Party::kAlice, 3),
                   classical("bp", Party::kBob)};
    p.initial = {{Party::kAlice, prep_input("a", std::nullopt)}, {Party::kBob, prep_input("bp", std::nullopt)}};

    Step commit{Party::kAlice, {}, Message{"q1", TransferKind::kMove, "c1"}};
    Controlled prep{{"a"}, {}};
    for (std::size_t a = 0; a < 2; ++a)
        prep.branches.push_back({Apply{{"q1", "q2"}, qlin::unitary_with_first_column(qutrit_pair_state(a))}});
    commit.ops.push_back(prep);

    Step announce{Party::kBob, {}, Message{"bp", TransferKind::kCopy, "bp"}};
    Step reveal{Party::kAlice, {}, Message{"a", TransferKind::kCopy, "a"}};
    Step open{Party::kAlice, {}, Message{"q2", TransferKind::kMove, "c2"}};

    Step verify{Party::kBob, {}, std::nullopt};
    Controlled rotate{{"a"}, {}};
    for (std::size_t a = 0; a < 2; ++a) rotate.branches.push_back({Apply{{"c1", "c2"}, pair_measurement_unitary(a)}});
    verify.ops.push_back(rotate);
    verify.ops.push_back(AbortUnless{{"c1", "c2"}, [](std::span<const std::size_t> v) { return v[0] == 0 && v[1] == 0; }});

    p.steps = {commit, announce, reveal, open, verify};
    p.alice_output = {{"a", "bp"}, [](std::span<const std::size_t> v) { return coin_label(v[0] ^ v[1]); }};
    p.bob_output = {{"a", "bp"}, [](std::span<const std::size_t> v) {
                        const std::size_t idx[1] = {0};
                        const std::size_t bit[1] = {v[0] ^ v[1]};
                        return bob_label(idx, bit);
                    }};
    p.roles = {{"coin_alice", "a"}, {"coin_bob", "bp"}};
    p.n = 1;
    p.k = 1;
    return p;
}

InteractiveProtocol announce_coin_protocol() {
    InteractiveProtocol p;
    p.name = "announce-coin";
    p.registers = {classical("c", Party::kAlice)};
    p.initial = {{Party::kAlice, prep_input("c", std::nullopt)}};
    p.steps = {Step{Party::kAlice, {}, Message{"c", TransferKind::kCopy, "c"}}};
    p.alice_output = {{"c"}, [](std::span<const std::size_t> v) { return coin_label(v[0]); }};
    p.bob_output = {{"c"}, [](std::span<const std::size_t> v) {
                        const std::size_t idx[1] = {0};
                        return bob_label(idx, v);
                    }};
    p.roles = {{"coin_alice", "c"}, {"coin_bob", "c"}};
    return p;
}

InteractiveProtocol classical_message_protocol(std::size_t bit) {
    if (bit > 1) throw DomainError("bit must be 0 or 1");
    InteractiveProtocol p = announce_coin_protocol();
    p.name = "classical-message";
    p.initial = {{Party::kAlice, prep_input("c", bit)}};
    return p;
}

std::optional<BobLabel> parse_bob_label(const std::string &label) {
    if (label.rfind("b={", 0) != 0) return std::nullopt;
    const auto close = label.find('}');
    const auto xb = label.find(";xb=");
    if (close == std::string::npos || xb == std::string::npos || xb != close + 1) return std::nullopt;
    BobLabel out;
    std::string inner = label.substr(3, close - 3);
    std::size_t pos = 0;
    while (pos < inner.size()) {
        auto comma = inner.find(',', pos);
        if (comma == std::string::npos) comma = inner.size();
        out.indices.push_back(static_cast<std::size_t>(std::stoul(inner.substr(pos, comma - pos))));
        pos = comma + 1;
    }
    for (char c : label.substr(xb + 4)) {
        if (c != '0' && c != '1') return std::nullopt;
        out.bits.push_back(static_cast<std::size_t>(c - '0'));
    }
    if (out.bits.size() != out.indices.size()) return std::nullopt;
    return out;
}

OtOutcome to_ot_outcome(const Outcome &o) {
    OtOutcome r;
    if (o.alice == kAbort || o.alice.size() != 2) {
        r.alice_aborted = true;
    } else {
        r.x0 = static_cast<std::size_t>(o.alice[0] - '0');
        r.x1 = static_cast<std::size_t>(o.alice[1] - '0');
    }
    auto bl = parse_bob_label(o.bob);
    if (!bl || bl->indices.size() != 1) {
        r.bob_aborted = true;
    } else {
        r.b = bl->indices[0];
        r.y = bl->bits[0];
    }
    return r;
}

CfOutcome to_cf_outcome(const Outcome &o) {
    CfOutcome r;
    if (o.alice == "0" || o.alice == "1") r.alice_coin = static_cast<std::size_t>(o.alice[0] - '0');
    auto bl = parse_bob_label(o.bob);
    if (bl && bl->bits.size() == 1) r.bob_coin = bl->bits[0];
    return r;
}

}  // namespace otlab::otcore
