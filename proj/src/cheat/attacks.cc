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

#include "otlab/cheat/attacks.h"

#include <cmath>

#include "otlab/error.h"
#include "otlab/otcore/executor.h"
#include "otlab/otcore/protocols.h"

namespace otlab::cheat {

using namespace otlab::otcore;
using qlin::ComplexMatrix;
using qlin::ComplexVector;

namespace {

RegisterDecl creg(const std::string &name, Party side, std::size_t dim = 2) { return {name, dim, side, true}; }
RegisterDecl qreg(const std::string &name, Party side, std::size_t dim) { return {name, dim, side, false}; }

std::size_t ident(std::span<const std::size_t> v) { return v[0]; }

OutputRule bit_guess(const std::string &reg) {
    return {{reg}, [](std::span<const std::size_t> v) { return bits_label(v); }};
}

// Ops of the basis attack on the received qutrit "q"; the guess of b lands in `g`.
std::vector<Op> basis_attack_ops() {
    return {Measure{{"q"}, "m", ident}, Prepare{"coin", uniform_amplitudes(2)},
            Measure{{"m", "coin"}, "g", [](std::span<const std::size_t> v) { return v[0] < 2 ? v[0] : v[1]; }}};
}

std::vector<RegisterDecl> basis_attack_registers() {
    return {creg("m", Party::kAlice, 3), creg("coin", Party::kAlice), creg("g", Party::kAlice)};
}

// Padded 4-dim space inside (qutrit, qubit): |i> -> |i,0> for i < 3 and |3> -> |0,1>.
ComplexVector embed4(const ComplexVector &v) {
    ComplexVector e = ComplexVector::Zero(6);
    for (Eigen::Index i = 0; i < 3; ++i) e(2 * i) = v(i);
    e(1) = v(3);
    return e;
}

ComplexMatrix superposition_decoder() {
    const ComplexMatrix basis = superposition_measurement_basis();
    std::vector<ComplexVector> src;
    std::vector<std::size_t> tgt;
    for (std::size_t x = 0; x < 4; ++x) {
        src.push_back(embed4(basis.col(static_cast<Eigen::Index>(x))));
        tgt.push_back(x);
    }
    return qlin::unitary_mapping(src, tgt, 6);
}

std::vector<Op> superposition_decode_ops() {
    return {Apply{{"q", "pad"}, superposition_decoder()},
            Measure{{"q", "pad"}, "gx", [](std::span<const std::size_t> v) {
                        const std::size_t idx = v[0] * 2 + v[1];
                        return idx < 4 ? idx : std::size_t{0};
                    }}};
}

OutputRule pair_guess(const std::string &reg) {
    return {{reg}, [](std::span<const std::size_t> v) {
                const std::size_t bits[2] = {v[0] / 2, v[0] % 2};
                return bits_label(bits);
            }};
}

}  // namespace

ComplexMatrix superposition_measurement_basis() {
    ComplexMatrix m(4, 4);
    for (int x0 = 0; x0 < 2; ++x0)
        for (int x1 = 0; x1 < 2; ++x1) {
            const Eigen::Index c = 2 * x0 + x1;
            m(0, c) = 0.5 * (x0 ? -1 : 1);
            m(1, c) = 0.5 * (x1 ? -1 : 1);
            m(2, c) = 0.5;
            m(3, c) = 0.5 * ((x0 ^ x1) ? -1 : 1);
        }
    return m;
}

ComplexVector phased_state(const ComplexVector &alpha, std::size_t x0, std::size_t x1) {
    if (alpha.size() != 3) throw DimensionError("sent state must be a qutrit");
    ComplexVector out = alpha;
    if (x0) out(0) = -out(0);
    if (x1) out(1) = -out(1);
    return out;
}

Strategy alice_basis_attack() {
    Strategy s;
    s.descriptor = "alice-basis-measurement";
    s.party = Party::kAlice;
    s.target_event = "guess b, bob does not abort";
    s.program.name = s.descriptor;
    s.program.side = Party::kAlice;
    s.program.registers = basis_attack_registers();
    s.program.step_ops[1] = basis_attack_ops();
    s.program.messages[1] = Message{"q", TransferKind::kMove, "q"};
    s.program.guess = bit_guess("g");
    s.event = alice_guesses_b();
    return s;
}

Strategy bob_superposition_attack() {
    Strategy s;
    s.descriptor = "bob-uniform-superposition";
    s.party = Party::kBob;
    s.target_event = "guess (x0, x1)";
    s.program.name = s.descriptor;
    s.program.side = Party::kBob;
    s.program.registers = {qreg("s", Party::kBob, 3), qreg("pad", Party::kBob, 2), creg("gx", Party::kBob, 4)};
    s.program.step_ops[0] = {Prepare{"s", uniform_amplitudes(3)}};
    s.program.messages[0] = Message{"s", TransferKind::kMove, "q"};
    s.program.step_ops[2] = superposition_decode_ops();
    s.program.guess = pair_guess("gx");
    s.event = bob_guesses_pair();
    return s;
}

Strategy bob_parity_attack() {
    Strategy s;
    s.descriptor = "bob-entangled-parity";
    s.party = Party::kBob;
    s.target_event = "guess x0 xor x1";
    s.program.name = s.descriptor;
    s.program.side = Party::kBob;
    s.program.registers = {qreg("s", Party::kBob, 3), qreg("e", Party::kBob, 2), creg("par", Party::kBob)};
    // (s, e) ordering: index = 2*s + e; Bell pair on s in {0,1}.
    ComplexVector bell = ComplexVector::Zero(6);
    bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
    ComplexVector bell_minus = ComplexVector::Zero(6);
    bell_minus(0) = 1.0 / std::sqrt(2.0);
    bell_minus(3) = -1.0 / std::sqrt(2.0);
    s.program.step_ops[0] = {Apply{{"s", "e"}, qlin::unitary_with_first_column(bell)}};
    s.program.messages[0] = Message{"s", TransferKind::kMove, "q"};
    std::vector<ComplexVector> src{bell, bell_minus};
    std::vector<std::size_t> tgt{0, 1};
    s.program.step_ops[2] = {Apply{{"q", "e"}, qlin::unitary_mapping(src, tgt, 6)},
                             Measure{{"q", "e"}, "par", [](std::span<const std::size_t> v) {
                                         return static_cast<std::size_t>(v[0] * 2 + v[1] == 1);
                                     }}};
    s.program.guess = bit_guess("par");
    s.event = bob_guesses_parity();
    return s;
}

Strategy alice_basis_attack_through_ot_wrapper() {
    Strategy s = alice_basis_attack();
    s.descriptor = "alice-basis-measurement-through-ot-wrapper";
    s.target_event = "guess B, bob does not abort";
    s.program.name = s.descriptor;
    s.program.registers.push_back(creg("z0", Party::kAlice));
    s.program.registers.push_back(creg("z1", Party::kAlice));
    s.program.registers.push_back(creg("G", Party::kAlice));
    // Wrapper steps: 3 Bob announces r, 4 and 5 Alice announces masks.
    s.program.messages[4] = Message{"z0", TransferKind::kCopy, "w_s0"};
    s.program.messages[5] = Message{"z1", TransferKind::kCopy, "w_s1"};
    s.program.final_ops = {Measure{{"g", "w_r"}, "G", [](std::span<const std::size_t> v) { return v[0] ^ v[1]; }}};
    s.program.guess = bit_guess("G");
    return s;
}

Strategy bob_superposition_attack_through_ot_wrapper() {
    Strategy s = bob_superposition_attack();
    s.descriptor = "bob-uniform-superposition-through-ot-wrapper";
    s.target_event = "guess (X0, X1)";
    s.program.name = s.descriptor;
    s.program.registers.push_back(creg("r0", Party::kBob));
    s.program.registers.push_back(creg("GX", Party::kBob, 4));
    s.program.messages[3] = Message{"r0", TransferKind::kCopy, "w_r"};
    // With r = 0: X_c = x_c xor s_c.
    s.program.final_ops = {Measure{{"gx", "w_s0", "w_s1"}, "GX", [](std::span<const std::size_t> v) {
                                       const std::size_t x0 = (v[0] / 2) ^ v[1], x1 = (v[0] % 2) ^ v[2];
                                       return 2 * x0 + x1;
                                   }}};
    s.program.guess = pair_guess("GX");
    return s;
}

Strategy alice_basis_attack_through_cf(std::size_t target) {
    if (target > 1) throw DomainError("target coin must be a bit");
    Strategy s = alice_basis_attack();
    s.descriptor = "alice-basis-measurement-through-cf";
    s.target_event = "force coin " + std::to_string(target);
    s.program.name = s.descriptor;
    s.program.registers.push_back(creg("cx", Party::kAlice));
    // CF steps: 3 Alice announces c, 4 and 5 Bob announces b and y, 6 Alice checks.
    s.program.step_ops[3] = {Measure{{"g"}, "cx", [target](std::span<const std::size_t> v) { return v[0] ^ target; }}};
    s.program.messages[3] = Message{"cx", TransferKind::kCopy, "cf_c"};
    s.program.guess.reset();
    s.event = bob_output_is("b={0};xb=" + std::to_string(target));
    return s;
}

Strategy commitment_cf_bob_attack(std::size_t target) {
    if (target > 1) throw DomainError("target coin must be a bit");
    Strategy s;
    s.descriptor = "bob-read-commitment";
    s.party = Party::kBob;
    s.target_event = "force coin " + std::to_string(target);
    s.program.name = s.descriptor;
    s.program.side = Party::kBob;
    s.program.registers = {creg("m", Party::kBob, 3), creg("rnd", Party::kBob), creg("bx", Party::kBob)};
    s.program.step_ops[1] = {Measure{{"c1"}, "m", ident}, Prepare{"rnd", uniform_amplitudes(2)},
                             Measure{{"m", "rnd"}, "bx", [target](std::span<const std::size_t> v) {
                                         return (v[0] < 2 ? v[0] : v[1]) ^ target;
                                     }}};
    s.program.messages[1] = Message{"bx", TransferKind::kCopy, "bp"};
    s.event = alice_output_is(std::to_string(target));
    return s;
}

Strategy commitment_cf_alice_attack(std::size_t target) {
    if (target > 1) throw DomainError("target coin must be a bit");
    Strategy s;
    s.descriptor = "alice-biased-commitment";
    s.party = Party::kAlice;
    s.target_event = "force coin " + std::to_string(target);
    s.program.name = s.descriptor;
    s.program.side = Party::kAlice;
    s.program.registers = {qreg("q1", Party::kAlice, 3), qreg("q2", Party::kAlice, 3), creg("ax", Party::kAlice)};
    ComplexVector chi = ComplexVector::Zero(9);
    chi(0) = chi(4) = 1.0 / std::sqrt(6.0);
    chi(8) = 2.0 / std::sqrt(6.0);
    s.program.step_ops[0] = {Apply{{"q1", "q2"}, qlin::unitary_with_first_column(chi)}};
    s.program.messages[0] = Message{"q1", TransferKind::kMove, "c1"};
    s.program.step_ops[2] = {Measure{{"bp"}, "ax", [target](std::span<const std::size_t> v) { return v[0] ^ target; }}};
    s.program.messages[2] = Message{"ax", TransferKind::kCopy, "a"};
    s.program.messages[3] = Message{"q2", TransferKind::kMove, "c2"};
    s.event = bob_output_is("b={0};xb=" + std::to_string(target));
    return s;
}

double exact_value(const otcore::InteractiveProtocol &protocol, const Strategy &s) {
    return exact_success(protocol, s.program, s.event);
}

}  // namespace otlab::cheat
