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

// Interactive two-party protocols as a small register-level program.
//
// A protocol declares registers (each owned by one party, classical or
// quantum) and a sequence of steps. In each step one party runs a list of
// operations on registers it currently holds and optionally sends one
// register to the other party. Classical registers are only ever permuted,
// used as controls, or read; this is what lets the same program be executed
// with mid-protocol measurements (otcore) and compiled into a unitary
// round structure with deferred measurement (model).

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "otlab/qlin/linalg.h"

namespace otlab::otcore {

enum class Party { kAlice, kBob };

inline Party other(Party p) { return p == Party::kAlice ? Party::kBob : Party::kAlice; }
const char *party_name(Party p);
/// Accepts "alice" / "bob" (case-insensitive); throws ValidationError otherwise.
Party parse_party(const std::string &name);

struct RegisterDecl {
    std::string name;
    std::size_t dim = 2;
    Party owner = Party::kAlice;
    bool classical = true;
};

/// Reads basis values of the listed registers (in listed order).
using Predicate = std::function<bool(std::span<const std::size_t>)>;
using ValueMap = std::function<std::size_t(std::span<const std::size_t>)>;
using LabelFn = std::function<std::string(std::span<const std::size_t>)>;

struct Op;

/// Maps |0> to the given amplitudes (Householder completion on other inputs).
/// On a classical register the amplitudes define the sampling distribution;
/// the register must still hold 0.
struct Prepare {
    std::string reg;
    qlin::ComplexVector amplitudes;
};

/// Unitary on the joint space of `regs` (first listed register most significant).
/// Classical registers accept only permutation matrices.
struct Apply {
    std::vector<std::string> regs;
    qlin::ComplexMatrix unitary;
};

/// Runs branches[v] where v is the mixed-radix value of the control registers.
/// Missing or empty branches act as identity.
struct Controlled {
    std::vector<std::string> controls;
    std::vector<std::vector<Op>> branches;
};

/// Computational-basis measurement of `sources`; target += map(values) mod dim(target).
/// Quantum sources collapse. The target must be classical.
struct Measure {
    std::vector<std::string> sources;
    std::string target;
    ValueMap map;
};

/// Two-outcome projective test: the acting party aborts unless the basis
/// values of `regs` satisfy `pred`.
struct AbortUnless {
    std::vector<std::string> regs;
    Predicate pred;
};

struct Op {
    std::variant<Prepare, Apply, Controlled, Measure, AbortUnless> v;
    template <typename T>
    Op(T t) : v(std::move(t)) {}  // NOLINT(google-explicit-constructor)
};

enum class TransferKind { kMove, kCopy };

/// A Move hands the register itself over; a Copy sends the (measured)
/// classical value into a fresh register of the receiver. Either way the
/// receiver refers to it as `as`.
struct Message {
    std::string reg;
    TransferKind kind = TransferKind::kMove;
    std::string as;
};

struct Step {
    Party actor = Party::kAlice;
    std::vector<Op> ops;
    std::optional<Message> message;
};

struct OutputRule {
    std::vector<std::string> regs;
    LabelFn label;
};

struct InteractiveProtocol {
    std::string name;
    std::vector<RegisterDecl> registers;
    /// Local preparations before the first step (inputs or local randomness).
    std::vector<std::pair<Party, Prepare>> initial;
    std::vector<Step> steps;
    OutputRule alice_output;
    OutputRule bob_output;
    /// Named register roles, e.g. "x0" -> "x0", "b" -> "b", "y" -> "y".
    std::map<std::string, std::string> roles;
    std::size_t n = 1;
    std::size_t k = 1;

    const RegisterDecl &reg(const std::string &name) const;
    bool has_reg(const std::string &name) const;
};

/// The replacement program for one party. Step i of the protocol whose actor
/// is `side` runs `step_ops[i]` and sends `messages[i]` instead of the honest
/// step. `final_ops` run after the last step; `guess` reads the adversary's
/// declared guess.
struct AdversaryProgram {
    std::string name;
    Party side = Party::kAlice;
    std::vector<RegisterDecl> registers;
    std::vector<std::pair<Party, Prepare>> initial;
    std::map<std::size_t, std::vector<Op>> step_ops;
    std::map<std::size_t, Message> messages;
    std::vector<Op> final_ops;
    std::optional<OutputRule> guess;
};

/// Throws ValidationError when declarations or references are inconsistent.
void validate_structure(const InteractiveProtocol &protocol);

/// Registers referenced by an op (recursively, controls included).
void collect_registers(const Op &op, std::vector<std::string> &out);

/// Unitary of a Prepare on a register of the given dimension.
qlin::ComplexMatrix prepare_unitary(const qlin::ComplexVector &amplitudes, std::size_t dim);

/// Amplitudes of |+> on a d-level register.
qlin::ComplexVector uniform_amplitudes(std::size_t dim);
qlin::ComplexVector basis_amplitudes(std::size_t dim, std::size_t index);

/// Bit string label "b0b1..." for a list of bits.
std::string bits_label(std::span<const std::size_t> bits);
/// fOT label for Bob: "b={i,...};xb=bits".
std::string bob_label(std::span<const std::size_t> indices, std::span<const std::size_t> bits);

inline const std::string kAbort = "abort";

}  // namespace otlab::otcore
