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

#include "otlab/otcore/program.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "otlab/error.h"
#include "otlab/otcore/scope.h"

namespace otlab::otcore {

using qlin::ComplexMatrix;
using qlin::ComplexVector;

const char *party_name(Party p) { return p == Party::kAlice ? "alice" : "bob"; }

Party parse_party(const std::string &name) {
    std::string s = name;
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s == "alice") return Party::kAlice;
    if (s == "bob") return Party::kBob;
    throw ValidationError("unknown party '" + name + "'");
}

const RegisterDecl &InteractiveProtocol::reg(const std::string &name) const {
    for (const auto &r : registers)
        if (r.name == name) return r;
    throw ValidationError("protocol " + this->name + " has no register '" + name + "'");
}

bool InteractiveProtocol::has_reg(const std::string &name) const {
    return std::any_of(registers.begin(), registers.end(), [&](const RegisterDecl &r) { return r.name == name; });
}

std::size_t Scope::declare(const RegisterDecl &decl) {
    if (decl.dim == 0) throw ValidationError("register '" + decl.name + "' has dimension 0");
    auto &ns = names_[party_index(decl.owner)];
    if (ns.count(decl.name)) throw ValidationError("register '" + decl.name + "' declared twice");
    instances_.push_back({decl.name, decl.dim, decl.classical, decl.owner});
    ns[decl.name] = instances_.size() - 1;
    return instances_.size() - 1;
}

std::size_t Scope::resolve(Party party, const std::string &name) const {
    const auto &ns = names_[party_index(party)];
    auto it = ns.find(name);
    if (it == ns.end())
        throw ValidationError(std::string(party_name(party)) + " does not hold register '" + name + "'");
    return it->second;
}

bool Scope::visible(Party party, const std::string &name) const { return names_[party_index(party)].count(name) > 0; }

std::size_t Scope::move(Party from, const std::string &name, const std::string &as) {
    const std::size_t id = resolve(from, name);
    auto &dst = names_[party_index(other(from))];
    if (dst.count(as)) throw ValidationError("receiver already holds a register named '" + as + "'");
    names_[party_index(from)].erase(name);
    dst[as] = id;
    instances_[id].holder = other(from);
    return id;
}

std::size_t Scope::copy(Party from, const std::string &name, const std::string &as) {
    const std::size_t src = resolve(from, name);
    auto &dst = names_[party_index(other(from))];
    if (dst.count(as)) throw ValidationError("receiver already holds a register named '" + as + "'");
    instances_.push_back({as, instances_[src].dim, true, other(from)});
    dst[as] = instances_.size() - 1;
    return instances_.size() - 1;
}

std::size_t Scope::bind_dummy(Party receiver, const std::string &as, std::size_t dim) {
    auto &dst = names_[party_index(receiver)];
    instances_.push_back({as, dim, true, receiver});
    dst[as] = instances_.size() - 1;
    return instances_.size() - 1;
}

void collect_registers(const Op &op, std::vector<std::string> &out) {
    std::visit(
        [&](const auto &o) {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, Prepare>) {
                out.push_back(o.reg);
            } else if constexpr (std::is_same_v<T, Apply>) {
                out.insert(out.end(), o.regs.begin(), o.regs.end());
            } else if constexpr (std::is_same_v<T, Controlled>) {
                out.insert(out.end(), o.controls.begin(), o.controls.end());
                for (const auto &branch : o.branches)
                    for (const auto &inner : branch) collect_registers(inner, out);
            } else if constexpr (std::is_same_v<T, Measure>) {
                out.insert(out.end(), o.sources.begin(), o.sources.end());
                out.push_back(o.target);
            } else {
                out.insert(out.end(), o.regs.begin(), o.regs.end());
            }
        },
        op.v);
}

namespace {

std::size_t joint_dim(const Scope &scope, Party party, const std::vector<std::string> &regs) {
    std::size_t d = 1;
    for (const auto &r : regs) d *= scope.instance(scope.resolve(party, r)).dim;
    return d;
}

void check_distinct(const std::vector<std::string> &regs, const std::string &what) {
    std::set<std::string> s(regs.begin(), regs.end());
    if (s.size() != regs.size()) throw ValidationError(what + " lists a register twice");
}

void check_op(const Scope &scope, Party party, const Op &op) {
    std::visit(
        [&](const auto &o) {
            using T = std::decay_t<decltype(o)>;
            if constexpr (std::is_same_v<T, Prepare>) {
                const auto &inst = scope.instance(scope.resolve(party, o.reg));
                if (static_cast<std::size_t>(o.amplitudes.size()) != inst.dim)
                    throw ValidationError("prepare of '" + o.reg + "' has wrong amplitude count");
                if (std::abs(o.amplitudes.norm() - 1.0) > qlin::kStateTol * 10)
                    throw ValidationError("prepare of '" + o.reg + "' is not normalized");
            } else if constexpr (std::is_same_v<T, Apply>) {
                check_distinct(o.regs, "apply");
                const std::size_t d = joint_dim(scope, party, o.regs);
                if (static_cast<std::size_t>(o.unitary.rows()) != d || o.unitary.rows() != o.unitary.cols())
                    throw ValidationError("apply unitary has wrong dimension");
                if (!qlin::is_unitary(o.unitary)) throw ValidationError("apply operator is not unitary");
            } else if constexpr (std::is_same_v<T, Controlled>) {
                check_distinct(o.controls, "controlled");
                const std::size_t d = joint_dim(scope, party, o.controls);
                if (o.branches.size() > d) throw ValidationError("controlled op has more branches than control values");
                for (const auto &branch : o.branches)
                    for (const auto &inner : branch) {
                        std::vector<std::string> regs;
                        collect_registers(inner, regs);
                        for (const auto &r : regs)
                            if (std::find(o.controls.begin(), o.controls.end(), r) != o.controls.end())
                                throw ValidationError("controlled branch modifies its own control '" + r + "'");
                        check_op(scope, party, inner);
                    }
            } else if constexpr (std::is_same_v<T, Measure>) {
                std::vector<std::string> all = o.sources;
                all.push_back(o.target);
                check_distinct(all, "measure");
                joint_dim(scope, party, o.sources);
                if (!scope.instance(scope.resolve(party, o.target)).classical)
                    throw ValidationError("measurement target '" + o.target + "' must be classical");
                if (!o.map) throw ValidationError("measurement without value map");
            } else {
                check_distinct(o.regs, "abort check");
                joint_dim(scope, party, o.regs);
                if (!o.pred) throw ValidationError("abort check without predicate");
            }
        },
        op.v);
}

}  // namespace

void validate_structure(const InteractiveProtocol &protocol) {
    Scope scope;
    for (const auto &r : protocol.registers) {
        for (const auto &q : protocol.registers)
            if (&q != &r && q.name == r.name) throw ValidationError("duplicate register '" + r.name + "'");
        scope.declare(r);
    }
    for (const auto &[party, prep] : protocol.initial) check_op(scope, party, Op(prep));
    for (std::size_t i = 0; i < protocol.steps.size(); ++i) {
        const Step &s = protocol.steps[i];
        try {
            for (const auto &op : s.ops) check_op(scope, s.actor, op);
            if (s.message) {
                if (s.message->kind == TransferKind::kMove)
                    scope.move(s.actor, s.message->reg, s.message->as);
                else
                    scope.copy(s.actor, s.message->reg, s.message->as);
            }
        } catch (const ValidationError &e) {
            throw ValidationError("step " + std::to_string(i) + ": " + e.what());
        }
    }
    if (!protocol.alice_output.label || !protocol.bob_output.label) throw ValidationError("missing output rule");
    for (const auto &r : protocol.alice_output.regs) scope.resolve(Party::kAlice, r);
    for (const auto &r : protocol.bob_output.regs) scope.resolve(Party::kBob, r);
    if (protocol.k == 0 || protocol.k > protocol.n) throw ValidationError("need 1 <= k <= n");
}

ComplexMatrix prepare_unitary(const ComplexVector &amplitudes, std::size_t dim) {
    if (static_cast<std::size_t>(amplitudes.size()) != dim) throw DimensionError("amplitude count mismatch");
    // Basis states become cyclic shifts so that classical preparations stay permutations.
    for (std::size_t i = 0; i < dim; ++i) {
        if (std::abs(std::abs(amplitudes(static_cast<Eigen::Index>(i))) - 1.0) < 1e-15 &&
            std::abs(amplitudes(static_cast<Eigen::Index>(i)) - 1.0) < 1e-15) {
            ComplexMatrix p = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
            for (std::size_t j = 0; j < dim; ++j)
                p(static_cast<Eigen::Index>((j + i) % dim), static_cast<Eigen::Index>(j)) = 1.0;
            return p;
        }
    }
    return qlin::unitary_with_first_column(amplitudes);
}

ComplexVector uniform_amplitudes(std::size_t dim) {
    return ComplexVector::Constant(static_cast<Eigen::Index>(dim), 1.0 / std::sqrt(static_cast<double>(dim)));
}

ComplexVector basis_amplitudes(std::size_t dim, std::size_t index) { return qlin::PureState::basis(dim, index).amplitudes(); }

std::string bits_label(std::span<const std::size_t> bits) {
    std::string s;
    for (std::size_t b : bits) s += static_cast<char>('0' + b);
    return s;
}

std::string bob_label(std::span<const std::size_t> indices, std::span<const std::size_t> bits) {
    std::string s = "b={";
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(indices[i]);
    }
    return s + "};xb=" + bits_label(bits);
}

}  // namespace otlab::otcore
