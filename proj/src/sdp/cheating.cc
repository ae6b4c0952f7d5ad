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

#include "otlab/sdp/cheating.h"

#include "otlab/error.h"

namespace otlab::sdp {

using qlin::ComplexVector;

namespace {

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

// The honest party's view is H (x) M for Alice and M (x) H for Bob.
struct View {
    std::size_t dh;
    std::size_t dm;
    bool h_first;

    ComplexMatrix lift(const ComplexMatrix &w) const {
        const ComplexMatrix id = ComplexMatrix::Identity(idx(dm), idx(dm));
        return h_first ? qlin::tensor(w, id) : qlin::tensor(id, w);
    }
    // (I_H (x) <m|) as a dh x (dh*dm) matrix.
    ComplexMatrix bra_m(std::size_t m) const {
        ComplexVector e = ComplexVector::Zero(idx(dm));
        e(idx(m)) = 1.0;
        const ComplexMatrix id = ComplexMatrix::Identity(idx(dh), idx(dh));
        return h_first ? qlin::tensor(id, e.transpose()) : qlin::tensor(e.transpose(), id);
    }
    ComplexMatrix trace_m(const ComplexMatrix &rho) const {
        ComplexMatrix out = ComplexMatrix::Zero(idx(dh), idx(dh));
        for (std::size_t m = 0; m < dm; ++m) {
            const ComplexMatrix b = bra_m(m);
            out += b * rho * b.adjoint();
        }
        return out;
    }
};

}  // namespace

SdpProblem build_cheating_sdp(const model::ProtocolSpec &spec, Party cheater, const std::string &target) {
    model::require_valid(spec);
    const Party honest = otcore::other(cheater);
    const auto &povm = honest == Party::kAlice ? spec.alice_povm : spec.bob_povm;
    auto it = povm.find(target);
    if (it == povm.end())
        throw PreconditionError("'" + target + "' is not an outcome of " + otcore::party_name(honest) + "'s measurement");

    const View view{honest == Party::kAlice ? spec.dim_a : spec.dim_b, spec.dim_m, honest == Party::kAlice};
    const std::size_t dv = view.dh * view.dm;

    // Maximal runs of honest rounds, each multiplied into one unitary.
    std::vector<ComplexMatrix> blocks;
    bool in_run = false;
    for (const auto &r : spec.rounds) {
        if (r.actor != honest) {
            in_run = false;
            continue;
        }
        if (in_run) blocks.back() = r.unitary * blocks.back();
        else blocks.push_back(r.unitary);
        in_run = true;
    }
    const bool pinned = !spec.rounds.empty() && spec.rounds.front().actor == honest;

    SdpProblem p;
    p.metadata.cheater = otcore::party_name(cheater);
    p.metadata.target = target;
    p.metadata.n_constraints_rounds = blocks.size();
    p.metadata.n_messages = spec.messages;
    p.metadata.n_spec_rounds = spec.rounds.size();
    p.metadata.n_convention =
        "N counts maximal runs of honest rounds, i.e. messages the cheater receives; rho_j follows the cheater's j-th turn";

    // rho_0 and its support.
    ComplexMatrix v0;
    if (pinned) {
        v0 = ComplexMatrix::Zero(idx(dv), 1);
        v0(0, 0) = 1.0;
    } else {
        ComplexMatrix w = ComplexMatrix::Zero(idx(view.dh), 1);
        w(0, 0) = 1.0;
        v0 = view.lift(w);
    }
    p.blocks.push_back({"rho_0", static_cast<std::size_t>(v0.cols()), v0});
    {
        Constraint c;
        c.name = "initial";
        c.dim = 1;
        c.rhs = ComplexMatrix::Ones(1, 1);
        MapTerm t{0, 1.0, {}};
        ComplexMatrix w0 = ComplexMatrix::Zero(idx(view.dh), 1);
        w0(0, 0) = 1.0;
        for (std::size_t m = 0; m < view.dm; ++m) t.kraus.push_back(w0.adjoint() * view.bra_m(m) * v0);
        c.terms.push_back(std::move(t));
        p.constraints.push_back(std::move(c));
    }

    ComplexMatrix prev = v0;
    for (std::size_t j = 1; j <= blocks.size(); ++j) {
        const ComplexMatrix &u = blocks[j - 1];
        const ComplexMatrix moved = u * prev;
        const ComplexMatrix w = qlin::column_space(view.trace_m(moved * moved.adjoint()));
        const ComplexMatrix vj = view.lift(w);
        const std::string name = "rho_" + std::to_string(j);
        p.blocks.push_back({name, static_cast<std::size_t>(vj.cols()), vj});

        Constraint c;
        c.name = "round " + std::to_string(j);
        c.dim = static_cast<std::size_t>(w.cols());
        c.rhs = ComplexMatrix::Zero(w.cols(), w.cols());
        MapTerm lhs{j, 1.0, {}};
        MapTerm rhs{j - 1, -1.0, {}};
        for (std::size_t m = 0; m < view.dm; ++m) {
            const ComplexMatrix b = w.adjoint() * view.bra_m(m);
            lhs.kraus.push_back(b * vj);
            rhs.kraus.push_back(b * moved);
        }
        c.terms.push_back(std::move(lhs));
        c.terms.push_back(std::move(rhs));
        p.constraints.push_back(std::move(c));
        prev = vj;
    }

    const ComplexMatrix obj = view.lift(it->second);
    for (const auto &b : p.blocks) p.objective.push_back(ComplexMatrix::Zero(idx(b.dim), idx(b.dim)));
    p.objective.back() = prev.adjoint() * obj * prev;
    return p;
}

}  // namespace otlab::sdp
