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

#include "otlab/model/compile.h"

#include <Eigen/SparseCore>
#include <algorithm>
#include <functional>
#include <tuple>
#include <limits>
#include <optional>

#include "otlab/error.h"
#include "otlab/otcore/scope.h"

namespace otlab::model {

using otcore::InteractiveProtocol;
using otcore::Op;
using otcore::Scope;
using otcore::TransferKind;
using qlin::Complex;

namespace {

using Sparse = Eigen::SparseMatrix<Complex>;
using Triplets = std::vector<Eigen::Triplet<Complex>>;
constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// An op with register names resolved to instance ids.
struct ROp {
    enum class Kind { kApply, kMeasure, kControlled, kAbort } kind = Kind::kApply;
    std::vector<std::size_t> ids;
    ComplexMatrix u;
    std::size_t target = 0;
    otcore::ValueMap map;
    otcore::Predicate pred;
    std::vector<std::vector<ROp>> branches;
    std::size_t check = 0;
};

struct Msg {
    TransferKind kind = TransferKind::kMove;
    std::size_t src = 0;
    std::size_t dst = 0;
    std::size_t dim = 0;
    std::string as;
};

struct RoundPlan {
    Party actor = Party::kAlice;
    std::vector<ROp> ops;
    std::optional<Msg> in;
    std::optional<Msg> out;
    std::size_t transient = kNone;
};

class Resolver {
  public:
    explicit Resolver(const Scope &scope) : scope_(scope) {}

    ROp resolve(Party party, const Op &op, std::size_t &checks) const {
        ROp r;
        std::visit(
            [&](const auto &o) {
                using T = std::decay_t<decltype(o)>;
                if constexpr (std::is_same_v<T, otcore::Prepare>) {
                    const std::size_t id = scope_.resolve(party, o.reg);
                    r.kind = ROp::Kind::kApply;
                    r.ids = {id};
                    r.u = otcore::prepare_unitary(o.amplitudes, scope_.instance(id).dim);
                } else if constexpr (std::is_same_v<T, otcore::Apply>) {
                    r.kind = ROp::Kind::kApply;
                    r.ids = ids(party, o.regs);
                    r.u = o.unitary;
                } else if constexpr (std::is_same_v<T, otcore::Measure>) {
                    r.kind = ROp::Kind::kMeasure;
                    r.ids = ids(party, o.sources);
                    r.target = scope_.resolve(party, o.target);
                    r.map = o.map;
                } else if constexpr (std::is_same_v<T, otcore::Controlled>) {
                    r.kind = ROp::Kind::kControlled;
                    r.ids = ids(party, o.controls);
                    for (const auto &branch : o.branches) {
                        std::vector<ROp> rb;
                        for (const auto &inner : branch) rb.push_back(resolve(party, inner, checks));
                        r.branches.push_back(std::move(rb));
                    }
                } else {
                    r.kind = ROp::Kind::kAbort;
                    r.ids = ids(party, o.regs);
                    r.pred = o.pred;
                    r.check = ++checks;
                }
            },
            op.v);
        return r;
    }

  private:
    std::vector<std::size_t> ids(Party party, const std::vector<std::string> &names) const {
        std::vector<std::size_t> out;
        for (const auto &n : names) out.push_back(scope_.resolve(party, n));
        return out;
    }
    const Scope &scope_;
};

void touched(const ROp &op, std::vector<std::size_t> &out) {
    out.insert(out.end(), op.ids.begin(), op.ids.end());
    if (op.kind == ROp::Kind::kMeasure) out.push_back(op.target);
    for (const auto &b : op.branches)
        for (const auto &inner : b) touched(inner, out);
}

// Local space of one party in one round: its private factors plus M.
class LocalSpace {
  public:
    LocalSpace(qlin::SubsystemLayout layout, std::size_t m_factor, std::size_t flag_factor)
        : layout_(std::move(layout)), m_factor_(m_factor), flag_factor_(flag_factor) {}

    std::size_t total() const { return layout_.total(); }
    std::size_t m_factor() const { return m_factor_; }

    /// `where` maps instance id to (factor, register dim).
    std::function<std::pair<std::size_t, std::size_t>(std::size_t)> where;

    Sparse identity() const {
        Sparse s(n(), n());
        s.setIdentity();
        return s;
    }

    Sparse lift(const ROp &op) const {
        switch (op.kind) {
            case ROp::Kind::kApply: return apply(op);
            case ROp::Kind::kMeasure: {
                const auto src = locate(op.ids);
                const auto tgt = where(op.target);
                return permutation([&](std::vector<std::size_t> &d) {
                    std::vector<std::size_t> vals;
                    if (!read(d, src, vals) || d[tgt.first] >= tgt.second) return;
                    d[tgt.first] = (d[tgt.first] + op.map(vals)) % tgt.second;
                });
            }
            case ROp::Kind::kAbort: {
                const auto regs = locate(op.ids);
                const std::size_t j = op.check;
                return permutation([&](std::vector<std::size_t> &d) {
                    std::vector<std::size_t> vals;
                    if (!read(d, regs, vals) || op.pred(vals)) return;
                    auto &f = d[flag_factor_];
                    if (f == 0) f = j;
                    else if (f == j) f = 0;
                });
            }
            case ROp::Kind::kControlled: return controlled(op);
        }
        return identity();
    }

    /// Swap of the first `levels` levels of two factors.
    Sparse partial_swap(std::size_t fa, std::size_t fb, std::size_t levels) const {
        return permutation([&](std::vector<std::size_t> &d) {
            if (d[fa] < levels && d[fb] < levels) std::swap(d[fa], d[fb]);
        });
    }

    /// M += value of the register at `f` (mod dim M).
    Sparse copy_into_m(std::size_t f) const {
        const std::size_t dm = layout_.dim(m_factor_);
        return permutation([&](std::vector<std::size_t> &d) { d[m_factor_] = (d[m_factor_] + d[f]) % dm; });
    }

    const qlin::SubsystemLayout &layout() const { return layout_; }

  private:
    Eigen::Index n() const { return static_cast<Eigen::Index>(layout_.total()); }

    std::vector<std::pair<std::size_t, std::size_t>> locate(const std::vector<std::size_t> &ids) const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (auto id : ids) out.push_back(where(id));
        return out;
    }

    static bool read(const std::vector<std::size_t> &d, const std::vector<std::pair<std::size_t, std::size_t>> &regs,
                     std::vector<std::size_t> &vals) {
        vals.clear();
        for (const auto &[f, dim] : regs) {
            if (d[f] >= dim) return false;
            vals.push_back(d[f]);
        }
        return true;
    }

    template <typename F>
    Sparse permutation(F &&f) const {
        Triplets t;
        t.reserve(layout_.total());
        for (std::size_t j = 0; j < layout_.total(); ++j) {
            auto d = layout_.digits(j);
            f(d);
            t.emplace_back(static_cast<Eigen::Index>(layout_.index(d)), static_cast<Eigen::Index>(j), Complex(1.0));
        }
        Sparse s(n(), n());
        s.setFromTriplets(t.begin(), t.end());
        return s;
    }

    Sparse apply(const ROp &op) const {
        const auto regs = locate(op.ids);
        std::size_t sub = 1;
        for (const auto &r : regs) sub *= r.second;
        if (static_cast<std::size_t>(op.u.rows()) != sub || static_cast<std::size_t>(op.u.cols()) != sub)
            throw DimensionError("unitary does not match its registers");
        Triplets t;
        std::vector<std::size_t> vals;
        for (std::size_t j = 0; j < layout_.total(); ++j) {
            auto d = layout_.digits(j);
            if (!read(d, regs, vals)) {
                t.emplace_back(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j), Complex(1.0));
                continue;
            }
            std::size_t s = 0;
            for (std::size_t i = 0; i < regs.size(); ++i) s = s * regs[i].second + vals[i];
            for (std::size_t sp = 0; sp < sub; ++sp) {
                const Complex z = op.u(static_cast<Eigen::Index>(sp), static_cast<Eigen::Index>(s));
                if (std::abs(z) < 1e-15) continue;
                std::size_t rem = sp;
                for (std::size_t i = regs.size(); i-- > 0;) {
                    d[regs[i].first] = rem % regs[i].second;
                    rem /= regs[i].second;
                }
                t.emplace_back(static_cast<Eigen::Index>(layout_.index(d)), static_cast<Eigen::Index>(j), z);
            }
        }
        Sparse out(n(), n());
        out.setFromTriplets(t.begin(), t.end());
        return out;
    }

    Sparse controlled(const ROp &op) const {
        const auto ctrls = locate(op.ids);
        std::vector<Sparse> branch;
        for (const auto &b : op.branches) {
            Sparse u = identity();
            for (const auto &inner : b) u = (lift(inner) * u).pruned();
            branch.push_back(std::move(u));
        }
        Triplets t;
        std::vector<std::size_t> vals;
        for (std::size_t j = 0; j < layout_.total(); ++j) {
            const auto d = layout_.digits(j);
            std::size_t v = 0;
            bool in_range = read(d, ctrls, vals);
            if (in_range)
                for (std::size_t i = 0; i < ctrls.size(); ++i) v = v * ctrls[i].second + vals[i];
            const auto col = static_cast<Eigen::Index>(j);
            if (!in_range || v >= branch.size()) {
                t.emplace_back(col, col, Complex(1.0));
                continue;
            }
            for (Sparse::InnerIterator it(branch[v], col); it; ++it) t.emplace_back(it.row(), col, it.value());
        }
        Sparse out(n(), n());
        out.setFromTriplets(t.begin(), t.end());
        return out;
    }

    qlin::SubsystemLayout layout_;
    std::size_t m_factor_;
    std::size_t flag_factor_;
};

struct PartySlots {
    std::vector<Factor> factors;
    std::map<std::size_t, std::size_t> slot_of;  // instance id -> factor index in the private space
    std::size_t flag = kNone;
    std::size_t checks = 0;

    std::size_t dim() const {
        std::size_t d = 1;
        for (const auto &f : factors) d *= f.dim;
        return d;
    }
};

std::map<std::string, ComplexMatrix> build_povm(const PartySlots &slots, const Scope &scope, Party party,
                                                const otcore::OutputRule &rule) {
    std::vector<std::size_t> dims;
    for (const auto &f : slots.factors) dims.push_back(f.dim);
    const qlin::SubsystemLayout layout(dims);
    std::vector<std::size_t> where;
    for (const auto &r : rule.regs) {
        const std::size_t id = scope.resolve(party, r);
        where.push_back(slots.slot_of.at(id));
    }
    const auto n = static_cast<Eigen::Index>(layout.total());
    std::map<std::string, ComplexMatrix> povm;
    std::vector<std::size_t> vals;
    for (std::size_t i = 0; i < layout.total(); ++i) {
        const auto d = layout.digits(i);
        std::string label;
        if (slots.flag != kNone && d[slots.flag] != 0) {
            label = otcore::kAbort;
        } else {
            vals.clear();
            for (auto f : where) vals.push_back(d[f]);
            label = rule.label(vals);
        }
        auto it = povm.find(label);
        if (it == povm.end()) it = povm.emplace(label, ComplexMatrix::Zero(n, n)).first;
        it->second(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    }
    return povm;
}

}  // namespace

ProtocolSpec compile_with_deferred_measurement(const InteractiveProtocol &protocol) {
    otcore::validate_structure(protocol);

    // Pass 1: resolve names step by step and group steps into rounds.
    Scope scope;
    for (const auto &r : protocol.registers) scope.declare(r);
    const std::size_t declared = protocol.registers.size();
    std::vector<Party> initial_holder;
    for (const auto &r : protocol.registers) initial_holder.push_back(r.owner);

    std::size_t checks[2] = {0, 0};
    std::vector<ROp> preps[2];
    {
        Resolver res(scope);
        for (const auto &[party, prep] : protocol.initial)
            preps[otcore::party_index(party)].push_back(res.resolve(party, Op(prep), checks[otcore::party_index(party)]));
    }

    std::vector<RoundPlan> rounds;
    std::size_t messages = 0;
    std::size_t dim_m = 1;
    for (const auto &step : protocol.steps) {
        const Party p = step.actor;
        if (rounds.empty() || rounds.back().actor != p || rounds.back().out) {
            if (!rounds.empty() && rounds.back().actor == p) rounds.push_back(RoundPlan{otcore::other(p), {}, {}, {}, kNone});
            rounds.push_back(RoundPlan{p, {}, {}, {}, kNone});
        }
        Resolver res(scope);
        for (const auto &op : step.ops) rounds.back().ops.push_back(res.resolve(p, op, checks[otcore::party_index(p)]));
        if (step.message) {
            Msg m;
            m.kind = step.message->kind;
            m.src = scope.resolve(p, step.message->reg);
            m.dim = scope.instance(m.src).dim;
            m.as = step.message->as;
            m.dst = m.kind == TransferKind::kMove ? scope.move(p, step.message->reg, m.as)
                                                  : scope.copy(p, step.message->reg, m.as);
            rounds.back().out = m;
            dim_m = std::max(dim_m, m.dim);
            ++messages;
        }
    }
    if (!rounds.empty() && rounds.back().out) rounds.push_back(RoundPlan{otcore::other(rounds.back().actor), {}, {}, {}, kNone});
    for (Party p : {Party::kAlice, Party::kBob}) {
        auto &pp = preps[otcore::party_index(p)];
        auto it = std::find_if(rounds.begin(), rounds.end(), [p](const RoundPlan &r) { return r.actor == p; });
        if (it == rounds.end()) {
            if (pp.empty()) continue;
            if (!rounds.empty() && rounds.back().actor == p) throw Error("round alternation broken");
            rounds.push_back(RoundPlan{p, {}, {}, {}, kNone});
            it = rounds.end() - 1;
        }
        it->ops.insert(it->ops.begin(), pp.begin(), pp.end());
    }
    for (std::size_t r = 1; r < rounds.size(); ++r) rounds[r].in = rounds[r - 1].out;
    if (dim_m > kMaxMessageDim)
        throw UnsupportedError("message alphabet of size " + std::to_string(dim_m) + " exceeds " +
                               std::to_string(kMaxMessageDim));

    // Registers that never need a private factor for their current stay.
    const std::size_t n_inst = scope.instances().size();
    std::vector<std::size_t> first_use(n_inst, kNone);
    std::vector<std::vector<std::size_t>> used(rounds.size());
    for (std::size_t r = 0; r < rounds.size(); ++r) {
        for (const auto &op : rounds[r].ops) touched(op, used[r]);
        if (rounds[r].in) used[r].push_back(rounds[r].in->dst);
        if (rounds[r].out) used[r].push_back(rounds[r].out->src);
        for (auto id : used[r]) first_use[id] = std::min(first_use[id], r);
    }
    for (std::size_t r = 0; r < rounds.size(); ++r) {
        auto &round = rounds[r];
        if (!round.out || round.out->kind != TransferKind::kMove) continue;
        const std::size_t x = round.out->src;
        const bool relayed = round.in && round.in->dst == x;
        const bool fresh = x < declared && initial_holder[x] == round.actor && first_use[x] == r;
        if (relayed || fresh) round.transient = x;
    }

    // Private factors in order of first need.
    PartySlots slots[2];
    std::vector<std::tuple<std::size_t, std::size_t, Party, std::string>> needs;
    for (std::size_t r = 0; r < rounds.size(); ++r)
        for (auto id : used[r])
            if (id != rounds[r].transient) {
                std::string name = scope.instance(id).name;
                if (rounds[r].in && rounds[r].in->dst == id) name = rounds[r].in->as;
                needs.emplace_back(r, id, rounds[r].actor, name);
            }
    for (Party p : {Party::kAlice, Party::kBob}) {
        const auto &rule = p == Party::kAlice ? protocol.alice_output : protocol.bob_output;
        for (const auto &name : rule.regs) needs.emplace_back(rounds.size(), scope.resolve(p, name), p, name);
    }
    std::stable_sort(needs.begin(), needs.end(), [](const auto &a, const auto &b) {
        return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b));
    });
    for (const auto &[r, id, p, name] : needs) {
        auto &s = slots[otcore::party_index(p)];
        if (s.slot_of.count(id)) continue;
        s.slot_of[id] = s.factors.size();
        s.factors.push_back({name, scope.instance(id).dim});
    }
    for (int i = 0; i < 2; ++i) {
        slots[i].checks = checks[i];
        if (checks[i] > 0) {
            slots[i].flag = slots[i].factors.size();
            slots[i].factors.push_back({"flag", checks[i] + 1});
        }
    }

    ProtocolSpec spec;
    spec.name = protocol.name;
    spec.dim_a = slots[0].dim();
    spec.dim_b = slots[1].dim();
    spec.dim_m = dim_m;
    spec.n = protocol.n;
    spec.k = protocol.k;
    spec.alice_factors = slots[0].factors;
    spec.bob_factors = slots[1].factors;
    spec.messages = messages;
    for (int i = 0; i < 2; ++i)
        if (slots[i].dim() * dim_m > kMaxLocalDim)
            throw UnsupportedError(std::string(otcore::party_name(i == 0 ? Party::kAlice : Party::kBob)) +
                                   "'s local space exceeds " + std::to_string(kMaxLocalDim));

    // Pass 2: one unitary per round.
    for (std::size_t r = 0; r < rounds.size(); ++r) {
        const auto &round = rounds[r];
        const bool alice = round.actor == Party::kAlice;
        const auto &s = slots[alice ? 0 : 1];
        std::vector<std::size_t> dims;
        if (!alice) dims.push_back(dim_m);
        for (const auto &f : s.factors) dims.push_back(f.dim);
        if (alice) dims.push_back(dim_m);
        const std::size_t offset = alice ? 0 : 1;
        const std::size_t m_factor = alice ? dims.size() - 1 : 0;
        LocalSpace space(qlin::SubsystemLayout(dims), m_factor, s.flag == kNone ? kNone : s.flag + offset);
        space.where = [&](std::size_t id) -> std::pair<std::size_t, std::size_t> {
            const std::size_t d = scope.instance(id).dim;
            if (id == round.transient) return {m_factor, d};
            auto it = s.slot_of.find(id);
            if (it == s.slot_of.end())
                throw Error("register '" + scope.instance(id).name + "' has no private factor");
            return {it->second + offset, d};
        };

        Sparse u = space.identity();
        if (round.in && round.in->dst != round.transient)
            u = space.partial_swap(m_factor, space.where(round.in->dst).first, round.in->dim) * u;
        for (const auto &op : round.ops) u = (space.lift(op) * u).pruned(1e-300);
        if (round.out) {
            if (round.out->kind == TransferKind::kCopy)
                u = space.copy_into_m(space.where(round.out->src).first) * u;
            else if (round.out->src != round.transient)
                u = space.partial_swap(m_factor, space.where(round.out->src).first, round.out->dim) * u;
        }
        spec.rounds.push_back({round.actor, ComplexMatrix(u)});
    }

    spec.alice_povm = build_povm(slots[0], scope, Party::kAlice, protocol.alice_output);
    spec.bob_povm = build_povm(slots[1], scope, Party::kBob, protocol.bob_output);
    return spec;
}

}  // namespace otlab::model
