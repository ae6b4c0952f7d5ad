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

#include "otlab/otcore/executor.h"

#include <cmath>
#include <sstream>

#include "otlab/error.h"
#include "otlab/otcore/scope.h"

namespace otlab::otcore {

using qlin::ComplexMatrix;
using qlin::ComplexVector;

double ExactRun::probability(const std::function<bool(const Outcome &)> &event) const {
    double p = 0.0;
    for (const auto &[o, q] : distribution)
        if (event(o)) p += q;
    return p;
}

namespace {

constexpr double kPrune = 1e-15;

struct Branch {
    double p = 1.0;
    std::vector<std::size_t> vals;
    ComplexVector psi;
    bool abort[2] = {false, false};
};

struct MessageSig {
    bool present = false;
    TransferKind kind = TransferKind::kMove;
    std::string as;
    std::size_t dim = 0;
    bool classical = true;
};

std::vector<MessageSig> honest_signatures(const InteractiveProtocol &protocol) {
    Scope scope;
    for (const auto &r : protocol.registers) scope.declare(r);
    std::vector<MessageSig> sigs(protocol.steps.size());
    for (std::size_t i = 0; i < protocol.steps.size(); ++i) {
        const auto &m = protocol.steps[i].message;
        if (!m) continue;
        const auto &inst = scope.instance(scope.resolve(protocol.steps[i].actor, m->reg));
        sigs[i] = {true, m->kind, m->as, inst.dim, m->kind == TransferKind::kCopy ? true : inst.classical};
        if (m->kind == TransferKind::kMove)
            scope.move(protocol.steps[i].actor, m->reg, m->as);
        else
            scope.copy(protocol.steps[i].actor, m->reg, m->as);
    }
    return sigs;
}

bool is_permutation(const ComplexMatrix &u, std::vector<std::size_t> &image) {
    const auto n = static_cast<std::size_t>(u.cols());
    image.assign(n, 0);
    for (std::size_t c = 0; c < n; ++c) {
        int hits = 0;
        for (std::size_t r = 0; r < n; ++r) {
            const auto z = u(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            if (std::abs(z - 1.0) < 1e-12) {
                image[c] = r;
                ++hits;
            } else if (std::abs(z) > 1e-12) {
                return false;
            }
        }
        if (hits != 1) return false;
    }
    return true;
}

class Engine {
  public:
    Engine(const InteractiveProtocol &protocol, const AdversaryProgram *adversary, Rng *rng, bool record)
        : protocol_(protocol), adversary_(adversary), rng_(rng), record_(record) {}

    std::vector<Branch> run() {
        validate_structure(protocol_);
        const auto sigs = honest_signatures(protocol_);
        for (const auto &r : protocol_.registers) {
            if (adversary_ && r.owner == adversary_->side) continue;
            scope_.declare(r);
        }
        if (adversary_)
            for (auto r : adversary_->registers) {
                r.owner = adversary_->side;
                scope_.declare(r);
            }
        for (std::size_t id = 0; id < scope_.instances().size(); ++id) register_instance(id);
        Branch root;
        root.vals.assign(scope_.instances().size(), 0);
        root.psi = ComplexVector::Zero(static_cast<Eigen::Index>(layout_total()));
        root.psi(0) = 1.0;
        std::vector<Branch> branches{root};

        for (const auto &[party, prep] : protocol_.initial) {
            if (adversary_ && party == adversary_->side) continue;
            branches = exec_list(std::move(branches), party, std::vector<Op>{Op(prep)});
        }
        if (adversary_)
            for (const auto &[party, prep] : adversary_->initial)
                branches = exec_list(std::move(branches), adversary_->side, std::vector<Op>{Op(prep)});

        for (std::size_t i = 0; i < protocol_.steps.size(); ++i) {
            const Step &step = protocol_.steps[i];
            const bool cheating = adversary_ && step.actor == adversary_->side;
            std::string described;
            if (!cheating) {
                branches = exec_list(std::move(branches), step.actor, step.ops);
                if (step.message) branches = deliver(std::move(branches), step.actor, *step.message, described);
            } else {
                auto ops_it = adversary_->step_ops.find(i);
                if (ops_it != adversary_->step_ops.end())
                    branches = exec_list(std::move(branches), step.actor, ops_it->second);
                const MessageSig &sig = sigs[i];
                auto msg_it = adversary_->messages.find(i);
                if (sig.present) {
                    bool ok = msg_it != adversary_->messages.end() && scope_.visible(step.actor, msg_it->second.reg);
                    if (ok) {
                        const auto &inst = scope_.instance(scope_.resolve(step.actor, msg_it->second.reg));
                        ok = inst.dim == sig.dim;
                    }
                    if (ok) {
                        Message m = msg_it->second;
                        m.as = sig.as;
                        m.kind = sig.kind;
                        branches = deliver(std::move(branches), step.actor, m, described);
                        if (sig.kind == TransferKind::kMove && !sig.classical) {
                            const std::size_t id = scope_.resolve(other(step.actor), sig.as);
                            if (scope_.instance(id).classical) promote(branches, id);
                        }
                    } else {
                        const Party receiver = other(step.actor);
                        for (auto &b : branches) b.abort[party_index(receiver)] = true;
                        const std::size_t id = scope_.bind_dummy(receiver, sig.as, sig.dim);
                        register_instance(id);
                        for (auto &b : branches) b.vals.resize(scope_.instances().size(), 0);
                        if (!sig.classical) promote(branches, id);
                        described = "malformed message; " + std::string(party_name(receiver)) + " aborts";
                    }
                }
            }
            if (record_ && !branches.empty()) {
                TranscriptStep ts;
                ts.actor = step.actor;
                ts.message = described;
                ts.state_after = branches.front().psi;
                for (std::size_t id = 0; id < factor_of_.size(); ++id)
                    if (factor_of_[id] >= 0) ts.quantum_registers.push_back(scope_.instance(id).name);
                transcript_.push_back(std::move(ts));
            }
        }
        if (adversary_) branches = exec_list(std::move(branches), adversary_->side, adversary_->final_ops);
        return branches;
    }

    /// Evaluates a label rule on each branch, splitting on quantum output registers.
    std::vector<std::pair<Branch, std::string>> label(std::vector<Branch> branches, Party party, const OutputRule &rule) {
        std::vector<std::pair<Branch, std::string>> out;
        std::vector<std::size_t> ids;
        for (const auto &r : rule.regs) ids.push_back(scope_.resolve(party, r));
        for (auto &b : branches) {
            for (auto &[nb, digits] : measure_ids(std::move(b), ids)) {
                if (nb.abort[party_index(party)])
                    out.emplace_back(std::move(nb), kAbort);
                else
                    out.emplace_back(std::move(nb), rule.label(digits));
            }
        }
        return out;
    }

    const Scope &scope() const { return scope_; }
    std::vector<TranscriptStep> take_transcript() { return std::move(transcript_); }

  private:
    std::size_t layout_total() const {
        std::size_t t = 1;
        for (std::size_t d : factor_dims_) t *= d;
        return t;
    }

    void register_instance(std::size_t id) {
        factor_of_.resize(scope_.instances().size(), -1);
        const auto &inst = scope_.instance(id);
        if (!inst.classical) {
            factor_of_[id] = static_cast<int>(factor_dims_.size());
            factor_dims_.push_back(inst.dim);
            layout_ = qlin::SubsystemLayout(factor_dims_);
        }
    }

    // Turns a classical register into a quantum factor holding its current value.
    void promote(std::vector<Branch> &branches, std::size_t id) {
        const std::size_t d = scope_.instance(id).dim;
        factor_of_[id] = static_cast<int>(factor_dims_.size());
        factor_dims_.push_back(d);
        layout_ = qlin::SubsystemLayout(factor_dims_);
        for (auto &b : branches) {
            ComplexVector e = ComplexVector::Zero(static_cast<Eigen::Index>(d));
            e(static_cast<Eigen::Index>(b.vals[id] % d)) = 1.0;
            b.psi = qlin::tensor_vectors(b.psi, e);
            b.vals[id] = 0;
        }
    }

    std::vector<std::size_t> ids_of(Party party, const std::vector<std::string> &regs) const {
        std::vector<std::size_t> ids;
        for (const auto &r : regs) ids.push_back(scope_.resolve(party, r));
        return ids;
    }

    // Choose among weighted children: all of them (exact) or one sampled (rng).
    std::vector<Branch> choose(std::vector<Branch> children, double parent_p) {
        if (!rng_) {
            std::vector<Branch> kept;
            for (auto &c : children)
                if (c.p > kPrune) kept.push_back(std::move(c));
            return kept;
        }
        double total = 0.0;
        for (const auto &c : children) total += c.p;
        double u = uniform01(*rng_) * total;
        std::size_t pick = children.size() - 1;
        for (std::size_t i = 0; i < children.size(); ++i) {
            if (children[i].p <= 0) continue;
            if (u < children[i].p) {
                pick = i;
                break;
            }
            u -= children[i].p;
        }
        while (children[pick].p <= 0 && pick > 0) --pick;
        Branch b = std::move(children[pick]);
        b.p = parent_p;
        return {std::move(b)};
    }

    // Splits a branch on the computational-basis values of `ids`; classical values are read.
    std::vector<std::pair<Branch, std::vector<std::size_t>>> measure_ids(Branch b, const std::vector<std::size_t> &ids) {
        std::vector<int> factors;
        for (std::size_t id : ids)
            if (factor_of_[id] >= 0) factors.push_back(factor_of_[id]);
        auto fill = [&](const std::vector<std::size_t> &qdigits) {
            std::vector<std::size_t> digits;
            std::size_t qi = 0;
            for (std::size_t id : ids) digits.push_back(factor_of_[id] >= 0 ? qdigits[qi++] : b.vals[id]);
            return digits;
        };
        if (factors.empty()) {
            auto d = fill({});
            std::vector<std::pair<Branch, std::vector<std::size_t>>> out;
            out.emplace_back(std::move(b), std::move(d));
            return out;
        }
        std::size_t sub = 1;
        for (int f : factors) sub *= factor_dims_[static_cast<std::size_t>(f)];
        std::vector<std::size_t> key(layout_.total());
        std::vector<double> weight(sub, 0.0);
        for (std::size_t idx = 0; idx < layout_.total(); ++idx) {
            std::size_t k = 0;
            for (int f : factors) {
                const auto fu = static_cast<std::size_t>(f);
                k = k * factor_dims_[fu] + (idx / layout_.stride(fu)) % factor_dims_[fu];
            }
            key[idx] = k;
            weight[k] += std::norm(b.psi(static_cast<Eigen::Index>(idx)));
        }
        std::vector<Branch> children;
        std::vector<std::size_t> child_key;
        for (std::size_t k = 0; k < sub; ++k) {
            if (weight[k] <= kPrune) continue;
            Branch c;
            c.p = b.p * weight[k];
            c.vals = b.vals;
            c.abort[0] = b.abort[0];
            c.abort[1] = b.abort[1];
            children.push_back(std::move(c));
            child_key.push_back(k);
        }
        std::vector<Branch> chosen;
        std::vector<std::size_t> chosen_key;
        if (!rng_) {
            chosen = std::move(children);
            chosen_key = child_key;
        } else {
            // Sample the key first so only one projected state is materialized.
            double total = 0.0;
            for (std::size_t k : child_key) total += weight[k];
            double u = uniform01(*rng_) * total;
            std::size_t pick = child_key.back();
            for (std::size_t k : child_key) {
                if (u < weight[k]) {
                    pick = k;
                    break;
                }
                u -= weight[k];
            }
            Branch c;
            c.p = b.p;
            c.vals = b.vals;
            c.abort[0] = b.abort[0];
            c.abort[1] = b.abort[1];
            chosen.push_back(std::move(c));
            chosen_key.push_back(pick);
        }
        std::vector<std::pair<Branch, std::vector<std::size_t>>> out;
        for (std::size_t i = 0; i < chosen.size(); ++i) {
            const std::size_t k = chosen_key[i];
            ComplexVector psi = ComplexVector::Zero(b.psi.size());
            for (std::size_t idx = 0; idx < layout_.total(); ++idx)
                if (key[idx] == k) psi(static_cast<Eigen::Index>(idx)) = b.psi(static_cast<Eigen::Index>(idx));
            psi /= std::sqrt(weight[k]);
            chosen[i].psi = std::move(psi);
            std::vector<std::size_t> qd(factors.size());
            std::size_t rem = k;
            for (std::size_t f = factors.size(); f-- > 0;) {
                const std::size_t d = factor_dims_[static_cast<std::size_t>(factors[f])];
                qd[f] = rem % d;
                rem /= d;
            }
            auto digits = fill(qd);
            out.emplace_back(std::move(chosen[i]), std::move(digits));
        }
        return out;
    }

    std::vector<Branch> exec_list(std::vector<Branch> branches, Party party, const std::vector<Op> &ops) {
        for (const auto &op : ops) {
            std::vector<Branch> next;
            for (auto &b : branches) {
                auto res = exec(std::move(b), party, op);
                for (auto &r : res) next.push_back(std::move(r));
            }
            branches = std::move(next);
        }
        return branches;
    }

    std::vector<Branch> exec(Branch b, Party party, const Op &op) {
        return std::visit([&](const auto &o) { return exec_one(std::move(b), party, o); }, op.v);
    }

    std::vector<Branch> exec_one(Branch b, Party party, const Prepare &o) {
        const std::size_t id = scope_.resolve(party, o.reg);
        const std::size_t d = scope_.instance(id).dim;
        if (factor_of_[id] >= 0) {
            const std::vector<std::size_t> on{static_cast<std::size_t>(factor_of_[id])};
            b.psi = qlin::apply_operator(b.psi, prepare_unitary(o.amplitudes, d), layout_, on);
            return {std::move(b)};
        }
        if (b.vals[id] != 0) throw UnsupportedError("classical register '" + o.reg + "' prepared while nonzero");
        std::vector<Branch> children;
        for (std::size_t v = 0; v < d; ++v) {
            const double w = std::norm(o.amplitudes(static_cast<Eigen::Index>(v)));
            if (w <= kPrune) continue;
            Branch c = b;
            c.p = b.p * w;
            c.vals[id] = v;
            children.push_back(std::move(c));
        }
        return choose(std::move(children), b.p);
    }

    std::vector<Branch> exec_one(Branch b, Party party, const Apply &o) {
        const auto ids = ids_of(party, o.regs);
        bool any_q = false, any_c = false;
        for (std::size_t id : ids) (factor_of_[id] >= 0 ? any_q : any_c) = true;
        if (any_q && any_c) throw UnsupportedError("unitary mixing classical and quantum registers");
        if (any_q) {
            std::vector<std::size_t> on;
            for (std::size_t id : ids) on.push_back(static_cast<std::size_t>(factor_of_[id]));
            b.psi = qlin::apply_operator(b.psi, o.unitary, layout_, on);
            return {std::move(b)};
        }
        std::vector<std::size_t> image;
        if (!is_permutation(o.unitary, image)) throw UnsupportedError("non-permutation unitary on classical registers");
        std::size_t v = 0;
        for (std::size_t id : ids) v = v * scope_.instance(id).dim + b.vals[id];
        std::size_t w = image[v];
        for (std::size_t i = ids.size(); i-- > 0;) {
            const std::size_t d = scope_.instance(ids[i]).dim;
            b.vals[ids[i]] = w % d;
            w /= d;
        }
        return {std::move(b)};
    }

    std::vector<Branch> exec_one(Branch b, Party party, const Controlled &o) {
        const auto ids = ids_of(party, o.controls);
        std::size_t v = 0;
        for (std::size_t id : ids) {
            if (factor_of_[id] >= 0) throw UnsupportedError("control on quantum register '" + scope_.instance(id).name + "'");
            v = v * scope_.instance(id).dim + b.vals[id];
        }
        if (v >= o.branches.size() || o.branches[v].empty()) return {std::move(b)};
        std::vector<Branch> in;
        in.push_back(std::move(b));
        return exec_list(std::move(in), party, o.branches[v]);
    }

    std::vector<Branch> exec_one(Branch b, Party party, const Measure &o) {
        const auto src = ids_of(party, o.sources);
        const std::size_t target = scope_.resolve(party, o.target);
        const std::size_t dt = scope_.instance(target).dim;
        std::vector<Branch> out;
        for (auto &[nb, digits] : measure_ids(std::move(b), src)) {
            nb.vals[target] = (nb.vals[target] + o.map(digits)) % dt;
            out.push_back(std::move(nb));
        }
        return out;
    }

    std::vector<Branch> exec_one(Branch b, Party party, const AbortUnless &o) {
        const auto ids = ids_of(party, o.regs);
        std::vector<int> factors;
        for (std::size_t id : ids)
            if (factor_of_[id] >= 0) factors.push_back(factor_of_[id]);
        const std::size_t pi = party_index(party);
        if (factors.empty()) {
            std::vector<std::size_t> digits;
            for (std::size_t id : ids) digits.push_back(b.vals[id]);
            if (!o.pred(digits)) b.abort[pi] = true;
            return {std::move(b)};
        }
        ComplexVector pass = ComplexVector::Zero(b.psi.size());
        ComplexVector fail = ComplexVector::Zero(b.psi.size());
        std::vector<std::size_t> digits(ids.size());
        for (std::size_t idx = 0; idx < layout_.total(); ++idx) {
            for (std::size_t i = 0; i < ids.size(); ++i) {
                const int f = factor_of_[ids[i]];
                if (f < 0) {
                    digits[i] = b.vals[ids[i]];
                } else {
                    const auto fu = static_cast<std::size_t>(f);
                    digits[i] = (idx / layout_.stride(fu)) % factor_dims_[fu];
                }
            }
            (o.pred(digits) ? pass : fail)(static_cast<Eigen::Index>(idx)) = b.psi(static_cast<Eigen::Index>(idx));
        }
        std::vector<Branch> children;
        const double wp = pass.squaredNorm(), wf = fail.squaredNorm();
        if (wp > kPrune) {
            Branch c = b;
            c.p = b.p * wp;
            c.psi = pass / std::sqrt(wp);
            children.push_back(std::move(c));
        }
        if (wf > kPrune) {
            Branch c = b;
            c.p = b.p * wf;
            c.psi = fail / std::sqrt(wf);
            c.abort[pi] = true;
            children.push_back(std::move(c));
        }
        return choose(std::move(children), b.p);
    }

    std::vector<Branch> deliver(std::vector<Branch> branches, Party from, const Message &m, std::string &described) {
        if (m.kind == TransferKind::kMove) {
            const std::size_t id = scope_.move(from, m.reg, m.as);
            const auto &inst = scope_.instance(id);
            std::ostringstream os;
            os << m.reg << " -> " << party_name(other(from)) << " as " << m.as;
            if (inst.classical && !branches.empty()) os << " = " << branches.front().vals[id];
            if (!inst.classical) os << " (quantum)";
            described = os.str();
            return branches;
        }
        const std::size_t src = scope_.resolve(from, m.reg);
        std::vector<Branch> measured;
        std::vector<std::size_t> values;
        for (auto &b : branches)
            for (auto &[nb, digits] : measure_ids(std::move(b), {src})) {
                measured.push_back(std::move(nb));
                values.push_back(digits[0]);
            }
        const std::size_t dst = scope_.copy(from, m.reg, m.as);
        register_instance(dst);
        for (std::size_t i = 0; i < measured.size(); ++i) {
            measured[i].vals.resize(scope_.instances().size(), 0);
            measured[i].vals[dst] = values[i];
        }
        std::ostringstream os;
        os << m.reg << " -> " << party_name(other(from)) << " as " << m.as;
        if (!values.empty()) os << " = " << values.front();
        described = os.str();
        return measured;
    }

    const InteractiveProtocol &protocol_;
    const AdversaryProgram *adversary_;
    Rng *rng_;
    bool record_;
    Scope scope_;
    std::vector<int> factor_of_;
    std::vector<std::size_t> factor_dims_;
    qlin::SubsystemLayout layout_{std::vector<std::size_t>{}};
    std::vector<TranscriptStep> transcript_;
};

struct Finished {
    Branch branch;
    Outcome outcome;
};

std::vector<Finished> finish(Engine &engine, std::vector<Branch> branches, const InteractiveProtocol &protocol,
                             const AdversaryProgram *adversary) {
    const bool alice_cheats = adversary && adversary->side == Party::kAlice;
    const bool bob_cheats = adversary && adversary->side == Party::kBob;
    std::vector<std::pair<Branch, Outcome>> stage;
    for (auto &b : branches) stage.emplace_back(std::move(b), Outcome{});
    auto apply_rule = [&](Party party, const OutputRule &rule, int field) {
        std::vector<std::pair<Branch, Outcome>> next;
        for (auto &[b, o] : stage) {
            for (auto &[nb, lab] : engine.label({std::move(b)}, party, rule)) {
                Outcome no = o;
                (field == 0 ? no.alice : field == 1 ? no.bob : no.guess) = lab;
                next.emplace_back(std::move(nb), std::move(no));
            }
        }
        stage = std::move(next);
    };
    if (!alice_cheats) apply_rule(Party::kAlice, protocol.alice_output, 0);
    if (!bob_cheats) apply_rule(Party::kBob, protocol.bob_output, 1);
    if (adversary && adversary->guess) apply_rule(adversary->side, *adversary->guess, 2);
    std::vector<Finished> out;
    for (auto &[b, o] : stage) {
        if (alice_cheats) o.alice = "-";
        if (bob_cheats) o.bob = "-";
        out.push_back({std::move(b), std::move(o)});
    }
    return out;
}

}  // namespace

ExactRun run_exact(const InteractiveProtocol &protocol, const AdversaryProgram *adversary) {
    Engine engine(protocol, adversary, nullptr, false);
    auto branches = engine.run();
    ExactRun result;
    for (auto &f : finish(engine, std::move(branches), protocol, adversary)) {
        result.distribution[f.outcome] += f.branch.p;
        if (f.branch.abort[0]) result.alice_abort += f.branch.p;
        if (f.branch.abort[1]) result.bob_abort += f.branch.p;
    }
    return result;
}

SampledRun run_sampled(const InteractiveProtocol &protocol, Rng &rng, const AdversaryProgram *adversary,
                       bool record_transcript) {
    Engine engine(protocol, adversary, &rng, record_transcript);
    auto branches = engine.run();
    auto finished = finish(engine, std::move(branches), protocol, adversary);
    if (finished.size() != 1) throw Error("sampled run did not resolve to a single branch");
    SampledRun run;
    run.outcome = finished.front().outcome;
    run.alice_aborted = finished.front().branch.abort[0];
    run.bob_aborted = finished.front().branch.abort[1];
    run.transcript = engine.take_transcript();
    const auto &scope = engine.scope();
    for (std::size_t id = 0; id < scope.instances().size(); ++id) {
        const auto &inst = scope.instance(id);
        if (inst.classical && id < finished.front().branch.vals.size())
            run.final_values[std::string(party_name(inst.holder)) + ":" + inst.name] = finished.front().branch.vals[id];
    }
    return run;
}

}  // namespace otlab::otcore
