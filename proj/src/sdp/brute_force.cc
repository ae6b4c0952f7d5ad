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

#include "otlab/sdp/brute_force.h"

#include <algorithm>
#include <cmath>

#include "otlab/error.h"
#include "otlab/qlin/random.h"
#include "otlab/util/rng.h"

namespace otlab::sdp {

using otcore::Party;
using qlin::Complex;
using qlin::ComplexMatrix;
using qlin::ComplexVector;

namespace {

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

// The joint state lives on H (x) M (x) W when Alice is honest and on
// W (x) M (x) H when Bob is; either way both parties act on adjacent pairs in
// their natural factor order.
struct Game {
    std::size_t d1, d2, d3;
    bool honest_left;
    // Honest unitaries in order, with cheater slots between them.
    struct Step {
        bool cheater;
        std::size_t slot;
        ComplexMatrix u;
    };
    std::vector<Step> steps;
    std::size_t slots = 0;
    ComplexMatrix target;  // honest POVM element

    std::size_t dim() const { return d1 * d2 * d3; }

    void apply(ComplexVector &v, const ComplexMatrix &op, bool left) const {
        if (left) {
            Eigen::Map<ComplexMatrix> m(v.data(), idx(d3), idx(d1 * d2));
            m = (m * op.transpose()).eval();
        } else {
            Eigen::Map<ComplexMatrix> m(v.data(), idx(d2 * d3), idx(d1));
            m = (op * m).eval();
        }
    }

    ComplexVector project(const ComplexVector &v) const {
        ComplexVector out = v;
        if (honest_left) {
            Eigen::Map<ComplexMatrix> m(out.data(), idx(d2 * d3), idx(d1));
            m = (m * target.transpose()).eval();
        } else {
            Eigen::Map<ComplexMatrix> m(out.data(), idx(d3), idx(d1 * d2));
            m = (target * m).eval();
        }
        return out;
    }

    // Success probability and, per slot, the matrix A with df = 2 Re tr(i K A) for V -> exp(iK) V.
    double evaluate(const std::vector<ComplexMatrix> &v, std::vector<ComplexMatrix> *grads) const {
        const bool cheater_left = !honest_left;
        ComplexVector psi = ComplexVector::Zero(idx(dim()));
        psi(0) = 1.0;
        std::vector<ComplexVector> after(slots);
        for (const auto &s : steps) {
            if (s.cheater) {
                apply(psi, v[s.slot], cheater_left);
                after[s.slot] = psi;
            } else {
                apply(psi, s.u, honest_left);
            }
        }
        ComplexVector phi = project(psi);
        const double f = psi.dot(phi).real();
        if (!grads) return f;
        grads->assign(slots, ComplexMatrix());
        for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
            const ComplexMatrix &op = it->cheater ? v[it->slot] : it->u;
            const bool left = it->cheater ? cheater_left : honest_left;
            if (it->cheater) {
                ComplexVector a = after[it->slot];
                if (left) {
                    Eigen::Map<const ComplexMatrix> ps(a.data(), idx(d3), idx(d1 * d2));
                    Eigen::Map<const ComplexMatrix> ph(phi.data(), idx(d3), idx(d1 * d2));
                    (*grads)[it->slot] = ps.transpose() * ph.conjugate();
                } else {
                    Eigen::Map<const ComplexMatrix> ps(a.data(), idx(d2 * d3), idx(d1));
                    Eigen::Map<const ComplexMatrix> ph(phi.data(), idx(d2 * d3), idx(d1));
                    (*grads)[it->slot] = ps * ph.adjoint();
                }
            }
            apply(phi, op.adjoint(), left);
        }
        return f;
    }
};

ComplexMatrix exp_i(const ComplexMatrix &h, double eta) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    const Eigen::VectorXcd phases = (Complex(0.0, eta) * es.eigenvalues().cast<Complex>()).array().exp();
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

double climb(const Game &g, std::vector<ComplexMatrix> &v, const BruteForceOptions &o) {
    std::vector<ComplexMatrix> a;
    double f = g.evaluate(v, &a);
    double eta = 0.5;
    for (std::size_t iter = 0; iter < o.max_iterations; ++iter) {
        std::vector<ComplexMatrix> dir(v.size());
        double norm2 = 0;
        for (std::size_t t = 0; t < v.size(); ++t) {
            dir[t] = Complex(0.0, 0.5) * (a[t] - a[t].adjoint());
            norm2 += dir[t].squaredNorm();
        }
        if (std::sqrt(norm2) < o.gradient_tol) break;
        bool accepted = false;
        for (int tries = 0; tries < 40 && !accepted; ++tries) {
            std::vector<ComplexMatrix> trial(v.size());
            for (std::size_t t = 0; t < v.size(); ++t) trial[t] = exp_i(dir[t], eta) * v[t];
            const double ft = g.evaluate(trial, nullptr);
            if (ft >= f + 1e-4 * eta * 2.0 * norm2) {
                v = std::move(trial);
                f = g.evaluate(v, &a);
                accepted = true;
                eta = std::min(eta * 1.5, 10.0);
            } else {
                eta *= 0.5;
            }
        }
        if (!accepted) break;
    }
    return f;
}

}  // namespace

BruteForceResult brute_force_cheat(const model::ProtocolSpec &spec, Party cheater, const std::string &target,
                                   const BruteForceOptions &options) {
    const auto violations = model::structural_violations(spec);
    if (!violations.empty()) throw ValidationError("invalid protocol spec: " + violations.front(), violations);
    const Party honest = otcore::other(cheater);
    const auto &povm = honest == Party::kAlice ? spec.alice_povm : spec.bob_povm;
    auto it = povm.find(target);
    if (it == povm.end())
        throw PreconditionError("'" + target + "' is not an outcome of " + otcore::party_name(honest) + "'s measurement");

    const std::size_t cheater_private = cheater == Party::kAlice ? spec.dim_a : spec.dim_b;
    std::size_t w = options.workspace_dim;
    if (options.start_from_honest) {
        if (w != 0 && w != cheater_private)
            throw PreconditionError("an honest start needs the workspace to be the cheater's private space");
        w = cheater_private;
    }
    if (w == 0) w = kMaxBruteForceDim / spec.dim_m;
    if (w == 0 || spec.dim_m * w > kMaxBruteForceDim)
        throw PreconditionError("cheater unitary would need " + std::to_string(spec.dim_m * std::max<std::size_t>(w, 1)) +
                                " levels, above " + std::to_string(kMaxBruteForceDim));

    Game g;
    g.honest_left = honest == Party::kAlice;
    const std::size_t dh = honest == Party::kAlice ? spec.dim_a : spec.dim_b;
    g.d1 = g.honest_left ? dh : w;
    g.d2 = spec.dim_m;
    g.d3 = g.honest_left ? w : dh;
    g.target = it->second;

    // Runs of rounds; the cheater's last run cannot influence the honest outcome.
    std::vector<ComplexMatrix> honest_start;
    std::size_t last_honest = 0;
    for (std::size_t i = 0; i < spec.rounds.size(); ++i)
        if (spec.rounds[i].actor == honest) last_honest = i + 1;
    for (std::size_t i = 0; i < last_honest; ++i) {
        const auto &r = spec.rounds[i];
        const bool is_cheater = r.actor == cheater;
        if (!g.steps.empty() && g.steps.back().cheater == is_cheater) {
            if (is_cheater) honest_start.back() = r.unitary * honest_start.back();
            else g.steps.back().u = r.unitary * g.steps.back().u;
            continue;
        }
        if (is_cheater) {
            g.steps.push_back({true, g.slots++, ComplexMatrix()});
            honest_start.push_back(r.unitary);
        } else {
            g.steps.push_back({false, 0, r.unitary});
        }
    }

    BruteForceResult result;
    result.workspace_dim = w;
    result.value = -1;
    const std::size_t dv = w * spec.dim_m;
    for (std::size_t r = 0; r < std::max<std::size_t>(options.restarts, 1); ++r) {
        std::vector<ComplexMatrix> v;
        if (r == 0 && options.start_from_honest) {
            v = honest_start;
        } else {
            Rng rng = derive_stream(options.seed, r);
            for (std::size_t t = 0; t < g.slots; ++t) v.push_back(qlin::random_unitary(dv, rng));
        }
        const double f = climb(g, v, options);
        result.restart_values.push_back(f);
        if (f > result.value) {
            result.value = f;
            result.unitaries = v;
        }
    }
    return result;
}

double brute_force_cheat(const model::ProtocolSpec &spec, Party cheater, const std::string &target,
                         std::size_t restarts) {
    BruteForceOptions o;
    o.restarts = restarts;
    return brute_force_cheat(spec, cheater, target, o).value;
}

}  // namespace otlab::sdp
