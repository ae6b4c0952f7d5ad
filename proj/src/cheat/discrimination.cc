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

#include "otlab/cheat/discrimination.h"

#include <cmath>
#include <string>

#include "otlab/error.h"

namespace otlab::cheat {

namespace {

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

}  // namespace

HelstromResult helstrom(const qlin::DensityMatrix &s0, const qlin::DensityMatrix &s1) {
    if (s0.dim() != s1.dim())
        throw DimensionError("helstrom: states of dimension " + std::to_string(s0.dim()) + " and " +
                             std::to_string(s1.dim()));
    const ComplexMatrix diff = s0.matrix() - s1.matrix();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (diff + diff.adjoint()));
    const auto d = idx(s0.dim());
    const double tie = 1e-12 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
    HelstromResult out;
    out.measurement[0] = ComplexMatrix::Zero(d, d);
    double norm = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
        const double lam = es.eigenvalues()(i);
        norm += std::abs(lam);
        if (lam >= -tie) out.measurement[0] += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
    }
    out.measurement[1] = ComplexMatrix::Identity(d, d) - out.measurement[0];
    out.probability = 0.5 + 0.25 * norm;
    return out;
}

double nayak_bound(std::size_t d, std::size_t n) {
    if (d == 0 || n == 0) throw PreconditionError("nayak_bound: d and n must be positive");
    return std::min(1.0, static_cast<double>(d) / static_cast<double>(n));
}

sdp::SdpProblem discrimination_sdp(std::span<const qlin::PureState> states, std::span<const double> priors) {
    if (states.empty()) throw PreconditionError("discrimination needs at least one state");
    if (priors.size() != states.size())
        throw PreconditionError("discrimination: " + std::to_string(priors.size()) + " priors for " +
                                std::to_string(states.size()) + " states");
    double total = 0;
    for (double p : priors) {
        if (!(p >= 0)) throw PreconditionError("discrimination: negative prior");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-10) throw PreconditionError("discrimination: priors sum to " + std::to_string(total));
    const std::size_t d = states.front().dim();
    for (const auto &s : states)
        if (s.dim() != d) throw DimensionError("discrimination: states of different dimension");

    sdp::SdpProblem p;
    const ComplexMatrix id = ComplexMatrix::Identity(idx(d), idx(d));
    sdp::Constraint sum{"completeness", d, {}, id};
    for (std::size_t i = 0; i < states.size(); ++i) {
        p.blocks.push_back({"E_" + std::to_string(i), d, ComplexMatrix()});
        p.objective.push_back(priors[i] * states[i].projector());
        sum.terms.push_back({i, 1.0, {id}});
    }
    p.constraints.push_back(std::move(sum));
    p.metadata.target = "guess the index";
    return p;
}

DiscriminationResult optimal_discrimination(std::span<const qlin::PureState> states, std::span<const double> priors,
                                            double tol) {
    DiscriminationResult out;
    out.problem = discrimination_sdp(states, priors);
    out.solution = sdp::solve_sdp(out.problem, tol);
    out.upper_bound = out.solution.dual_value;

    const auto d = idx(states.front().dim());
    std::vector<ComplexMatrix> e;
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto &x : out.solution.primal) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (x + x.adjoint()));
        const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
        e.push_back(es.eigenvectors() * lam.cast<qlin::Complex>().asDiagonal() * es.eigenvectors().adjoint());
        sum += e.back();
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> ss(0.5 * (sum + sum.adjoint()));
    const ComplexMatrix inv_sqrt = ss.eigenvectors() *
                                   ss.eigenvalues().cwiseSqrt().cwiseInverse().cast<qlin::Complex>().asDiagonal() *
                                   ss.eigenvectors().adjoint();
    out.probability = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        out.povm.push_back(inv_sqrt * e[i] * inv_sqrt);
        out.probability += priors[i] * (out.povm[i] * states[i].projector()).trace().real();
    }
    return out;
}

}  // namespace otlab::cheat
