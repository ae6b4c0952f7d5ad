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

#include "otlab/sdp/problem.h"

#include <algorithm>

#include "otlab/error.h"

namespace otlab::sdp {

namespace {

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

}  // namespace

std::size_t SdpProblem::total_dim() const {
    std::size_t t = 0;
    for (const auto &b : blocks) t += b.dim;
    return t;
}

std::size_t SdpProblem::scalar_constraints() const {
    std::size_t t = 0;
    for (const auto &c : constraints) t += c.dim * c.dim;
    return t;
}

std::vector<std::string> problem_violations(const SdpProblem &problem) {
    std::vector<std::string> out;
    const auto nb = problem.blocks.size();
    if (problem.objective.size() != nb) out.push_back("objective needs one operator per block");
    for (std::size_t b = 0; b < nb; ++b) {
        const auto &blk = problem.blocks[b];
        if (blk.dim == 0) out.push_back("block " + blk.name + " has dimension 0");
        if (blk.embedding.size() > 0 && blk.embedding.cols() != idx(blk.dim))
            out.push_back("block " + blk.name + " embedding has wrong column count");
        if (b < problem.objective.size()) {
            const auto &c = problem.objective[b];
            if (c.rows() != idx(blk.dim) || c.cols() != idx(blk.dim))
                out.push_back("objective for block " + blk.name + " has wrong dimension");
            else if (!qlin::is_hermitian(c, qlin::kOperatorTol))
                out.push_back("objective for block " + blk.name + " is not Hermitian");
        }
    }
    for (const auto &c : problem.constraints) {
        if (c.rhs.rows() != idx(c.dim) || c.rhs.cols() != idx(c.dim))
            out.push_back("constraint " + c.name + " right-hand side has wrong dimension");
        else if (!qlin::is_hermitian(c.rhs, qlin::kOperatorTol))
            out.push_back("constraint " + c.name + " right-hand side is not Hermitian");
        for (const auto &t : c.terms) {
            if (t.block >= nb) {
                out.push_back("constraint " + c.name + " refers to a missing block");
                continue;
            }
            for (const auto &k : t.kraus)
                if (k.rows() != idx(c.dim) || k.cols() != idx(problem.blocks[t.block].dim))
                    out.push_back("constraint " + c.name + " has a map of the wrong shape on block " +
                                  problem.blocks[t.block].name);
        }
    }
    return out;
}

void require_well_formed(const SdpProblem &problem) {
    auto v = problem_violations(problem);
    if (!v.empty()) throw ValidationError("malformed SDP: " + v.front(), v);
}

ComplexMatrix apply_constraint(const Constraint &c, const std::vector<ComplexMatrix> &x) {
    ComplexMatrix out = ComplexMatrix::Zero(idx(c.dim), idx(c.dim));
    for (const auto &t : c.terms)
        for (const auto &k : t.kraus) out.noalias() += t.coefficient * (k * x[t.block] * k.adjoint());
    return out;
}

void add_adjoint(const Constraint &c, const ComplexMatrix &y, std::vector<ComplexMatrix> &out) {
    for (const auto &t : c.terms)
        for (const auto &k : t.kraus) out[t.block].noalias() += t.coefficient * (k.adjoint() * y * k);
}

std::vector<ComplexMatrix> dual_slack(const SdpProblem &problem, const std::vector<ComplexMatrix> &y) {
    std::vector<ComplexMatrix> z;
    for (const auto &c : problem.objective) z.push_back(-c);
    for (std::size_t i = 0; i < problem.constraints.size(); ++i) add_adjoint(problem.constraints[i], y[i], z);
    return z;
}

double primal_objective(const SdpProblem &problem, const std::vector<ComplexMatrix> &x) {
    double v = 0;
    for (std::size_t b = 0; b < x.size(); ++b) v += (problem.objective[b].adjoint() * x[b]).trace().real();
    return v;
}

double dual_objective(const SdpProblem &problem, const std::vector<ComplexMatrix> &y) {
    double v = 0;
    for (std::size_t i = 0; i < y.size(); ++i) v += (problem.constraints[i].rhs.adjoint() * y[i]).trace().real();
    return v;
}

double primal_residual(const SdpProblem &problem, const std::vector<ComplexMatrix> &x) {
    double r = 0;
    for (const auto &c : problem.constraints)
        r = std::max(r, (apply_constraint(c, x) - c.rhs).cwiseAbs().maxCoeff());
    return r;
}

std::vector<ComplexMatrix> embedded_blocks(const SdpProblem &problem, const std::vector<ComplexMatrix> &x) {
    std::vector<ComplexMatrix> out;
    for (std::size_t b = 0; b < x.size(); ++b) {
        const auto &v = problem.blocks[b].embedding;
        out.push_back(v.size() == 0 ? x[b] : ComplexMatrix(v * x[b] * v.adjoint()));
    }
    return out;
}

SdpProblem relax_to_trace(const SdpProblem &problem, std::size_t index) {
    if (index >= problem.constraints.size()) throw PreconditionError("constraint index out of range");
    SdpProblem out = problem;
    auto &c = out.constraints[index];
    Constraint traced;
    traced.name = c.name + " (trace only)";
    traced.dim = 1;
    traced.rhs = ComplexMatrix::Constant(1, 1, c.rhs.trace());
    for (const auto &t : c.terms) {
        MapTerm rows{t.block, t.coefficient, {}};
        for (const auto &k : t.kraus)
            for (Eigen::Index r = 0; r < k.rows(); ++r) rows.kraus.push_back(k.row(r));
        traced.terms.push_back(std::move(rows));
    }
    c = std::move(traced);
    return out;
}

}  // namespace otlab::sdp
