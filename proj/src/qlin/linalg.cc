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

#include "otlab/qlin/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "otlab/error.h"

namespace otlab::qlin {

namespace {

std::string dims_string(const std::vector<std::size_t> &dims) {
    std::string s = "[";
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(dims[i]);
    }
    return s + "]";
}

void check_factor_set(const SubsystemLayout &layout, std::span<const std::size_t> on) {
    std::vector<bool> seen(layout.size(), false);
    for (std::size_t f : on) {
        if (f >= layout.size()) throw DimensionError("factor index " + std::to_string(f) + " out of range");
        if (seen[f]) throw DimensionError("factor index " + std::to_string(f) + " repeated");
        seen[f] = true;
    }
}

std::size_t sub_dim(const SubsystemLayout &layout, std::span<const std::size_t> on) {
    std::size_t d = 1;
    for (std::size_t f : on) d *= layout.dim(f);
    return d;
}

// For every full-space index, its coordinate inside the `on` factors and inside the rest.
struct Split {
    std::vector<std::size_t> inner;  // index inside op space
    std::vector<std::size_t> outer;  // index of the complementary factors
    std::size_t inner_dim = 1;
    std::size_t outer_dim = 1;
};

Split split_indices(const SubsystemLayout &layout, std::span<const std::size_t> on) {
    check_factor_set(layout, on);
    Split s;
    std::vector<bool> in(layout.size(), false);
    for (std::size_t f : on) in[f] = true;
    std::vector<std::size_t> rest;
    for (std::size_t f = 0; f < layout.size(); ++f)
        if (!in[f]) rest.push_back(f);
    s.inner_dim = sub_dim(layout, on);
    s.outer_dim = layout.total() / std::max<std::size_t>(s.inner_dim, 1);
    s.inner.resize(layout.total());
    s.outer.resize(layout.total());
    for (std::size_t idx = 0; idx < layout.total(); ++idx) {
        std::size_t inner = 0;
        for (std::size_t f : on) inner = inner * layout.dim(f) + (idx / layout.stride(f)) % layout.dim(f);
        std::size_t outer = 0;
        for (std::size_t f : rest) outer = outer * layout.dim(f) + (idx / layout.stride(f)) % layout.dim(f);
        s.inner[idx] = inner;
        s.outer[idx] = outer;
    }
    return s;
}

}  // namespace

SubsystemLayout::SubsystemLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    strides_.assign(dims_.size(), 1);
    total_ = 1;
    for (std::size_t i = dims_.size(); i-- > 0;) {
        if (dims_[i] == 0) throw DimensionError("factor dimension must be positive");
        strides_[i] = total_;
        total_ *= dims_[i];
    }
}

void SubsystemLayout::require_total(std::size_t dim) const {
    if (dim != total_)
        throw DimensionError("layout " + dims_string(dims_) + " has total " + std::to_string(total_) +
                             ", expected " + std::to_string(dim));
}

std::vector<std::size_t> SubsystemLayout::digits(std::size_t index) const {
    std::vector<std::size_t> d(dims_.size());
    for (std::size_t i = 0; i < dims_.size(); ++i) d[i] = (index / strides_[i]) % dims_[i];
    return d;
}

std::size_t SubsystemLayout::index(std::span<const std::size_t> digits) const {
    if (digits.size() != dims_.size()) throw DimensionError("digit count does not match layout");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < dims_.size(); ++i) {
        if (digits[i] >= dims_[i]) throw DimensionError("digit out of range");
        idx += digits[i] * strides_[i];
    }
    return idx;
}

PureState PureState::from_amplitudes(ComplexVector amplitudes) {
    if (amplitudes.size() == 0) throw DimensionError("empty state");
    if (!amplitudes.allFinite()) throw ValidationError("state has non-finite amplitudes");
    const double n2 = amplitudes.squaredNorm();
    if (std::abs(n2 - 1.0) > kStateTol) throw ValidationError("state norm^2 = " + std::to_string(n2));
    return PureState(std::move(amplitudes));
}

PureState PureState::normalized(ComplexVector amplitudes) {
    if (amplitudes.size() == 0) throw DimensionError("empty state");
    if (!amplitudes.allFinite()) throw ValidationError("state has non-finite amplitudes");
    const double n = amplitudes.norm();
    if (n < 1e-300) throw ValidationError("zero vector cannot be normalized");
    amplitudes /= n;
    return PureState(std::move(amplitudes));
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw DimensionError("basis index out of range");
    ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(std::move(v));
}

Complex PureState::inner(const PureState &other) const {
    if (other.dim() != dim()) throw DimensionError("inner product of states with different dims");
    return amplitudes_.dot(other.amplitudes_);
}

ComplexMatrix PureState::projector() const { return amplitudes_ * amplitudes_.adjoint(); }

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m, Normalization norm) {
    if (m.rows() != m.cols() || m.rows() == 0) throw DimensionError("density matrix must be square and non-empty");
    if (!m.allFinite()) throw ValidationError("density matrix has non-finite entries");
    if (!is_hermitian(m, kStateTol)) throw ValidationError("density matrix is not Hermitian");
    const double lmin = min_eigenvalue(m);
    if (lmin < -kOperatorTol) throw ValidationError("density matrix has eigenvalue " + std::to_string(lmin));
    const double tr = m.trace().real();
    if (norm == Normalization::kUnitTrace && std::abs(tr - 1.0) > kStateTol)
        throw ValidationError("density matrix trace = " + std::to_string(tr));
    if (norm == Normalization::kSubnormalized && tr > 1.0 + kStateTol)
        throw ValidationError("subnormalized density matrix trace = " + std::to_string(tr));
    return DensityMatrix(std::move(m), norm);
}

DensityMatrix DensityMatrix::from_pure(const PureState &psi) {
    return DensityMatrix(psi.projector(), Normalization::kUnitTrace);
}

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexVector tensor_vectors(const ComplexVector &a, const ComplexVector &b) {
    ComplexVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

ComplexMatrix tensor_all(std::span<const ComplexMatrix> factors) {
    ComplexMatrix out = ComplexMatrix::Identity(1, 1);
    for (const auto &f : factors) out = tensor(out, f);
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &m, const SubsystemLayout &layout, std::span<const std::size_t> keep) {
    if (m.rows() != m.cols()) throw DimensionError("partial trace of a non-square matrix");
    layout.require_total(static_cast<std::size_t>(m.rows()));
    std::vector<std::size_t> sorted(keep.begin(), keep.end());
    std::sort(sorted.begin(), sorted.end());
    const Split s = split_indices(layout, sorted);
    ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(s.inner_dim), static_cast<Eigen::Index>(s.inner_dim));
    const auto n = static_cast<std::size_t>(m.rows());
    // Group full indices by their outer coordinate.
    std::vector<std::vector<std::size_t>> by_outer(s.outer_dim);
    for (std::size_t idx = 0; idx < n; ++idx) by_outer[s.outer[idx]].push_back(idx);
    for (const auto &group : by_outer)
        for (std::size_t r : group)
            for (std::size_t c : group)
                out(static_cast<Eigen::Index>(s.inner[r]), static_cast<Eigen::Index>(s.inner[c])) +=
                    m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    return out;
}

DensityMatrix partial_trace(const DensityMatrix &rho, const SubsystemLayout &layout, std::span<const std::size_t> keep) {
    ComplexMatrix red = partial_trace(rho.matrix(), layout, keep);
    red = 0.5 * (red + red.adjoint()).eval();
    return DensityMatrix::from_matrix(std::move(red), rho.subnormalized() ? Normalization::kSubnormalized
                                                                          : Normalization::kUnitTrace);
}

double trace_norm(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) throw DimensionError("trace norm of a non-square matrix");
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues().sum();
}

ComplexVector apply_operator(const ComplexVector &v, const ComplexMatrix &op, const SubsystemLayout &layout,
                             std::span<const std::size_t> on) {
    ComplexMatrix m = v;
    return apply_operator_left(m, op, layout, on).col(0);
}

ComplexMatrix apply_operator_left(const ComplexMatrix &m, const ComplexMatrix &op, const SubsystemLayout &layout,
                                  std::span<const std::size_t> on) {
    layout.require_total(static_cast<std::size_t>(m.rows()));
    const Split s = split_indices(layout, on);
    if (op.rows() != op.cols() || static_cast<std::size_t>(op.rows()) != s.inner_dim)
        throw DimensionError("operator dimension does not match targeted factors");
    // position[outer][inner] = full index
    std::vector<std::size_t> position(layout.total());
    for (std::size_t idx = 0; idx < layout.total(); ++idx) position[s.outer[idx] * s.inner_dim + s.inner[idx]] = idx;
    ComplexMatrix out(m.rows(), m.cols());
    ComplexMatrix block(static_cast<Eigen::Index>(s.inner_dim), m.cols());
    for (std::size_t o = 0; o < s.outer_dim; ++o) {
        for (std::size_t i = 0; i < s.inner_dim; ++i)
            block.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(position[o * s.inner_dim + i]));
        ComplexMatrix res = op * block;
        for (std::size_t i = 0; i < s.inner_dim; ++i)
            out.row(static_cast<Eigen::Index>(position[o * s.inner_dim + i])) = res.row(static_cast<Eigen::Index>(i));
    }
    return out;
}

ComplexMatrix embed_operator(const ComplexMatrix &op, const SubsystemLayout &layout, std::span<const std::size_t> on) {
    const auto n = static_cast<Eigen::Index>(layout.total());
    return apply_operator_left(ComplexMatrix::Identity(n, n), op, layout, on);
}

PureState apply_unitary(const PureState &state, const ComplexMatrix &u, const SubsystemLayout &layout,
                        std::span<const std::size_t> on) {
    layout.require_total(state.dim());
    if (!is_unitary(u, kOperatorTol)) throw ValidationError("operator is not unitary");
    return PureState::normalized(apply_operator(state.amplitudes(), u, layout, on));
}

ComplexMatrix projector_span(std::span<const PureState> vectors) {
    if (vectors.empty()) throw RankError("empty span");
    const std::size_t d = vectors.front().dim();
    ComplexMatrix V(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].dim() != d) throw DimensionError("span of vectors with different dims");
        V.col(static_cast<Eigen::Index>(i)) = vectors[i].amplitudes();
    }
    const ComplexMatrix gram = V.adjoint() * V;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram);
    if (es.eigenvalues().minCoeff() < 1e-10) throw RankError("vectors are linearly dependent");
    const ComplexMatrix P = V * gram.inverse() * V.adjoint();
    return 0.5 * (P + P.adjoint());
}

bool is_finite(const ComplexMatrix &m) { return m.allFinite(); }

bool is_hermitian(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_unitary(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols() || !m.allFinite()) return false;
    const ComplexMatrix d = m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols());
    return d.cwiseAbs().maxCoeff() <= tol;
}

bool is_projector(const ComplexMatrix &m, double tol) {
    if (!is_hermitian(m, tol)) return false;
    return (m * m - m).cwiseAbs().maxCoeff() <= tol;
}

double min_eigenvalue(const ComplexMatrix &hermitian) {
    const ComplexMatrix h = 0.5 * (hermitian + hermitian.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double max_eigenvalue(const ComplexMatrix &hermitian) {
    const ComplexMatrix h = 0.5 * (hermitian + hermitian.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

ComplexMatrix column_space(const ComplexMatrix &m, double tol) {
    if (m.cols() == 0) return ComplexMatrix(m.rows(), 0);
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU);
    const auto &sv = svd.singularValues();
    Eigen::Index r = 0;
    while (r < sv.size() && sv(r) > tol) ++r;
    return svd.matrixU().leftCols(r);
}

ComplexMatrix unitary_with_first_column(const ComplexVector &v) {
    const auto d = v.size();
    if (d == 0) throw DimensionError("empty vector");
    if (std::abs(v.norm() - 1.0) > kOperatorTol) throw ValidationError("first column must have unit norm");
    // Householder reflection H with H e0 = phase * v, then fix the phase.
    const Complex v0 = v(0);
    const double a0 = std::abs(v0);
    const Complex phase = a0 > 0 ? v0 / a0 : Complex(1.0, 0.0);
    ComplexVector w = v / phase;  // w(0) real, nonnegative
    ComplexVector u = w;
    u(0) -= 1.0;
    ComplexMatrix H = ComplexMatrix::Identity(d, d);
    const double un = u.squaredNorm();
    if (un > 1e-30) H -= 2.0 * u * u.adjoint() / un;
    // H maps e0 to w (H is a reflection swapping e0 and w).
    return phase * H;
}

ComplexMatrix unitary_mapping(std::span<const ComplexVector> sources, std::span<const std::size_t> targets,
                              std::size_t dim) {
    if (sources.size() != targets.size()) throw DimensionError("sources and targets differ in length");
    const auto d = static_cast<Eigen::Index>(dim);
    const auto k = static_cast<Eigen::Index>(sources.size());
    ComplexMatrix S(d, k);
    ComplexMatrix T = ComplexMatrix::Zero(d, k);
    std::vector<bool> used(dim, false);
    for (Eigen::Index i = 0; i < k; ++i) {
        if (sources[static_cast<std::size_t>(i)].size() != d) throw DimensionError("source dim mismatch");
        const std::size_t t = targets[static_cast<std::size_t>(i)];
        if (t >= dim || used[t]) throw DimensionError("targets must be distinct basis indices");
        used[t] = true;
        S.col(i) = sources[static_cast<std::size_t>(i)];
        T(static_cast<Eigen::Index>(t), i) = 1.0;
    }
    if ((S.adjoint() * S - ComplexMatrix::Identity(k, k)).cwiseAbs().maxCoeff() > kOperatorTol)
        throw ValidationError("sources are not orthonormal");
    // Complete S and T to full orthonormal bases.
    auto complete = [d, k](const ComplexMatrix &B) {
        ComplexMatrix P = ComplexMatrix::Identity(d, d) - B * B.adjoint();
        ComplexMatrix C = column_space(P, 1e-8);
        ComplexMatrix full(d, d);
        full << B, C.leftCols(d - k);
        return full;
    };
    const ComplexMatrix Sf = complete(S);
    const ComplexMatrix Tf = complete(T);
    return Tf * Sf.adjoint();
}

ComplexMatrix swap_operator(std::size_t d) {
    const auto n = static_cast<Eigen::Index>(d * d);
    ComplexMatrix s = ComplexMatrix::Zero(n, n);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            s(static_cast<Eigen::Index>(j * d + i), static_cast<Eigen::Index>(i * d + j)) = 1.0;
    return s;
}

ComplexMatrix permutation_operator(std::span<const std::size_t> images) {
    const auto n = static_cast<Eigen::Index>(images.size());
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    std::vector<bool> hit(images.size(), false);
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (images[i] >= images.size() || hit[images[i]]) throw ValidationError("not a permutation");
        hit[images[i]] = true;
        p(static_cast<Eigen::Index>(images[i]), static_cast<Eigen::Index>(i)) = 1.0;
    }
    return p;
}

}  // namespace otlab::qlin
