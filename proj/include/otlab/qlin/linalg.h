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

// Dense complex linear algebra at small dimension.
//
// Basis convention: for a tensor product of factors with dimensions
// d_0, d_1, ..., d_{r-1}, the basis state |i_0 i_1 ... i_{r-1}> has linear
// index sum_k i_k * prod_{l>k} d_l (first factor most significant). This
// matches the Kronecker product tensor(a, b).

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace otlab::qlin {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kStateTol = 1e-12;
inline constexpr double kOperatorTol = 1e-10;
inline constexpr double kDerivedTol = 1e-9;

/// Ordered factor dimensions of a tensor-product space, e.g. {dim_A, dim_M, dim_B}.
class SubsystemLayout {
  public:
    SubsystemLayout() = default;
    explicit SubsystemLayout(std::vector<std::size_t> dims);
    SubsystemLayout(std::initializer_list<std::size_t> dims) : SubsystemLayout(std::vector<std::size_t>(dims)) {}

    const std::vector<std::size_t> &dims() const { return dims_; }
    std::size_t size() const { return dims_.size(); }
    std::size_t dim(std::size_t factor) const { return dims_.at(factor); }
    std::size_t total() const { return total_; }
    std::size_t stride(std::size_t factor) const { return strides_.at(factor); }

    /// Throws DimensionError unless total() == dim.
    void require_total(std::size_t dim) const;

    std::vector<std::size_t> digits(std::size_t index) const;
    std::size_t index(std::span<const std::size_t> digits) const;

  private:
    std::vector<std::size_t> dims_;
    std::vector<std::size_t> strides_;
    std::size_t total_ = 1;
};

class PureState {
  public:
    /// Validates normalization within kStateTol and finiteness.
    static PureState from_amplitudes(ComplexVector amplitudes);
    /// Normalizes first; throws ValidationError on a zero or non-finite vector.
    static PureState normalized(ComplexVector amplitudes);
    static PureState basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return static_cast<std::size_t>(amplitudes_.size()); }
    const ComplexVector &amplitudes() const { return amplitudes_; }
    Complex operator[](std::size_t i) const { return amplitudes_(static_cast<Eigen::Index>(i)); }
    Complex inner(const PureState &other) const;
    ComplexMatrix projector() const;

  private:
    explicit PureState(ComplexVector amplitudes) : amplitudes_(std::move(amplitudes)) {}
    ComplexVector amplitudes_;
};

enum class Normalization { kUnitTrace, kSubnormalized };

class DensityMatrix {
  public:
    /// Hermitian within 1e-12, PSD down to -1e-10, trace 1 (or <= 1 when subnormalized).
    static DensityMatrix from_matrix(ComplexMatrix m, Normalization norm = Normalization::kUnitTrace);
    static DensityMatrix from_pure(const PureState &psi);

    std::size_t dim() const { return static_cast<std::size_t>(matrix_.rows()); }
    const ComplexMatrix &matrix() const { return matrix_; }
    bool subnormalized() const { return norm_ == Normalization::kSubnormalized; }
    double trace() const { return matrix_.trace().real(); }

  private:
    DensityMatrix(ComplexMatrix m, Normalization norm) : matrix_(std::move(m)), norm_(norm) {}
    ComplexMatrix matrix_;
    Normalization norm_;
};

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexVector tensor_vectors(const ComplexVector &a, const ComplexVector &b);
ComplexMatrix tensor_all(std::span<const ComplexMatrix> factors);

/// Reduced operator on the factors listed in `keep` (in the order they appear in the layout).
ComplexMatrix partial_trace(const ComplexMatrix &m, const SubsystemLayout &layout, std::span<const std::size_t> keep);
DensityMatrix partial_trace(const DensityMatrix &rho, const SubsystemLayout &layout, std::span<const std::size_t> keep);

/// Sum of singular values.
double trace_norm(const ComplexMatrix &m);

/// Applies `op` to the factors `on` (op's own factor order follows `on`). No validation.
ComplexVector apply_operator(const ComplexVector &v, const ComplexMatrix &op, const SubsystemLayout &layout,
                             std::span<const std::size_t> on);
/// Left-multiplies every column of `m` by the embedded operator.
ComplexMatrix apply_operator_left(const ComplexMatrix &m, const ComplexMatrix &op, const SubsystemLayout &layout,
                                  std::span<const std::size_t> on);
/// The full-space matrix of `op` acting on factors `on`, identity elsewhere.
ComplexMatrix embed_operator(const ComplexMatrix &op, const SubsystemLayout &layout, std::span<const std::size_t> on);

/// Unitary application with validation (unitarity within kOperatorTol).
PureState apply_unitary(const PureState &state, const ComplexMatrix &u, const SubsystemLayout &layout,
                        std::span<const std::size_t> on);

/// Orthogonal projector onto span(vectors). Throws RankError on linearly dependent input.
ComplexMatrix projector_span(std::span<const PureState> vectors);

bool is_finite(const ComplexMatrix &m);
bool is_hermitian(const ComplexMatrix &m, double tol = kStateTol);
bool is_unitary(const ComplexMatrix &m, double tol = kOperatorTol);
bool is_projector(const ComplexMatrix &m, double tol = kOperatorTol);
double min_eigenvalue(const ComplexMatrix &hermitian);
double max_eigenvalue(const ComplexMatrix &hermitian);

/// Orthonormal basis (columns) of the column space of m, singular values above tol.
ComplexMatrix column_space(const ComplexMatrix &m, double tol = 1e-10);

/// A unitary whose first column is `v` (unit norm). Householder completion.
ComplexMatrix unitary_with_first_column(const ComplexVector &v);

/// A unitary U with U * sources[i] = |targets[i]>; sources orthonormal. Completed on the complements.
ComplexMatrix unitary_mapping(std::span<const ComplexVector> sources, std::span<const std::size_t> targets,
                              std::size_t dim);

/// Swap of two factors of dimension d each, as a d^2 x d^2 permutation.
ComplexMatrix swap_operator(std::size_t d);

ComplexMatrix permutation_operator(std::span<const std::size_t> images);

}  // namespace otlab::qlin
