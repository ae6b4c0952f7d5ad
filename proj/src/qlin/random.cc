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

#include "otlab/qlin/random.h"

namespace otlab::qlin {

ComplexVector random_gaussian_vector(std::size_t dim, Rng &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexVector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double re = n(rng);
        const double im = n(rng);
        v(i) = Complex(re, im);
    }
    return v;
}

PureState random_state(std::size_t dim, Rng &rng) { return PureState::normalized(random_gaussian_vector(dim, rng)); }

ComplexMatrix random_unitary(std::size_t dim, Rng &rng) {
    const auto d = static_cast<Eigen::Index>(dim);
    ComplexMatrix g(d, d);
    for (Eigen::Index j = 0; j < d; ++j) g.col(j) = random_gaussian_vector(dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(d, d);
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < d; ++j) {
        const double a = std::abs(r(j, j));
        if (a > 0) q.col(j) *= r(j, j) / a;
    }
    return q;
}

DensityMatrix random_density(std::size_t dim, Rng &rng) {
    const auto d = static_cast<Eigen::Index>(dim);
    ComplexMatrix g(d, d);
    for (Eigen::Index j = 0; j < d; ++j) g.col(j) = random_gaussian_vector(dim, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    rho = 0.5 * (rho + rho.adjoint()).eval();
    return DensityMatrix::from_matrix(std::move(rho));
}

ComplexMatrix random_projector(std::size_t dim, std::size_t rank, Rng &rng) {
    const ComplexMatrix u = random_unitary(dim, rng);
    const ComplexMatrix b = u.leftCols(static_cast<Eigen::Index>(rank));
    return b * b.adjoint();
}

}  // namespace otlab::qlin
