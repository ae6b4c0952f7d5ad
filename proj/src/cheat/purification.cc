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

#include "otlab/cheat/purification.h"

#include <cmath>

#include "otlab/cheat/attacks.h"
#include "otlab/error.h"
#include "otlab/qlin/random.h"

namespace otlab::cheat {

namespace {

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

void require_valid(const EntangledBobStrategy &s) {
    if (s.alpha.size() != 3) throw DimensionError("entangled strategy: alpha must have 3 amplitudes");
    if (std::abs(s.alpha.norm() - 1.0) > 1e-10) throw ValidationError("entangled strategy: alpha is not normalized");
    const auto de = s.encodings[0].size();
    if (de == 0) throw DimensionError("entangled strategy: empty encodings");
    for (const auto &e : s.encodings) {
        if (e.size() != de) throw DimensionError("entangled strategy: encodings of different dimension");
        if (std::abs(e.norm() - 1.0) > 1e-10) throw ValidationError("entangled strategy: encoding is not normalized");
    }
    const auto d = 3 * de;
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto &m : s.measurement) {
        if (m.rows() != d || m.cols() != d) throw DimensionError("entangled strategy: measurement has the wrong shape");
        if (!qlin::is_hermitian(m, 1e-10) || qlin::min_eigenvalue(m) < -1e-10)
            throw ValidationError("entangled strategy: measurement element is not positive semidefinite");
        sum += m;
    }
    if ((sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10)
        throw ValidationError("entangled strategy: measurement does not sum to the identity");
}

double guess_probability(const ComplexVector &state, const ComplexMatrix &element) {
    return state.dot(element * state).real();
}

}  // namespace

ComplexMatrix encoding_unitary(const std::array<ComplexVector, 3> &encodings) {
    const auto de = encodings[0].size();
    ComplexMatrix u = ComplexMatrix::Zero(3 * de, 3 * de);
    for (Eigen::Index i = 0; i < 3; ++i) u.block(i * de, i * de, de, de) = qlin::unitary_with_first_column(encodings[i]);
    return u;
}

PurificationCheck purification_equivalence_check(const EntangledBobStrategy &strategy) {
    require_valid(strategy);
    const std::size_t de = strategy.ancilla_dim();
    const ComplexMatrix u = encoding_unitary(strategy.encodings);
    const ComplexVector ancilla0 = ComplexVector::Unit(idx(de), 0);
    PurificationCheck out;
    for (std::size_t x0 = 0; x0 < 2; ++x0)
        for (std::size_t x1 = 0; x1 < 2; ++x1) {
            const std::size_t x[3] = {x0, x1, 0};
            ComplexVector entangled = ComplexVector::Zero(idx(3 * de));
            for (Eigen::Index i = 0; i < 3; ++i)
                entangled.segment(i * idx(de), idx(de)) = (x[i] ? -1.0 : 1.0) * strategy.alpha(i) * strategy.encodings[i];
            const ComplexVector purified = u * qlin::tensor_vectors(phased_state(strategy.alpha, x0, x1), ancilla0);
            const auto &e = strategy.measurement[2 * x0 + x1];
            out.prob_entangled += 0.25 * guess_probability(entangled, e);
            out.prob_purified += 0.25 * guess_probability(purified, e);
        }
    return out;
}

EntangledBobStrategy random_entangled_strategy(std::size_t ancilla_dim, Rng &rng) {
    if (ancilla_dim == 0) throw PreconditionError("random_entangled_strategy: ancilla_dim must be positive");
    EntangledBobStrategy s;
    s.alpha = qlin::random_state(3, rng).amplitudes();
    for (auto &e : s.encodings) e = qlin::random_state(ancilla_dim, rng).amplitudes();
    const std::size_t d = 3 * ancilla_dim;
    const ComplexMatrix basis = qlin::random_unitary(d, rng);
    for (auto &m : s.measurement) m = ComplexMatrix::Zero(idx(d), idx(d));
    // Basis vector j goes to outcome j mod 4; outcomes may stay empty when d < 4.
    for (std::size_t j = 0; j < d; ++j)
        s.measurement[j % 4] += basis.col(idx(j)) * basis.col(idx(j)).adjoint();
    return s;
}

}  // namespace otlab::cheat
