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

// Learning two bits in sequence: if Bob can guess x0 and x1 separately, he
// can guess the pair by measuring for one bit and then the other.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "otlab/qlin/linalg.h"
#include "otlab/util/rng.h"

namespace otlab::cheat {

using qlin::ComplexMatrix;
using qlin::ComplexVector;

/// Alice's four-outcome projective measurement M on A (m[2 * x0 + x1]) and
/// Bob's two-outcome projective measurements P (for x0) and Q (for x1) on B.
struct MeasurementPair {
    std::array<ComplexMatrix, 4> m;
    std::array<ComplexMatrix, 2> p;
    std::array<ComplexMatrix, 2> q;
};

/// Every family must consist of Hermitian, idempotent, mutually orthogonal
/// projectors summing to the identity, within 1e-10.
std::vector<std::string> measurement_violations(const MeasurementPair &meas);

struct LisResult {
    /// 1/2 (||DC Omega||^2 + ||CD Omega||^2): P then Q or Q then P, each with probability 1/2.
    double success = 0;
    double p = 0;  // ||C Omega||^2
    double q = 0;  // ||D Omega||^2
    double a = 0;  // (p + q) / 2
    double bound = 0;  // a (2a - 1)^2
    double dc = 0;  // ||DC Omega||^2
    double cd = 0;  // ||CD Omega||^2
    double theta = 0;  // p = cos^2 theta
    double theta_prime = 0;  // q = cos^2 theta'
    double dc_bound = 0;  // cos^2 theta cos^2 (theta + theta')
    double cd_bound = 0;  // cos^2 theta' cos^2 (theta + theta')
};

/// Builds C = sum M_x (x) P_{x0} and D = sum M_x (x) Q_{x1} on A (x) B and
/// evaluates the sequential strategy on omega. `layout` must be {dim A, dim B}.
///
/// Throws DimensionError on mismatched sizes, ValidationError for measurements
/// that are not projective, and PreconditionError when p or q is below 1/2.
/// Throws Error if the success falls below the bound by more than 1e-10.
LisResult lis_compose(const qlin::PureState &omega, const MeasurementPair &meas, const qlin::SubsystemLayout &layout);

/// ||Q x||^2 - |<x|y>|^2 for a projector Q fixing the unit vector y.
/// Throws PreconditionError unless Q y = y within 1e-10.
double projection_gap(const ComplexVector &x, const ComplexMatrix &q, const ComplexVector &y);

/// |<psi|xi>| - cos(theta + theta') with cos theta = |<psi|phi>| and
/// cos theta' = |<phi|xi>|. Throws PreconditionError when either angle exceeds pi/4.
double triangle_gap(const ComplexVector &psi, const ComplexVector &phi, const ComplexVector &xi);

/// cos(theta + rho) - cos^2 theta - cos^2 rho + 1 for theta, rho in [0, pi/4].
double angle_sum_gap(double theta, double rho);

struct LisInstance {
    qlin::PureState omega = qlin::PureState::basis(1, 0);
    MeasurementPair meas;
    qlin::SubsystemLayout layout;
    /// Samples discarded because p or q fell below 1/2.
    std::size_t rejected = 0;
};

/// M groups the computational basis of A into four contiguous blocks; P and Q
/// project onto Haar-random subspaces of half the dimension of B. Omega is
/// Haar-random; with correlation c > 0 it is mixed with a state on which P
/// and Q guess well, sum_x |a_x> (P_{x0} + Q_{x1}) |g_x>, weighted by c.
/// Samples with p or q below 1/2 are redrawn. Needs dim_a >= 4 and dim_b >= 2.
LisInstance random_lis_instance(std::size_t dim_a, std::size_t dim_b, Rng &rng, double correlation = 0.0);

}  // namespace otlab::cheat
