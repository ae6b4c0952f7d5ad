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

#include "otlab/cheat/lis.h"

#include <cmath>
#include <numbers>

#include "otlab/error.h"
#include "otlab/qlin/random.h"

namespace otlab::cheat {

namespace {

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

constexpr double kProjTol = 1e-10;

template <std::size_t N>
void check_family(const std::array<ComplexMatrix, N> &family, const std::string &name,
                  std::vector<std::string> &out) {
    const auto d = family[0].rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (std::size_t i = 0; i < N; ++i) {
        const auto &e = family[i];
        if (e.rows() != d || e.cols() != d) {
            out.push_back(name + "[" + std::to_string(i) + "] has the wrong shape");
            return;
        }
        if (!qlin::is_projector(e, kProjTol)) out.push_back(name + "[" + std::to_string(i) + "] is not a projector");
        for (std::size_t j = i + 1; j < N; ++j)
            if (family[j].rows() == d && (e * family[j]).cwiseAbs().maxCoeff() > kProjTol)
                out.push_back(name + "[" + std::to_string(i) + "] and " + name + "[" + std::to_string(j) +
                              "] are not orthogonal");
        sum += e;
    }
    if ((sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff() > kProjTol)
        out.push_back(name + " does not sum to the identity");
}

double overlap(const ComplexVector &a, const ComplexVector &b) { return std::abs(a.dot(b)); }

ComplexMatrix complement(const ComplexMatrix &p) { return ComplexMatrix::Identity(p.rows(), p.cols()) - p; }

}  // namespace

std::vector<std::string> measurement_violations(const MeasurementPair &meas) {
    std::vector<std::string> out;
    check_family(meas.m, "M", out);
    check_family(meas.p, "P", out);
    check_family(meas.q, "Q", out);
    return out;
}

LisResult lis_compose(const qlin::PureState &omega, const MeasurementPair &meas, const qlin::SubsystemLayout &layout) {
    if (layout.size() != 2) throw DimensionError("lis_compose: layout must be {A, B}");
    layout.require_total(omega.dim());
    const auto da = idx(layout.dim(0)), db = idx(layout.dim(1));
    for (const auto &e : meas.m)
        if (e.rows() != da) throw DimensionError("lis_compose: M does not act on A");
    for (const auto &e : meas.p)
        if (e.rows() != db) throw DimensionError("lis_compose: P does not act on B");
    for (const auto &e : meas.q)
        if (e.rows() != db) throw DimensionError("lis_compose: Q does not act on B");
    const auto violations = measurement_violations(meas);
    if (!violations.empty()) throw ValidationError("lis_compose: " + violations.front(), violations);

    ComplexMatrix c = ComplexMatrix::Zero(da * db, da * db), d = c;
    for (std::size_t x = 0; x < 4; ++x) {
        c += qlin::tensor(meas.m[x], meas.p[x / 2]);
        d += qlin::tensor(meas.m[x], meas.q[x % 2]);
    }
    const ComplexVector &w = omega.amplitudes();
    LisResult r;
    r.p = (c * w).squaredNorm();
    r.q = (d * w).squaredNorm();
    if (r.p < 0.5 - 1e-12 || r.q < 0.5 - 1e-12)
        throw PreconditionError("lis_compose: needs p, q >= 1/2 (p = " + std::to_string(r.p) +
                                ", q = " + std::to_string(r.q) + ")");
    r.dc = (d * (c * w)).squaredNorm();
    r.cd = (c * (d * w)).squaredNorm();
    r.success = 0.5 * (r.dc + r.cd);
    r.a = 0.5 * (r.p + r.q);
    r.bound = r.a * (2 * r.a - 1) * (2 * r.a - 1);
    r.theta = std::acos(std::sqrt(std::min(1.0, r.p)));
    r.theta_prime = std::acos(std::sqrt(std::min(1.0, r.q)));
    const double joint = std::pow(std::cos(r.theta + r.theta_prime), 2);
    r.dc_bound = r.p * joint;
    r.cd_bound = r.q * joint;
    if (r.success < r.bound - 1e-10)
        throw Error("lis_compose: success " + std::to_string(r.success) + " below a(2a-1)^2 = " +
                    std::to_string(r.bound));
    return r;
}

double projection_gap(const ComplexVector &x, const ComplexMatrix &q, const ComplexVector &y) {
    if (q.rows() != x.size() || y.size() != x.size()) throw DimensionError("projection_gap: size mismatch");
    if ((q * y - y).cwiseAbs().maxCoeff() > kProjTol) throw PreconditionError("projection_gap: Q does not fix y");
    return (q * x).squaredNorm() - std::norm(x.dot(y));
}

double triangle_gap(const ComplexVector &psi, const ComplexVector &phi, const ComplexVector &xi) {
    if (psi.size() != phi.size() || phi.size() != xi.size()) throw DimensionError("triangle_gap: size mismatch");
    const double t1 = std::acos(std::min(1.0, overlap(psi, phi)));
    const double t2 = std::acos(std::min(1.0, overlap(phi, xi)));
    if (t1 > std::numbers::pi / 4 + 1e-12 || t2 > std::numbers::pi / 4 + 1e-12)
        throw PreconditionError("triangle_gap: angles must lie in [0, pi/4]");
    return overlap(psi, xi) - std::cos(t1 + t2);
}

double angle_sum_gap(double theta, double rho) {
    const double top = std::numbers::pi / 4;
    if (!(theta >= 0 && theta <= top && rho >= 0 && rho <= top))
        throw PreconditionError("angle_sum_gap: angles must lie in [0, pi/4]");
    const double ct = std::cos(theta), cr = std::cos(rho);
    return std::cos(theta + rho) - ct * ct - cr * cr + 1;
}

LisInstance random_lis_instance(std::size_t dim_a, std::size_t dim_b, Rng &rng, double correlation) {
    if (dim_a < 4 || dim_b < 2) throw PreconditionError("random_lis_instance: needs dim_a >= 4 and dim_b >= 2");
    if (!(correlation >= 0)) throw PreconditionError("random_lis_instance: negative correlation");
    LisInstance inst;
    inst.layout = qlin::SubsystemLayout({dim_a, dim_b});
    for (auto &e : inst.meas.m) e = ComplexMatrix::Zero(idx(dim_a), idx(dim_a));
    for (std::size_t i = 0; i < dim_a; ++i) inst.meas.m[i * 4 / dim_a](idx(i), idx(i)) = 1.0;

    // Alice's basis state at the start of each block.
    std::array<ComplexVector, 4> block_state;
    for (std::size_t x = 0; x < 4; ++x) {
        block_state[x] = ComplexVector::Zero(idx(dim_a));
        block_state[x]((x * dim_a + 3) / 4) = 1.0;
    }

    for (;;) {
        inst.meas.p[0] = qlin::random_projector(dim_b, dim_b / 2, rng);
        inst.meas.p[1] = complement(inst.meas.p[0]);
        inst.meas.q[0] = qlin::random_projector(dim_b, dim_b / 2, rng);
        inst.meas.q[1] = complement(inst.meas.q[0]);
        ComplexVector w = qlin::random_state(dim_a * dim_b, rng).amplitudes();
        if (correlation > 0) {
            ComplexVector corr = ComplexVector::Zero(w.size());
            for (std::size_t x = 0; x < 4; ++x) {
                const ComplexVector g = qlin::random_gaussian_vector(dim_b, rng);
                corr += qlin::tensor_vectors(block_state[x], (inst.meas.p[x / 2] + inst.meas.q[x % 2]) * g);
            }
            if (corr.norm() > 0) w += correlation * corr / corr.norm();
        }
        inst.omega = qlin::PureState::normalized(w);

        ComplexMatrix c = ComplexMatrix::Zero(w.size(), w.size()), d = c;
        for (std::size_t x = 0; x < 4; ++x) {
            c += qlin::tensor(inst.meas.m[x], inst.meas.p[x / 2]);
            d += qlin::tensor(inst.meas.m[x], inst.meas.q[x % 2]);
        }
        const ComplexVector &v = inst.omega.amplitudes();
        if ((c * v).squaredNorm() >= 0.5 && (d * v).squaredNorm() >= 0.5) return inst;
        ++inst.rejected;
    }
}

}  // namespace otlab::cheat
