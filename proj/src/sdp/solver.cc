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

#include "otlab/sdp/solver.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "otlab/error.h"
#include "otlab/qlin/random.h"
#include "otlab/util/rng.h"

namespace otlab::sdp {

namespace {

using qlin::Complex;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Blocks = std::vector<ComplexMatrix>;

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

// One entry w * |a><b| of a Hermitian basis element.
struct Entry {
    Eigen::Index a;
    Eigen::Index b;
    Complex w;
};
using BasisElement = std::vector<Entry>;

// Orthonormal basis of the r x r Hermitian matrices under Re tr(A^* B).
std::vector<BasisElement> hermitian_basis(std::size_t r) {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i(0.0, 1.0);
    std::vector<BasisElement> out;
    for (Eigen::Index a = 0; a < idx(r); ++a) out.push_back({{a, a, 1.0}});
    for (Eigen::Index a = 0; a < idx(r); ++a)
        for (Eigen::Index b = a + 1; b < idx(r); ++b) {
            out.push_back({{a, b, s}, {b, a, s}});
            out.push_back({{a, b, i * s}, {b, a, -i * s}});
        }
    return out;
}

ComplexMatrix hermitian_part(const ComplexMatrix &m) { return 0.5 * (m + m.adjoint()); }

double inner(const Blocks &x, const Blocks &z) {
    double s = 0;
    for (std::size_t b = 0; b < x.size(); ++b) s += (x[b].adjoint() * z[b]).trace().real();
    return s;
}

class Operator {
  public:
    explicit Operator(const SdpProblem &p) : p_(p) {
        std::size_t off = 0;
        uses_.resize(p.blocks.size());
        for (std::size_t c = 0; c < p.constraints.size(); ++c) {
            offset_.push_back(off);
            basis_.push_back(hermitian_basis(p.constraints[c].dim));
            off += basis_.back().size();
            for (std::size_t t = 0; t < p.constraints[c].terms.size(); ++t)
                uses_[p.constraints[c].terms[t].block].push_back({c, t});
        }
        m_ = off;
    }

    std::size_t m() const { return m_; }

    RealVector coords(std::size_t c, const ComplexMatrix &g) const {
        const auto &basis = basis_[c];
        RealVector out(idx(basis.size()));
        for (std::size_t i = 0; i < basis.size(); ++i) {
            Complex s = 0;
            for (const auto &e : basis[i]) s += e.w * g(e.b, e.a);
            out(idx(i)) = s.real();
        }
        return out;
    }

    ComplexMatrix matrix(std::size_t c, const RealVector &y) const {
        const auto r = idx(p_.constraints[c].dim);
        ComplexMatrix out = ComplexMatrix::Zero(r, r);
        for (std::size_t i = 0; i < basis_[c].size(); ++i)
            for (const auto &e : basis_[c][i]) out(e.a, e.b) += y(idx(offset_[c] + i)) * e.w;
        return out;
    }

    RealVector forward(const Blocks &x) const {
        RealVector out(idx(m_));
        for (std::size_t c = 0; c < p_.constraints.size(); ++c)
            out.segment(idx(offset_[c]), idx(basis_[c].size())) = coords(c, apply_constraint(p_.constraints[c], x));
        return out;
    }

    Blocks constraint_matrices(const RealVector &y) const {
        Blocks out;
        for (std::size_t c = 0; c < p_.constraints.size(); ++c) out.push_back(matrix(c, y));
        return out;
    }

    Blocks adjoint(const RealVector &y) const {
        Blocks out;
        for (const auto &b : p_.blocks) out.push_back(ComplexMatrix::Zero(idx(b.dim), idx(b.dim)));
        for (std::size_t c = 0; c < p_.constraints.size(); ++c) add_adjoint(p_.constraints[c], matrix(c, y), out);
        return out;
    }

    // M_ij = Re tr(A_i X A_j Z^{-1}). With A_i = sum_k K^* E_i K this is
    // Re tr(E_j W_i), W_i = sum over Kraus pairs of (K' Z^{-1} K^*) E_i (K X K'^*).
    // The map E -> W is accumulated as a Kronecker matrix per constraint pair.
    RealMatrix schur(const Blocks &x, const Blocks &zinv) const {
        struct Pair {
            double coef;
            ComplexMatrix pm;
            ComplexMatrix qm;
        };
        const std::size_t nc = p_.constraints.size();
        std::vector<std::vector<Pair>> groups(nc * nc);
        for (std::size_t blk = 0; blk < uses_.size(); ++blk)
            for (const auto &[cu, tu] : uses_[blk]) {
                const auto &term_u = p_.constraints[cu].terms[tu];
                for (const auto &[cv, tv] : uses_[blk]) {
                    const auto &term_v = p_.constraints[cv].terms[tv];
                    const double coef = term_u.coefficient * term_v.coefficient;
                    for (const auto &ku : term_u.kraus)
                        for (const auto &kv : term_v.kraus)
                            groups[cu * nc + cv].push_back(
                                {coef, ku * x[blk] * kv.adjoint(), kv * zinv[blk] * ku.adjoint()});
                }
            }
        RealMatrix out = RealMatrix::Zero(idx(m_), idx(m_));
        for (std::size_t cu = 0; cu < nc; ++cu)
            for (std::size_t cv = 0; cv < nc; ++cv) {
                const auto &pairs = groups[cu * nc + cv];
                if (pairs.empty()) continue;
                const auto ru = idx(p_.constraints[cu].dim);
                const auto rv = idx(p_.constraints[cv].dim);
                // vec(Q |a><b| P) for every elementary |a><b|, column index a + ru * b.
                ComplexMatrix kron = ComplexMatrix::Zero(rv * rv, ru * ru);
                ComplexMatrix blk(rv, ru);
                for (Eigen::Index b = 0; b < ru; ++b)
                    for (Eigen::Index d = 0; d < rv; ++d) {
                        blk.setZero();
                        for (const auto &pr : pairs) blk += (pr.coef * pr.pm(b, d)) * pr.qm;
                        kron.block(rv * d, ru * b, rv, ru) = blk;
                    }
                const auto &bu = basis_[cu];
                const auto &bv = basis_[cv];
                ComplexMatrix cols = ComplexMatrix::Zero(rv * rv, idx(bu.size()));
                for (std::size_t i = 0; i < bu.size(); ++i)
                    for (const auto &e : bu[i]) cols.col(idx(i)) += e.w * kron.col(e.a + ru * e.b);
                const ComplexMatrix rows = cols.transpose();
                Eigen::VectorXcd acc(rows.rows());
                for (std::size_t j = 0; j < bv.size(); ++j) {
                    acc.setZero();
                    for (const auto &f : bv[j]) acc += f.w * rows.col(f.b + rv * f.a);
                    out.block(idx(offset_[cv] + j), idx(offset_[cu]), 1, acc.size()) = acc.real().transpose();
                }
            }
        return 0.5 * (out + out.transpose());
    }

  private:
    const SdpProblem &p_;
    std::vector<std::size_t> offset_;
    std::vector<std::vector<BasisElement>> basis_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> uses_;
    std::size_t m_ = 0;
};

// Largest alpha with x + alpha dx still positive semidefinite (infinity if unbounded).
double max_step(const Blocks &x, const Blocks &dx) {
    double alpha = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < x.size(); ++b) {
        Eigen::LLT<ComplexMatrix> llt(x[b]);
        ComplexMatrix t = llt.matrixL().solve(dx[b]);
        t = llt.matrixL().solve(t.adjoint().eval()).adjoint();
        const double lam = qlin::min_eigenvalue(hermitian_part(t));
        if (lam < 0) alpha = std::min(alpha, -1.0 / lam);
    }
    return alpha;
}

Blocks inverse(const Blocks &z) {
    Blocks out;
    for (const auto &m : z) {
        const auto n = m.rows();
        out.push_back(hermitian_part(Eigen::LLT<ComplexMatrix>(m).solve(ComplexMatrix::Identity(n, n))));
    }
    return out;
}

ComplexMatrix random_interior(std::size_t dim, Rng &rng) {
    const ComplexMatrix rho = qlin::random_density(dim, rng).matrix();
    return static_cast<double>(dim) * rho + 0.5 * ComplexMatrix::Identity(idx(dim), idx(dim));
}

}  // namespace

SdpSolution solve_sdp(const SdpProblem &problem, double tol) {
    SolverOptions o;
    o.tol = tol;
    return solve_sdp(problem, o);
}

SdpSolution solve_sdp(const SdpProblem &problem, const SolverOptions &options) {
    require_well_formed(problem);
    if (problem.total_dim() > kMaxSdpDim)
        throw PreconditionError("SDP has total dimension " + std::to_string(problem.total_dim()) + ", above " +
                                std::to_string(kMaxSdpDim));
    const Operator op(problem);
    const std::size_t nb = problem.blocks.size();

    // Internally: minimize <C', X> with C' = -C; dual maximize b.y with Z = C' - A^T y.
    Blocks cmin;
    for (const auto &c : problem.objective) cmin.push_back(-c);
    RealVector bvec(idx(op.m()));
    {
        Eigen::Index off = 0;
        for (std::size_t c = 0; c < problem.constraints.size(); ++c) {
            const RealVector v = op.coords(c, problem.constraints[c].rhs);
            bvec.segment(off, v.size()) = v;
            off += v.size();
        }
    }

    Blocks x, z;
    RealVector y = RealVector::Zero(idx(op.m()));
    if (options.random_start_seed) {
        Rng rng = derive_stream(*options.random_start_seed, 0);
        for (const auto &b : problem.blocks) {
            x.push_back(random_interior(b.dim, rng));
            z.push_back(random_interior(b.dim, rng));
        }
        for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = 2.0 * uniform01(rng) - 1.0;
    } else {
        for (const auto &b : problem.blocks) {
            x.push_back(ComplexMatrix::Identity(idx(b.dim), idx(b.dim)));
            z.push_back(ComplexMatrix::Identity(idx(b.dim), idx(b.dim)));
        }
    }
    const double n = static_cast<double>(problem.total_dim());

    auto add = [](Blocks &a, const Blocks &d, double s) {
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * d[i];
    };

    SdpSolution sol;
    Residuals best{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
                   std::numeric_limits<double>::infinity()};
    std::size_t stalls = 0;
    for (std::size_t iter = 0; iter <= options.max_iterations; ++iter) {
        const RealVector rp = bvec - op.forward(x);
        Blocks rd = cmin;
        {
            const Blocks aty = op.adjoint(y);
            for (std::size_t b = 0; b < nb; ++b) rd[b] -= z[b] + aty[b];
        }
        const Blocks ymat = op.constraint_matrices(-y);
        Residuals res;
        res.primal = primal_residual(problem, x);
        for (const auto &r : rd) res.dual = std::max(res.dual, r.cwiseAbs().maxCoeff());
        const double pval = primal_objective(problem, x);
        const double dval = dual_objective(problem, ymat);
        res.gap = std::abs(pval - dval);
        const double worst = std::max({res.primal, res.dual, res.gap});
        if (worst < std::max({best.primal, best.dual, best.gap})) {
            best = res;
            sol.primal_value = pval;
            sol.dual_value = dval;
            sol.primal = x;
            sol.dual = ymat;
            sol.slack = z;
            sol.residuals = res;
            sol.iterations = iter;
        }
        if (worst <= options.tol) return sol;
        // Past this point rounding dominates: the best iterate will not improve.
        const bool lost = res.primal > 1e3 * std::max(best.primal, 1e-14) && best.gap < 1e-6;
        if (iter == options.max_iterations || stalls >= 5 || lost) break;

        const Blocks zinv = inverse(z);
        const double mu = inner(x, z) / n;
        RealMatrix schur = op.schur(x, zinv);
        Eigen::LDLT<RealMatrix> ldlt(schur);
        // Near a degenerate optimum the Schur matrix loses definiteness numerically.
        if (ldlt.info() != Eigen::Success) {
            schur.diagonal().array() += 1e-12 * schur.diagonal().cwiseAbs().maxCoeff();
            ldlt.compute(schur);
            if (ldlt.info() != Eigen::Success) break;
        }

        Blocks xrz(nb);
        for (std::size_t b = 0; b < nb; ++b) xrz[b] = x[b] * rd[b] * zinv[b];
        const RealVector base = rp + op.forward(xrz);

        auto direction = [&](const Blocks &rc, Blocks &dx, RealVector &dy, Blocks &dz) {
            Blocks rcz(nb);
            for (std::size_t b = 0; b < nb; ++b) rcz[b] = rc[b] * zinv[b];
            const RealVector rhs = base - op.forward(rcz);
            dy = ldlt.solve(rhs);
            dz = rd;
            const Blocks atdy = op.adjoint(dy);
            dx.assign(nb, ComplexMatrix());
            for (std::size_t b = 0; b < nb; ++b) {
                dz[b] = hermitian_part(dz[b] - atdy[b]);
                dx[b] = hermitian_part(rcz[b] - x[b] * dz[b] * zinv[b]);
            }
        };

        Blocks rc(nb), dxa, dza;
        RealVector dya;
        for (std::size_t b = 0; b < nb; ++b) rc[b] = -x[b] * z[b];
        direction(rc, dxa, dya, dza);
        const double ap_a = std::min(1.0, max_step(x, dxa));
        const double ad_a = std::min(1.0, max_step(z, dza));
        Blocks xa = x, za = z;
        add(xa, dxa, ap_a);
        add(za, dza, ad_a);
        const double sigma = std::clamp(std::pow(inner(xa, za) / inner(x, z), 3.0), 0.0, 1.0);

        for (std::size_t b = 0; b < nb; ++b) {
            const auto d = x[b].rows();
            rc[b] = sigma * mu * ComplexMatrix::Identity(d, d) - x[b] * z[b] - dxa[b] * dza[b];
        }
        Blocks dx, dz;
        RealVector dy;
        direction(rc, dx, dy, dz);
        const double gamma = 0.9 + 0.09 * std::min(ap_a, ad_a);
        const double ap = std::min(1.0, gamma * max_step(x, dx));
        const double ad = std::min(1.0, gamma * max_step(z, dz));
        stalls = (ap < 1e-8 && ad < 1e-8) ? stalls + 1 : 0;
        add(x, dx, ap);
        add(z, dz, ad);
        y += ad * dy;
        for (std::size_t b = 0; b < nb; ++b) {
            x[b] = hermitian_part(x[b]);
            z[b] = hermitian_part(z[b]);
        }
    }
    throw ConvergenceError("SDP solver did not reach tolerance", best.primal, best.dual, best.gap);
}

}  // namespace otlab::sdp
