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

#include <gtest/gtest.h>

#include <cmath>

#include "otlab/cheat/attacks.h"
#include "otlab/error.h"
#include "otlab/model/compile.h"
#include "otlab/otcore/protocols.h"
#include "otlab/qlin/random.h"
#include "otlab/sdp/brute_force.h"
#include "otlab/sdp/certificate.h"
#include "otlab/sdp/cheating.h"
#include "otlab/sdp/json.h"
#include "otlab/sdp/solver.h"

namespace otlab::sdp {
namespace {

using model::ProtocolSpec;
using otcore::Party;

const ProtocolSpec &commitment_cf() {
    static const ProtocolSpec s = model::compile_with_deferred_measurement(otcore::qutrit_commitment_cf_protocol());
    return s;
}

const ProtocolSpec &announce_coin() {
    static const ProtocolSpec s = model::compile_with_deferred_measurement(otcore::announce_coin_protocol());
    return s;
}

const ProtocolSpec &qutrit_ot() {
    static const ProtocolSpec s = model::compile_with_deferred_measurement(otcore::qutrit_ot_protocol());
    return s;
}

struct Solved {
    SdpProblem problem;
    SdpSolution solution;
};

// The cheating-Alice program on the commitment CF is the slowest solve; share it.
const Solved &commitment_alice() {
    static const Solved s = [] {
        Solved out{build_cheating_sdp(commitment_cf(), Party::kAlice, "b={0};xb=0"), {}};
        out.solution = solve_sdp(out.problem);
        return out;
    }();
    return s;
}

const Solved &commitment_bob() {
    static const Solved s = [] {
        Solved out{build_cheating_sdp(commitment_cf(), Party::kBob, "0"), {}};
        out.solution = solve_sdp(out.problem);
        return out;
    }();
    return s;
}

ComplexMatrix basis_projector(std::size_t d, std::size_t i) {
    ComplexMatrix p = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    return p;
}

// max <|0><0|, rho> subject to Tr rho = 1.
SdpProblem trivial_problem(std::size_t d) {
    SdpProblem p;
    p.blocks.push_back({"rho", d, ComplexMatrix()});
    p.objective.push_back(basis_projector(d, 0));
    Constraint c{"trace", 1, {}, ComplexMatrix::Ones(1, 1)};
    MapTerm t{0, 1.0, {}};
    for (std::size_t i = 0; i < d; ++i) t.kraus.push_back(ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)).row(static_cast<Eigen::Index>(i)));
    c.terms.push_back(t);
    p.constraints.push_back(c);
    return p;
}

// max sum_i p_i <psi_i|E_i|psi_i> subject to sum_i E_i = I.
SdpProblem discrimination_problem(const std::vector<qlin::ComplexVector> &states) {
    const auto d = static_cast<std::size_t>(states.front().size());
    SdpProblem p;
    Constraint c{"completeness", d, {}, ComplexMatrix::Identity(states.front().size(), states.front().size())};
    for (std::size_t i = 0; i < states.size(); ++i) {
        p.blocks.push_back({"E_" + std::to_string(i), d, ComplexMatrix()});
        p.objective.push_back(states[i] * states[i].adjoint() / static_cast<double>(states.size()));
        c.terms.push_back({i, 1.0, {ComplexMatrix::Identity(states[i].size(), states[i].size())}});
    }
    p.constraints.push_back(c);
    return p;
}

std::vector<qlin::ComplexVector> post_phase_states() {
    const qlin::ComplexVector alpha = qlin::ComplexVector::Constant(3, 1.0 / std::sqrt(3.0));
    std::vector<qlin::ComplexVector> out;
    for (std::size_t x0 = 0; x0 < 2; ++x0)
        for (std::size_t x1 = 0; x1 < 2; ++x1) out.push_back(cheat::phased_state(alpha, x0, x1));
    return out;
}

// Conjugates every factor by a random unitary that fixes |0>.
ProtocolSpec rotate_basis(const ProtocolSpec &spec, std::uint64_t seed) {
    Rng rng(seed);
    auto fixing_zero = [&](std::size_t d) {
        ComplexMatrix w = ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        if (d > 1) w.bottomRightCorner(static_cast<Eigen::Index>(d - 1), static_cast<Eigen::Index>(d - 1)) = qlin::random_unitary(d - 1, rng);
        return w;
    };
    const ComplexMatrix wa = fixing_zero(spec.dim_a), wm = fixing_zero(spec.dim_m), wb = fixing_zero(spec.dim_b);
    ProtocolSpec out = spec;
    for (auto &r : out.rounds) {
        const ComplexMatrix w = r.actor == Party::kAlice ? qlin::tensor(wa, wm) : qlin::tensor(wm, wb);
        r.unitary = w * r.unitary * w.adjoint();
    }
    for (auto &[l, e] : out.alice_povm) e = wa * e * wa.adjoint();
    for (auto &[l, e] : out.bob_povm) e = wb * e * wb.adjoint();
    return out;
}

void expect_converged(const SdpSolution &s, double tol = 1e-7) {
    EXPECT_LE(s.residuals.primal, tol);
    EXPECT_LE(s.residuals.dual, tol);
    EXPECT_LE(s.residuals.gap, tol);
    EXPECT_GE(s.dual_value, s.primal_value - tol);
}

TEST(Solver, TrivialProgramHasValueOne) {
    const auto s = solve_sdp(trivial_problem(3));
    EXPECT_NEAR(s.primal_value, 1.0, 1e-7);
    EXPECT_NEAR(s.dual_value, 1.0, 1e-7);
    expect_converged(s);
}

TEST(Solver, DiscriminationOfPostPhaseStates) {
    const auto s = solve_sdp(discrimination_problem(post_phase_states()));
    EXPECT_NEAR(s.primal_value, 0.75, 1e-6);
    EXPECT_NEAR(s.dual_value, 0.75, 1e-6);
    EXPECT_TRUE(verify_dual_certificate(discrimination_problem(post_phase_states()), s).pass);
}

TEST(Solver, RandomStartsAgree) {
    const std::vector<SdpProblem> problems = {discrimination_problem(post_phase_states()), trivial_problem(4),
                                              build_cheating_sdp(commitment_cf(), Party::kBob, "1"),
                                              build_cheating_sdp(qutrit_ot(), Party::kAlice, "b={1};xb=0")};
    for (const auto &p : problems) {
        const double reference = solve_sdp(p).primal_value;
        for (std::uint64_t seed = 1; seed <= 3; ++seed) {
            SolverOptions o;
            o.random_start_seed = seed;
            EXPECT_NEAR(solve_sdp(p, o).primal_value, reference, 1e-6) << "seed " << seed;
        }
    }
}

TEST(Solver, Deterministic) {
    const auto p = build_cheating_sdp(commitment_cf(), Party::kBob, "0");
    const auto a = solve_sdp(p);
    const auto b = solve_sdp(p);
    EXPECT_EQ(a.primal_value, b.primal_value);
    EXPECT_EQ(a.dual_value, b.dual_value);
    EXPECT_EQ(a.iterations, b.iterations);
    EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}

TEST(Solver, OversizedProgramRejected) {
    EXPECT_THROW(solve_sdp(trivial_problem(kMaxSdpDim + 1)), PreconditionError);
}

TEST(Solver, InfeasibleProgramReportsResiduals) {
    auto p = trivial_problem(2);
    p.constraints[0].rhs(0, 0) = -1.0;
    SolverOptions o;
    o.max_iterations = 30;
    try {
        solve_sdp(p, o);
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError &e) {
        EXPECT_GT(std::max({e.primal_residual(), e.dual_residual(), e.gap()}), o.tol);
    }
}

TEST(Solver, MalformedProgramRejected) {
    auto p = trivial_problem(2);
    p.constraints[0].terms[0].kraus[0] = ComplexMatrix::Ones(2, 2);
    EXPECT_FALSE(problem_violations(p).empty());
    EXPECT_THROW(solve_sdp(p), ValidationError);
}

TEST(Certificate, ConvergedSolvePasses) {
    const auto &s = commitment_bob();
    const auto check = verify_dual_certificate(s.problem, s.solution);
    EXPECT_TRUE(check.pass) << (check.failures.empty() ? "" : check.failures.front());
    EXPECT_NEAR(check.dual_value, 0.75, 1e-6);
    EXPECT_GE(check.min_slack_eigenvalue, -kCertificateTol);
}

TEST(Certificate, PerturbedDualFails) {
    const auto &s = commitment_bob();
    SdpSolution bad = s.solution;
    bad.dual.back()(0, 0) += 1e-3;
    const auto check = verify_dual_certificate(s.problem, bad);
    EXPECT_FALSE(check.pass);
    EXPECT_GT(check.max_residual, 3e-4);
    EXPECT_LT(check.max_residual, 3e-3);
}

TEST(Certificate, HandBuiltTrivialDual) {
    const auto p = trivial_problem(3);
    SdpSolution s;
    s.primal_value = 1.0;
    s.dual_value = 1.0;
    s.dual = {ComplexMatrix::Ones(1, 1)};
    s.slack = {ComplexMatrix::Identity(3, 3) - basis_projector(3, 0)};
    const auto check = verify_dual_certificate(p, s);
    EXPECT_TRUE(check.pass);
    EXPECT_DOUBLE_EQ(check.dual_value, 1.0);
    EXPECT_EQ(check.max_residual, 0.0);
}

TEST(Certificate, InfeasibleDualFails) {
    const auto p = trivial_problem(3);
    SdpSolution s;
    s.primal_value = 0.5;
    s.dual_value = 0.5;
    s.dual = {ComplexMatrix::Constant(1, 1, 0.5)};
    s.slack = {0.5 * ComplexMatrix::Identity(3, 3) - basis_projector(3, 0)};
    const auto check = verify_dual_certificate(p, s);
    EXPECT_FALSE(check.pass);
    EXPECT_NEAR(check.min_slack_eigenvalue, -0.5, 1e-12);
}

TEST(Cheating, AnnounceCoin) {
    EXPECT_NEAR(solve_sdp(build_cheating_sdp(announce_coin(), Party::kBob, "0")).primal_value, 0.5, 1e-6);
    EXPECT_NEAR(solve_sdp(build_cheating_sdp(announce_coin(), Party::kAlice, "b={0};xb=0")).primal_value, 1.0, 1e-6);
}

TEST(Cheating, CommitmentCfBothParties) {
    EXPECT_NEAR(commitment_bob().solution.primal_value, 0.75, 1e-6);
    EXPECT_NEAR(commitment_alice().solution.primal_value, 0.75, 1e-6);
    expect_converged(commitment_bob().solution);
    expect_converged(commitment_alice().solution);
    const auto check = verify_dual_certificate(commitment_alice().problem, commitment_alice().solution);
    EXPECT_TRUE(check.pass);
}

TEST(Cheating, UnknownTarget) {
    EXPECT_THROW(build_cheating_sdp(announce_coin(), Party::kBob, "b={0};xb=0"), PreconditionError);
    EXPECT_THROW(build_cheating_sdp(announce_coin(), Party::kAlice, "2"), PreconditionError);
}

TEST(Cheating, ProblemShape) {
    const auto p = build_cheating_sdp(commitment_cf(), Party::kBob, "0");
    EXPECT_TRUE(problem_violations(p).empty());
    EXPECT_EQ(p.metadata.cheater, "bob");
    EXPECT_EQ(p.metadata.n_constraints_rounds, 3u);
    EXPECT_EQ(p.metadata.n_messages, commitment_cf().messages);
    EXPECT_EQ(p.blocks.size(), 4u);
    EXPECT_EQ(p.constraints.size(), 4u);
    for (const auto &c : p.objective) {
        EXPECT_GE(qlin::min_eigenvalue(c), -1e-12);
        EXPECT_LE(qlin::max_eigenvalue(c), 1.0 + 1e-12);
    }
}

// The compressed constraints must agree with the uncompressed chain on A (x) M.
TEST(Cheating, EmbeddedStatesSatisfyChain) {
    const auto &spec = commitment_cf();
    const auto &s = commitment_bob();
    const auto rho = embedded_blocks(s.problem, s.solution.primal);
    const qlin::SubsystemLayout am({spec.dim_a, spec.dim_m});
    const std::size_t keep_a[1] = {0};
    ComplexMatrix zero = basis_projector(spec.dim_a, 0);
    EXPECT_LT((qlin::partial_trace(rho[0], am, keep_a) - zero).cwiseAbs().maxCoeff(), 1e-6);
    std::vector<ComplexMatrix> alice_rounds;
    for (const auto &r : spec.rounds)
        if (r.actor == Party::kAlice) alice_rounds.push_back(r.unitary);
    ASSERT_EQ(alice_rounds.size() + 1, rho.size());
    for (std::size_t j = 1; j < rho.size(); ++j) {
        const ComplexMatrix &u = alice_rounds[j - 1];
        const ComplexMatrix lhs = qlin::partial_trace(rho[j], am, keep_a);
        const ComplexMatrix rhs = qlin::partial_trace(ComplexMatrix(u * rho[j - 1] * u.adjoint()), am, keep_a);
        EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-6) << "round " << j;
        EXPECT_NEAR(rho[j].trace().real(), 1.0, 1e-6);
        EXPECT_GE(qlin::min_eigenvalue(rho[j]), -1e-7);
    }
    const ComplexMatrix obj = qlin::tensor(spec.alice_povm.at("0"), ComplexMatrix::Identity(3, 3));
    EXPECT_NEAR((obj * rho.back()).trace().real(), s.solution.primal_value, 1e-6);
}

TEST(Properties, KitaevProduct) {
    struct Case {
        const ProtocolSpec *spec;
        std::string alice_target;  // label of Bob's POVM
        std::string bob_target;    // label of Alice's POVM
    };
    const std::vector<Case> cases = {{&announce_coin(), "b={0};xb=0", "0"},
                                     {&qutrit_ot(), "b={0};xb=1", "01"},
                                     {&qutrit_ot(), "b={1};xb=0", "00"}};
    for (const auto &c : cases) {
        const double a = solve_sdp(build_cheating_sdp(*c.spec, Party::kAlice, c.alice_target)).primal_value;
        const double b = solve_sdp(build_cheating_sdp(*c.spec, Party::kBob, c.bob_target)).primal_value;
        const double honest = 1.0 / (static_cast<double>(model::binomial(c.spec->n, c.spec->k)) * std::ldexp(1.0, static_cast<int>(c.spec->n)));
        EXPECT_GE(a * b, honest - 1e-6) << c.spec->name;
    }
    const double product = commitment_alice().solution.primal_value * commitment_bob().solution.primal_value;
    EXPECT_GE(product, 0.5 - 1e-6);
    EXPECT_NEAR(product - 0.5, 1.0 / 16.0, 1e-5);
}

TEST(Properties, RelaxingAConstraintNeverLowersTheValue) {
    const auto p = build_cheating_sdp(commitment_cf(), Party::kBob, "0");
    const double base = solve_sdp(p).primal_value;
    for (std::size_t j = 0; j < p.constraints.size(); ++j) {
        const double relaxed = solve_sdp(relax_to_trace(p, j)).primal_value;
        EXPECT_GE(relaxed, base - 1e-6) << "constraint " << j;
    }
}

TEST(Properties, BasisChangeInvariance) {
    for (std::uint64_t seed : {3u, 17u}) {
        const auto rotated = rotate_basis(commitment_cf(), seed);
        ASSERT_TRUE(model::validate(rotated).empty());
        EXPECT_NEAR(solve_sdp(build_cheating_sdp(rotated, Party::kBob, "1")).primal_value, 0.75, 1e-6);
        const auto ot = rotate_basis(qutrit_ot(), seed);
        EXPECT_NEAR(solve_sdp(build_cheating_sdp(ot, Party::kAlice, "b={0};xb=0")).primal_value, 0.5, 1e-6);
        EXPECT_NEAR(solve_sdp(build_cheating_sdp(ot, Party::kBob, "11")).primal_value, 0.25, 1e-6);
    }
}

TEST(BruteForce, CommitmentCfBobIsStable) {
    BruteForceOptions o;
    o.restarts = 50;
    const auto r = brute_force_cheat(commitment_cf(), Party::kBob, "0", o);
    EXPECT_NEAR(r.value, 0.75, 1e-3);
    for (double v : r.restart_values) EXPECT_LE(v, 0.75 + 1e-6);
    std::size_t hits = 0;
    for (double v : r.restart_values) hits += std::abs(v - 0.75) < 1e-3;
    EXPECT_GE(hits, 45u);
}

TEST(BruteForce, SandwichOnCommitmentCf) {
    BruteForceOptions o;
    o.restarts = 3;
    o.workspace_dim = 3;
    for (const Solved *s : {&commitment_bob(), &commitment_alice()}) {
        const Party cheater = s->problem.metadata.cheater == "alice" ? Party::kAlice : Party::kBob;
        const double brute = brute_force_cheat(commitment_cf(), cheater, s->problem.metadata.target, o).value;
        EXPECT_LE(brute, s->solution.primal_value + 1e-6);
        EXPECT_LE(s->solution.primal_value, s->solution.dual_value + 1e-7);
        EXPECT_LE(s->solution.dual_value, brute + 2e-3);
    }
}

TEST(BruteForce, HonestStartIsFeasible) {
    BruteForceOptions o;
    o.restarts = 1;
    o.start_from_honest = true;
    o.max_iterations = 0;
    EXPECT_NEAR(brute_force_cheat(announce_coin(), Party::kBob, "0", o).value, 0.5, 1e-12);
    o.max_iterations = 500;
    EXPECT_GE(brute_force_cheat(announce_coin(), Party::kBob, "0", o).value, 0.5 - 1e-12);
}

TEST(BruteForce, AliceForcesAnnouncedCoin) {
    EXPECT_NEAR(brute_force_cheat(announce_coin(), Party::kAlice, "b={0};xb=1", 3), 1.0, 1e-6);
}

TEST(BruteForce, WorkspaceCap) {
    BruteForceOptions o;
    o.workspace_dim = kMaxBruteForceDim;
    EXPECT_THROW(brute_force_cheat(commitment_cf(), Party::kBob, "0", o), PreconditionError);
    o.workspace_dim = 0;
    o.start_from_honest = true;
    EXPECT_THROW(brute_force_cheat(commitment_cf(), Party::kBob, "0", o), PreconditionError);
}

TEST(Json, ProblemAndCertificateRoundTrip) {
    const auto &s = commitment_bob();
    const auto j = certificate_to_json(s.problem, s.solution);
    const auto p = problem_from_json(nlohmann::json::parse(j["problem"].dump()));
    const auto sol = solution_from_json(nlohmann::json::parse(j["solution"].dump()));
    EXPECT_EQ(p.blocks.size(), s.problem.blocks.size());
    EXPECT_EQ(p.metadata.target, "0");
    EXPECT_EQ(sol.primal_value, s.solution.primal_value);
    EXPECT_TRUE(verify_dual_certificate(p, sol).pass);
    EXPECT_THROW(problem_from_json(nlohmann::json::parse(R"({"blocks": 3})")), ValidationError);
}

}  // namespace
}  // namespace otlab::sdp
