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
#include <numbers>

#include "otlab/cheat/attacks.h"
#include "otlab/cheat/discrimination.h"
#include "otlab/cheat/lis.h"
#include "otlab/cheat/purification.h"
#include "otlab/cheat/report.h"
#include "otlab/error.h"
#include "otlab/otcore/executor.h"
#include "otlab/otcore/protocols.h"
#include "otlab/qlin/random.h"

namespace otlab::cheat {
namespace {

using qlin::DensityMatrix;
using qlin::PureState;

Eigen::Index idx(std::size_t n) { return static_cast<Eigen::Index>(n); }

ComplexMatrix ket_bra(const ComplexVector &a, const ComplexVector &b) { return a * b.adjoint(); }

ComplexVector basis(std::size_t d, std::size_t i) { return ComplexVector::Unit(idx(d), idx(i)); }

// Alice's view of Bob's first message: the q half of (|bb> + |22>)/sqrt2.
DensityMatrix sigma(std::size_t b) {
    const std::size_t keep[1] = {1};
    return qlin::partial_trace(DensityMatrix::from_pure(PureState::from_amplitudes(otcore::qutrit_pair_state(b))),
                               qlin::SubsystemLayout({3, 3}), keep);
}

std::vector<PureState> post_phase_ensemble() {
    const ComplexVector alpha = otcore::uniform_amplitudes(3);
    std::vector<PureState> out;
    for (std::size_t x = 0; x < 4; ++x) out.push_back(PureState::from_amplitudes(phased_state(alpha, x / 2, x % 2)));
    return out;
}

double two_outcome_success(const DensityMatrix &s0, const DensityMatrix &s1, const ComplexMatrix &e0) {
    const ComplexMatrix e1 = ComplexMatrix::Identity(e0.rows(), e0.cols()) - e0;
    return 0.5 * (e0 * s0.matrix()).trace().real() + 0.5 * (e1 * s1.matrix()).trace().real();
}

TEST(Helstrom, QutritOtStates) {
    const auto h = helstrom(sigma(0), sigma(1));
    EXPECT_NEAR(h.probability, 0.75, 1e-12);
    // Kernel |2> goes to outcome 0.
    const ComplexMatrix expected = ket_bra(basis(3, 0), basis(3, 0)) + ket_bra(basis(3, 2), basis(3, 2));
    EXPECT_LT((h.measurement[0] - expected).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(two_outcome_success(sigma(0), sigma(1), h.measurement[0]), 0.75, 1e-12);
}

TEST(Helstrom, EqualStates) {
    Rng rng(3);
    const auto rho = qlin::random_density(4, rng);
    const auto h = helstrom(rho, rho);
    EXPECT_NEAR(h.probability, 0.5, 1e-12);
    EXPECT_LT((h.measurement[0] - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Helstrom, OrthogonalPureStates) {
    const auto h = helstrom(DensityMatrix::from_pure(PureState::basis(3, 0)), DensityMatrix::from_pure(PureState::basis(3, 2)));
    EXPECT_NEAR(h.probability, 1.0, 1e-12);
}

TEST(Helstrom, DimensionMismatch) {
    EXPECT_THROW(helstrom(DensityMatrix::from_pure(PureState::basis(2, 0)), DensityMatrix::from_pure(PureState::basis(3, 0))),
                 DimensionError);
}

TEST(Helstrom, DominatesRandomMeasurements) {
    Rng rng(5);
    for (int pair = 0; pair < 10; ++pair) {
        const std::size_t d = 2 + static_cast<std::size_t>(pair % 3);
        const auto s0 = qlin::random_density(d, rng), s1 = qlin::random_density(d, rng);
        const auto h = helstrom(s0, s1);
        EXPECT_NEAR(two_outcome_success(s0, s1, h.measurement[0]), h.probability, 1e-12);
        for (int t = 0; t < 1000; ++t) {
            ComplexMatrix e0;
            if (t % 2 == 0) {
                e0 = qlin::random_projector(d, 1 + static_cast<std::size_t>(t / 2) % d, rng);
            } else {
                // 0 <= E <= I from a random unitary and uniform weights.
                const ComplexMatrix u = qlin::random_unitary(d, rng);
                Eigen::VectorXd w(idx(d));
                for (auto &x : w) x = uniform01(rng);
                e0 = u * w.cast<qlin::Complex>().asDiagonal() * u.adjoint();
            }
            EXPECT_GE(h.probability - two_outcome_success(s0, s1, e0), -1e-9);
        }
    }
}

TEST(Nayak, Values) {
    EXPECT_DOUBLE_EQ(nayak_bound(3, 4), 0.75);
    EXPECT_DOUBLE_EQ(nayak_bound(5, 5), 1.0);
    EXPECT_DOUBLE_EQ(nayak_bound(1, 2), 0.5);
    EXPECT_DOUBLE_EQ(nayak_bound(8, 2), 1.0);
    EXPECT_THROW(nayak_bound(0, 2), PreconditionError);
}

TEST(OptimalDiscrimination, PostPhaseEnsemble) {
    const auto states = post_phase_ensemble();
    const std::vector<double> priors(4, 0.25);
    const auto r = optimal_discrimination(states, priors);
    EXPECT_NEAR(r.probability, 0.75, 1e-6);
    EXPECT_GE(r.upper_bound, r.probability - 1e-9);
    EXPECT_LE(r.upper_bound - r.probability, 1e-8);

    // The padded basis |Psi_x> reaches the same value.
    const ComplexMatrix psi = superposition_measurement_basis();
    double explicit_value = 0;
    for (std::size_t x = 0; x < 4; ++x) {
        ComplexVector padded = ComplexVector::Zero(4);
        padded.head(3) = states[x].amplitudes();
        explicit_value += 0.25 * std::norm(psi.col(idx(x)).dot(padded));
    }
    EXPECT_NEAR(explicit_value, 0.75, 1e-12);
    EXPECT_NEAR(r.probability, explicit_value, 1e-8);
    EXPECT_NEAR(r.probability, nayak_bound(3, 4), 1e-8);
}

TEST(OptimalDiscrimination, PovmIsFeasible) {
    Rng rng(8);
    std::vector<PureState> states;
    for (int i = 0; i < 3; ++i) states.push_back(qlin::random_state(3, rng));
    const std::vector<double> priors = {0.5, 0.3, 0.2};
    const auto r = optimal_discrimination(states, priors);
    ComplexMatrix sum = ComplexMatrix::Zero(3, 3);
    double value = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_GE(qlin::min_eigenvalue(r.povm[i]), -1e-8);
        sum += r.povm[i];
        value += priors[i] * states[i].amplitudes().dot(r.povm[i] * states[i].amplitudes()).real();
    }
    EXPECT_LT((sum - ComplexMatrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-8);
    EXPECT_NEAR(value, r.probability, 1e-12);
    EXPECT_LE(r.probability, r.upper_bound + 1e-9);
    // Guessing the likeliest state is always possible.
    EXPECT_GE(r.probability, 0.5 - 1e-9);
}

TEST(OptimalDiscrimination, TrivialEnsembles) {
    const std::vector<PureState> orthogonal = {PureState::basis(2, 0), PureState::basis(2, 1)};
    const std::vector<double> half = {0.5, 0.5};
    EXPECT_NEAR(optimal_discrimination(orthogonal, half).probability, 1.0, 1e-8);
    const std::vector<PureState> same(4, PureState::basis(3, 1));
    const std::vector<double> quarter(4, 0.25);
    EXPECT_NEAR(optimal_discrimination(same, quarter).probability, 0.25, 1e-8);
}

TEST(OptimalDiscrimination, Errors) {
    const std::vector<PureState> states = {PureState::basis(2, 0), PureState::basis(2, 1)};
    const std::vector<double> bad = {0.5, 0.6};
    EXPECT_THROW(optimal_discrimination(states, bad), PreconditionError);
    const std::vector<double> one = {1.0};
    EXPECT_THROW(optimal_discrimination(states, one), PreconditionError);
    const std::vector<PureState> mixed_dims = {PureState::basis(2, 0), PureState::basis(3, 1)};
    const std::vector<double> half = {0.5, 0.5};
    EXPECT_THROW(optimal_discrimination(mixed_dims, half), DimensionError);
}

TEST(Attacks, BasisAttack) {
    const auto protocol = otcore::qutrit_ot_protocol();
    const auto s = alice_basis_attack();
    const double value = exact_value(protocol, s);
    EXPECT_NEAR(value, 0.75, 1e-10);
    EXPECT_NEAR(otcore::run_exact(protocol, &s.program).bob_abort, 0.0, 1e-12);
    // Outcome 2 has probability 1/2 for either b and outcomes 0/1 reveal b.
    const double p2 = sigma(0).matrix()(2, 2).real();
    EXPECT_NEAR(p2, sigma(1).matrix()(2, 2).real(), 1e-15);
    EXPECT_NEAR((value - (1 - p2)) / p2, 0.5, 1e-10);
    EXPECT_NEAR(helstrom(sigma(0), sigma(1)).probability, value, 1e-10);
}

TEST(Attacks, SuperpositionAttack) {
    const auto protocol = otcore::qutrit_ot_protocol();
    const auto s = bob_superposition_attack();
    EXPECT_NEAR(exact_value(protocol, s), 0.75, 1e-10);
    EXPECT_NEAR(otcore::run_exact(protocol, &s.program).alice_abort, 0.0, 1e-12);
    const auto states = post_phase_ensemble();
    const ComplexMatrix psi = superposition_measurement_basis();
    for (std::size_t x = 0; x < 4; ++x) {
        ComplexVector padded = ComplexVector::Zero(4);
        padded.head(3) = states[x].amplitudes();
        EXPECT_NEAR(std::norm(psi.col(idx(x)).dot(padded)), 0.75, 1e-12) << "pair " << x;
    }
    const std::vector<double> priors(4, 0.25);
    EXPECT_NEAR(exact_value(protocol, s), optimal_discrimination(states, priors).probability, 1e-8);
}

TEST(Attacks, ParityAttack) {
    const auto protocol = otcore::qutrit_ot_protocol();
    const auto s = bob_parity_attack();
    EXPECT_NEAR(exact_value(protocol, s), 1.0, 1e-10);
    for (std::size_t bit = 0; bit < 2; ++bit)
        EXPECT_NEAR(otcore::exact_success(protocol, s.program, otcore::bob_guesses_bit(bit)), 0.5, 1e-10);
    // Bob's two-qubit state after Alice's phases: (|00> + (-1)^{x0}|11>)/sqrt2 for x1 = 0.
    ComplexVector phi00 = ComplexVector::Zero(4), phi10 = ComplexVector::Zero(4);
    phi00(0) = phi00(3) = phi10(0) = 1 / std::sqrt(2.0);
    phi10(3) = -1 / std::sqrt(2.0);
    EXPECT_NEAR(std::abs(phi00.dot(phi10)), 0.0, 1e-15);
    // Neither bit alone is visible: the reduced states for x0 = 0 and x0 = 1 coincide.
    auto bell = [](int s0, int s1) {
        ComplexVector v = ComplexVector::Zero(4);
        v(0) = (s0 ? -1.0 : 1.0) / std::sqrt(2.0);
        v(3) = (s1 ? -1.0 : 1.0) / std::sqrt(2.0);
        return DensityMatrix::from_pure(PureState::from_amplitudes(v));
    };
    const auto r0 = DensityMatrix::from_matrix(0.5 * (bell(0, 0).matrix() + bell(0, 1).matrix()));
    const auto r1 = DensityMatrix::from_matrix(0.5 * (bell(1, 0).matrix() + bell(1, 1).matrix()));
    EXPECT_NEAR(helstrom(r0, r1).probability, 0.5, 1e-12);
}

TEST(Attacks, MonteCarloWithinThreeSigma) {
    const auto ot = otcore::qutrit_ot_protocol();
    const auto cf = otcore::qutrit_commitment_cf_protocol();
    const std::vector<std::pair<const otcore::InteractiveProtocol *, Strategy>> cases = {
        {&ot, alice_basis_attack()},          {&ot, bob_superposition_attack()}, {&ot, bob_parity_attack()},
        {&cf, commitment_cf_bob_attack(0)},   {&cf, commitment_cf_alice_attack(1)}};
    std::uint64_t seed = 100;
    for (const auto &[protocol, s] : cases) {
        const double exact = exact_value(*protocol, s);
        const auto est = otcore::estimate_success(*protocol, s.program, s.event, 100000, seed++, 2);
        const double sigma_n = std::sqrt(exact * (1 - exact) / 100000.0);
        EXPECT_LE(std::abs(est.rate - exact), 3 * sigma_n + 1e-12) << s.descriptor;
    }
}

MeasurementPair correlated_pair() {
    MeasurementPair m;
    for (std::size_t x = 0; x < 4; ++x) m.m[x] = ket_bra(basis(4, x), basis(4, x));
    for (std::size_t b = 0; b < 2; ++b) {
        m.p[b] = ComplexMatrix::Zero(4, 4);
        m.q[b] = ComplexMatrix::Zero(4, 4);
    }
    for (std::size_t x = 0; x < 4; ++x) {
        m.p[x / 2] += ket_bra(basis(4, x), basis(4, x));
        m.q[x % 2] += ket_bra(basis(4, x), basis(4, x));
    }
    return m;
}

TEST(Lis, PerfectCorrelation) {
    ComplexVector w = ComplexVector::Zero(16);
    for (std::size_t x = 0; x < 4; ++x) w(idx(5 * x)) = 0.5;
    const auto r = lis_compose(PureState::from_amplitudes(w), correlated_pair(), qlin::SubsystemLayout({4, 4}));
    EXPECT_NEAR(r.p, 1.0, 1e-12);
    EXPECT_NEAR(r.q, 1.0, 1e-12);
    EXPECT_NEAR(r.success, 1.0, 1e-12);
    EXPECT_NEAR(r.bound, 1.0, 1e-12);
}

TEST(Lis, VacuousBound) {
    // Alice holds x = 00; Bob's uniform state makes each single-bit guess a coin toss.
    ComplexVector w = qlin::tensor_vectors(basis(4, 0), ComplexVector::Constant(4, 0.5));
    const auto r = lis_compose(PureState::from_amplitudes(w), correlated_pair(), qlin::SubsystemLayout({4, 4}));
    EXPECT_NEAR(r.p, 0.5, 1e-12);
    EXPECT_NEAR(r.q, 0.5, 1e-12);
    EXPECT_NEAR(r.bound, 0.0, 1e-12);
    EXPECT_GE(r.success, 0.0);
    EXPECT_NEAR(r.success, 0.25, 1e-12);
}

TEST(Lis, Preconditions) {
    const qlin::SubsystemLayout layout({4, 4});
    ComplexVector w = qlin::tensor_vectors(basis(4, 0), basis(4, 3));
    EXPECT_THROW(lis_compose(PureState::from_amplitudes(w), correlated_pair(), layout), PreconditionError);
    auto bad = correlated_pair();
    bad.p[0] *= 0.5;
    ComplexVector ok = ComplexVector::Zero(16);
    for (std::size_t x = 0; x < 4; ++x) ok(idx(5 * x)) = 0.5;
    EXPECT_FALSE(measurement_violations(bad).empty());
    EXPECT_THROW(lis_compose(PureState::from_amplitudes(ok), bad, layout), ValidationError);
    EXPECT_THROW(lis_compose(PureState::from_amplitudes(ok), correlated_pair(), qlin::SubsystemLayout({2, 8})),
                 DimensionError);
}

// Both orders of the sequential measurement, summed outcome by outcome.
double sequential_success(const LisInstance &inst) {
    const ComplexVector &w = inst.omega.amplitudes();
    double pq = 0, qp = 0;
    for (std::size_t x = 0; x < 4; ++x) {
        pq += (qlin::tensor(inst.meas.m[x], inst.meas.q[x % 2] * inst.meas.p[x / 2]) * w).squaredNorm();
        qp += (qlin::tensor(inst.meas.m[x], inst.meas.p[x / 2] * inst.meas.q[x % 2]) * w).squaredNorm();
    }
    return 0.5 * (pq + qp);
}

TEST(Lis, RandomInstances) {
    std::size_t nontrivial = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        Rng rng = derive_stream(2024, i);
        const std::size_t da = 4 + 4 * (i % 2), db = 2 + 2 * (i % 3);
        const auto inst = random_lis_instance(da, db, rng, i % 4 == 0 ? 0.0 : 1.0 + static_cast<double>(i % 5));
        ASSERT_TRUE(measurement_violations(inst.meas).empty());
        const auto r = lis_compose(inst.omega, inst.meas, inst.layout);
        EXPECT_GE(r.p, 0.5);
        EXPECT_GE(r.q, 0.5);
        EXPECT_NEAR(r.success, sequential_success(inst), 1e-12);
        EXPECT_GE(r.success, r.bound - 1e-10) << "instance " << i;
        EXPECT_GE(r.dc, r.dc_bound - 1e-10) << "instance " << i;
        EXPECT_GE(r.cd, r.cd_bound - 1e-10) << "instance " << i;
        EXPECT_GE(angle_sum_gap(r.theta, r.theta_prime), -1e-12);
        nontrivial += r.bound > 0.05;
    }
    EXPECT_GT(nontrivial, 100u);
}

TEST(Claims, Projection) {
    Rng rng(31);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t d = 2 + static_cast<std::size_t>(i % 5);
        const ComplexMatrix q = qlin::random_projector(d, 1 + static_cast<std::size_t>(i) % (d - 1), rng);
        const ComplexVector y = (q * qlin::random_gaussian_vector(d, rng)).normalized();
        const ComplexVector x = qlin::random_state(d, rng).amplitudes();
        EXPECT_GE(projection_gap(x, q, y), -1e-12);
    }
    EXPECT_THROW(projection_gap(basis(2, 0), ket_bra(basis(2, 0), basis(2, 0)), basis(2, 1)), PreconditionError);
}

TEST(Claims, Triangle) {
    Rng rng(32);
    int tested = 0;
    while (tested < 1000) {
        const std::size_t d = 2 + static_cast<std::size_t>(tested % 4);
        const ComplexVector psi = qlin::random_state(d, rng).amplitudes();
        const ComplexVector phi = (psi + 0.6 * qlin::random_gaussian_vector(d, rng) / std::sqrt(double(d))).normalized();
        const ComplexVector xi = (phi + 0.6 * qlin::random_gaussian_vector(d, rng) / std::sqrt(double(d))).normalized();
        if (std::abs(psi.dot(phi)) < std::cos(std::numbers::pi / 4) || std::abs(phi.dot(xi)) < std::cos(std::numbers::pi / 4))
            continue;
        EXPECT_GE(triangle_gap(psi, phi, xi), -1e-12);
        ++tested;
    }
    EXPECT_THROW(triangle_gap(basis(2, 0), basis(2, 1), basis(2, 1)), PreconditionError);
}

TEST(Claims, AngleSumGrid) {
    const double top = std::numbers::pi / 4;
    double worst = 1;
    for (int i = 0; i < 200; ++i)
        for (int j = 0; j < 200; ++j) worst = std::min(worst, angle_sum_gap(top * i / 199, top * j / 199));
    EXPECT_GE(worst, -1e-12);
    EXPECT_NEAR(angle_sum_gap(0.3, 0.3), 0.0, 1e-12);
    EXPECT_THROW(angle_sum_gap(1.0, 0.0), PreconditionError);
}

TEST(Purification, OrthogonalEncodings) {
    EntangledBobStrategy s;
    s.alpha = otcore::uniform_amplitudes(3);
    for (std::size_t i = 0; i < 3; ++i) s.encodings[i] = basis(3, i);
    Rng rng(41);
    const ComplexMatrix u = qlin::random_unitary(9, rng);
    for (auto &m : s.measurement) m = ComplexMatrix::Zero(9, 9);
    for (Eigen::Index j = 0; j < 9; ++j) s.measurement[static_cast<std::size_t>(j) % 4] += u.col(j) * u.col(j).adjoint();
    const auto r = purification_equivalence_check(s);
    EXPECT_NEAR(r.prob_entangled, r.prob_purified, 1e-10);
}

TEST(Purification, IdenticalEncodingsMatchPlainQutrit) {
    Rng rng(42);
    auto s = random_entangled_strategy(2, rng);
    const ComplexVector e = qlin::random_state(2, rng).amplitudes();
    for (auto &enc : s.encodings) enc = e;
    const auto r = purification_equivalence_check(s);
    EXPECT_NEAR(r.prob_entangled, r.prob_purified, 1e-10);
    // Without entanglement Bob just holds phased_state (x) |e>.
    double direct = 0;
    for (std::size_t x = 0; x < 4; ++x) {
        const ComplexVector v = qlin::tensor_vectors(phased_state(s.alpha, x / 2, x % 2), e);
        direct += 0.25 * v.dot(s.measurement[x] * v).real();
    }
    EXPECT_NEAR(r.prob_entangled, direct, 1e-12);
}

TEST(Purification, RandomStrategies) {
    for (std::uint64_t i = 0; i < 100; ++i) {
        Rng rng = derive_stream(77, i);
        const auto s = random_entangled_strategy(1 + i % 4, rng);
        const auto r = purification_equivalence_check(s);
        EXPECT_NEAR(r.prob_entangled, r.prob_purified, 1e-10) << "instance " << i;
        EXPECT_LE(r.prob_entangled, nayak_bound(3, 4) + 1e-10);
    }
}

TEST(Purification, EncodingUnitary) {
    Rng rng(43);
    const auto s = random_entangled_strategy(3, rng);
    const ComplexMatrix u = encoding_unitary(s.encodings);
    EXPECT_TRUE(qlin::is_unitary(u));
    for (std::size_t i = 0; i < 3; ++i)
        EXPECT_LT((u * qlin::tensor_vectors(basis(3, i), basis(3, 0)) - qlin::tensor_vectors(basis(3, i), s.encodings[i]))
                      .cwiseAbs()
                      .maxCoeff(),
                  1e-12);
}

TEST(Purification, InvalidStrategy) {
    Rng rng(44);
    auto s = random_entangled_strategy(2, rng);
    s.alpha *= 2.0;
    EXPECT_THROW(purification_equivalence_check(s), ValidationError);
    s = random_entangled_strategy(2, rng);
    s.measurement[0] *= 0.5;
    EXPECT_THROW(purification_equivalence_check(s), ValidationError);
    s = random_entangled_strategy(2, rng);
    s.encodings[1] = basis(3, 0);
    EXPECT_THROW(purification_equivalence_check(s), DimensionError);
}

TEST(Report, QutritOtAlice) {
    CheatRequest req;
    req.protocol = "qutrit-ot";
    req.party = otcore::Party::kAlice;
    const auto r = run_cheat(req);
    EXPECT_NEAR(r.lower_bound.value, 0.75, 1e-10);
    ASSERT_TRUE(r.upper_bound.has_value());
    EXPECT_EQ(r.upper_bound->method, "helstrom");
    EXPECT_NEAR(r.upper_bound->value, 0.75, 1e-10);
    const auto j = to_json(r);
    EXPECT_EQ(j["party"], "alice");
    EXPECT_EQ(j["lower_bound"]["strategy"], "alice-basis-measurement");
    EXPECT_DOUBLE_EQ(j["lower_bound"]["detail"]["honest_abort_probability"].get<double>(), 0.0);
    EXPECT_TRUE(j.contains("seed"));
}

TEST(Report, QutritOtBob) {
    CheatRequest req;
    req.protocol = "qutrit-ot";
    req.party = otcore::Party::kBob;
    const auto r = run_cheat(req);
    EXPECT_NEAR(r.lower_bound.value, 0.75, 1e-10);
    ASSERT_TRUE(r.upper_bound.has_value());
    EXPECT_DOUBLE_EQ(r.upper_bound->value, 0.75);
    EXPECT_NEAR(r.upper_bound->certificate["sent_state_optimum"]["probability"].get<double>(), 0.75, 1e-8);
    req.attack = "parity";
    const auto parity = run_cheat(req);
    EXPECT_NEAR(parity.lower_bound.value, 1.0, 1e-10);
    EXPECT_FALSE(parity.upper_bound.has_value());
    EXPECT_TRUE(to_json(parity)["upper_bound"].is_null());
}

TEST(Report, CommitmentCfBob) {
    CheatRequest req;
    req.protocol = "qutrit-commitment-cf";
    req.party = otcore::Party::kBob;
    req.trials = 2000;
    req.seed = 9;
    const auto r = run_cheat(req);
    EXPECT_EQ(r.lower_bound.strategy, "bob-read-commitment");
    EXPECT_NEAR(r.lower_bound.value, 0.75, 1e-10);
    ASSERT_TRUE(r.lower_bound.estimate.has_value());
    EXPECT_EQ(r.lower_bound.estimate->trials, 2000u);
    ASSERT_TRUE(r.upper_bound.has_value());
    EXPECT_NEAR(r.upper_bound->value, 0.75, 1e-6);
    EXPECT_TRUE(r.upper_bound->certificate["check"]["pass"].get<bool>());
    EXPECT_EQ(to_json(r).dump(), to_json(run_cheat(req)).dump());

    req.attack = "optimal";
    req.trials = 0;
    req.oracle = true;
    const auto opt = run_cheat(req);
    EXPECT_NEAR(opt.lower_bound.value, 0.75, 1e-6);
    EXPECT_NEAR(opt.lower_bound.detail["oracle"]["value"].get<double>(), 0.75, 2e-3);
    EXPECT_EQ(opt.target, "0");
}

TEST(Report, Errors) {
    CheatRequest req;
    req.protocol = "qutrit-ot";
    req.party = otcore::Party::kAlice;
    req.attack = "parity";
    EXPECT_THROW(run_cheat(req), PreconditionError);
    req.protocol = "no-such-protocol";
    EXPECT_THROW(run_cheat(req), PreconditionError);
    req.protocol = "qutrit-commitment-cf";
    req.attack = "read-commitment";
    req.party = otcore::Party::kBob;
    req.target = "2";
    EXPECT_THROW(run_cheat(req), PreconditionError);
}

TEST(Report, CoinTargets) {
    const auto &spec = named_spec("announce-coin");
    EXPECT_EQ(coin_target_label(spec, otcore::Party::kBob, "1"), "1");
    EXPECT_EQ(coin_target_label(spec, otcore::Party::kAlice, "1"), "b={0};xb=1");
    EXPECT_EQ(coin_target_label(spec, otcore::Party::kAlice, "abort"), "abort");
    EXPECT_EQ(available_attacks("announce-coin", otcore::Party::kAlice), std::vector<std::string>{"optimal"});
}

}  // namespace
}  // namespace otlab::cheat
