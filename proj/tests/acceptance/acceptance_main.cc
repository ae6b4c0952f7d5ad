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

// Acceptance suite: one line per criterion, PASS or FAIL, with the measured
// values and the wall-clock time against its budget. Exits nonzero when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "otlab/bounds/bounds.h"
#include "otlab/cheat/attacks.h"
#include "otlab/cheat/discrimination.h"
#include "otlab/cheat/lis.h"
#include "otlab/cheat/purification.h"
#include "otlab/cheat/report.h"
#include "otlab/fot/fot.h"
#include "otlab/otcore/executor.h"
#include "otlab/otcore/harness.h"
#include "otlab/otcore/protocols.h"
#include "otlab/qlin/linalg.h"
#include "otlab/qlin/random.h"
#include "otlab/sdp/brute_force.h"
#include "otlab/sdp/certificate.h"
#include "otlab/sdp/cheating.h"
#include "otlab/sdp/solver.h"
#include "otlab/util/rng.h"

namespace {

using namespace otlab;
using otcore::Party;
using qlin::ComplexMatrix;
using qlin::ComplexVector;
using qlin::DensityMatrix;
using qlin::PureState;

// Collects failed checks and the values worth printing.
class Checks {
  public:
    void near(const std::string &what, double got, double want, double tol) {
        note(what, got);
        if (!(std::abs(got - want) <= tol)) fail(what, got, "want " + fmt(want) + " +- " + fmt(tol));
    }
    void at_least(const std::string &what, double got, double floor) {
        if (!(got >= floor)) fail(what, got, "want >= " + fmt(floor));
    }
    void at_most(const std::string &what, double got, double ceiling) {
        if (!(got <= ceiling)) fail(what, got, "want <= " + fmt(ceiling));
    }
    void truth(const std::string &what, bool ok) {
        if (!ok) failures_.push_back(what);
    }
    void note(const std::string &what, double v) {
        if (notes_.size() < 6) notes_.push_back(what + "=" + fmt(v));
    }

    bool ok() const { return failures_.empty(); }
    std::string summary() const {
        std::string s;
        const auto &items = failures_.empty() ? notes_ : failures_;
        for (std::size_t i = 0; i < items.size() && i < 6; ++i) s += (i ? "; " : "") + items[i];
        if (failures_.size() > 6) s += "; ... " + std::to_string(failures_.size() - 6) + " more";
        return s;
    }

    static std::string fmt(double v) {
        std::ostringstream os;
        os.precision(10);
        os << v;
        return os.str();
    }

  private:
    void fail(const std::string &what, double got, const std::string &why) {
        failures_.push_back(what + "=" + fmt(got) + " (" + why + ")");
    }
    std::vector<std::string> failures_;
    std::vector<std::string> notes_;
};

struct Criterion {
    int id;
    std::string name;
    double budget_seconds;
    std::function<void(Checks &)> body;
};

// 1. Honest qutrit OT on every input.
void qutrit_ot_honest(Checks &c) {
    double worst = 0;
    for (std::size_t b = 0; b < 2; ++b)
        for (std::size_t x0 = 0; x0 < 2; ++x0)
            for (std::size_t x1 = 0; x1 < 2; ++x1) {
                const auto run = otcore::run_exact(otcore::qutrit_ot_protocol(otcore::OtInputs{b, x0, x1}));
                double correct = 0;
                for (const auto &[o, p] : run.distribution) {
                    const auto out = otcore::to_ot_outcome(o);
                    if (!out.bob_aborted && out.y == (b == 0 ? x0 : x1)) correct += p;
                }
                worst = std::max({worst, std::abs(1 - correct), run.bob_abort, run.alice_abort});
            }
    c.near("max |1 - P(y = x_b)| and abort", worst, 0.0, 1e-10);
}

// The q half of (|bb> + |22>)/sqrt2, Alice's view of Bob's message.
DensityMatrix sent_state(std::size_t b) {
    const std::size_t keep[1] = {1};
    return qlin::partial_trace(DensityMatrix::from_pure(PureState::from_amplitudes(otcore::qutrit_pair_state(b))),
                               qlin::SubsystemLayout({3, 3}), keep);
}

// 2. Cheating Alice.
void alice_ot(Checks &c) {
    const auto protocol = otcore::qutrit_ot_protocol();
    const auto s = cheat::alice_basis_attack();
    c.near("basis attack", cheat::exact_value(protocol, s), 0.75, 1e-10);
    c.near("helstrom", cheat::helstrom(sent_state(0), sent_state(1)).probability, 0.75, 1e-10);
    c.near("bob abort", otcore::run_exact(protocol, &s.program).bob_abort, 0.0, 1e-10);
}

// 3. Cheating Bob.
void bob_ot(Checks &c) {
    const auto protocol = otcore::qutrit_ot_protocol();
    c.near("superposition attack", cheat::exact_value(protocol, cheat::bob_superposition_attack()), 0.75, 1e-10);
    const ComplexVector alpha = otcore::uniform_amplitudes(3);
    std::vector<PureState> states;
    for (std::size_t x = 0; x < 4; ++x) states.push_back(PureState::from_amplitudes(cheat::phased_state(alpha, x / 2, x % 2)));
    const std::vector<double> priors(4, 0.25);
    const auto opt = cheat::optimal_discrimination(states, priors);
    c.near("discrimination sdp", opt.probability, 0.75, 1e-6);
    c.near("discrimination dual", opt.upper_bound, 0.75, 1e-6);
    c.near("nayak(3,4)", cheat::nayak_bound(3, 4), 0.75, 0.0);
    c.near("parity attack", cheat::exact_value(protocol, cheat::bob_parity_attack()), 1.0, 1e-10);
}

// 4. Entangled Bob versus his purified counterpart.
void purification(Checks &c) {
    double worst = 0;
    for (std::uint64_t i = 0; i < 100; ++i) {
        Rng rng = derive_stream(4004, i);
        const auto r = cheat::purification_equivalence_check(cheat::random_entangled_strategy(1 + i % 4, rng));
        worst = std::max(worst, std::abs(r.prob_entangled - r.prob_purified));
    }
    c.near("max |entangled - purified| over 100", worst, 0.0, 1e-10);
}

// 5. The general OT endpoint and the inverse pair f, g.
void ot_endpoint(Checks &c) {
    const double closed = bounds::ot_lower_bound_epsilon();
    const double bis = bounds::ot_lower_bound_epsilon_by_bisection();
    c.near("epsilon closed form", closed, 0.0586, 5e-5);
    c.near("epsilon bisection", bis, 0.0586, 5e-5);
    c.near("|closed - bisection|", std::abs(closed - bis), 0.0, 1e-9);
    double worst = 0;
    for (int i = 0; i <= 10000; ++i) {
        const double x = 0.5 + 0.5 * i / 10000.0;
        worst = std::max(worst, std::abs(bounds::f(bounds::g(x)) - x));
    }
    c.near("max |f(g(x)) - x|", worst, 0.0, 1e-9);
}

// Both measurement orders, computed straight from the instance.
double sequential_success(const cheat::LisInstance &inst) {
    const ComplexVector &w = inst.omega.amplitudes();
    double pq = 0, qp = 0;
    for (std::size_t x = 0; x < 4; ++x) {
        pq += (qlin::tensor(inst.meas.m[x], inst.meas.q[x % 2] * inst.meas.p[x / 2]) * w).squaredNorm();
        qp += (qlin::tensor(inst.meas.m[x], inst.meas.p[x / 2] * inst.meas.q[x % 2]) * w).squaredNorm();
    }
    return 0.5 * (pq + qp);
}

// 6. Learning in sequence and its supporting inequalities.
void learning_in_sequence(Checks &c) {
    double worst_bound = 1, worst_dc = 1, worst_oracle = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        Rng rng = derive_stream(6006, i);
        const std::size_t da = 4 + 4 * (i % 2), db = 2 + 2 * (i % 3);
        const auto inst = cheat::random_lis_instance(da, db, rng, i % 4 == 0 ? 0.0 : 1.0 + static_cast<double>(i % 5));
        const auto r = cheat::lis_compose(inst.omega, inst.meas, inst.layout);
        worst_bound = std::min(worst_bound, r.success - r.bound);
        worst_dc = std::min({worst_dc, r.dc - r.dc_bound, r.cd - r.cd_bound});
        worst_oracle = std::max(worst_oracle, std::abs(r.success - sequential_success(inst)));
    }
    c.at_least("min success - a(2a-1)^2", worst_bound, -1e-10);
    c.at_least("min ||DC w||^2 - cos^2 t cos^2 (t + t')", worst_dc, -1e-10);
    c.near("max |success - direct|", worst_oracle, 0.0, 1e-10);
    c.note("min success - bound", worst_bound);

    Rng rng(6007);
    double worst_proj = 1, worst_tri = 1, worst_angle = 1;
    for (int i = 0; i < 1000; ++i) {
        const std::size_t d = 2 + static_cast<std::size_t>(i % 5);
        const ComplexMatrix q = qlin::random_projector(d, 1 + static_cast<std::size_t>(i) % (d - 1), rng);
        const ComplexVector y = (q * qlin::random_gaussian_vector(d, rng)).normalized();
        const ComplexVector x = qlin::random_state(d, rng).amplitudes();
        worst_proj = std::min(worst_proj, cheat::projection_gap(x, q, y));
    }
    const double max_angle = std::numbers::pi / 4;
    for (int tested = 0; tested < 1000;) {
        const std::size_t d = 2 + static_cast<std::size_t>(tested % 4);
        const double scale = 0.6 / std::sqrt(static_cast<double>(d));
        const ComplexVector psi = qlin::random_state(d, rng).amplitudes();
        const ComplexVector phi = (psi + scale * qlin::random_gaussian_vector(d, rng)).normalized();
        const ComplexVector xi = (phi + scale * qlin::random_gaussian_vector(d, rng)).normalized();
        if (std::abs(psi.dot(phi)) < std::cos(max_angle) || std::abs(phi.dot(xi)) < std::cos(max_angle)) continue;
        worst_tri = std::min(worst_tri, cheat::triangle_gap(psi, phi, xi));
        ++tested;
    }
    for (int i = 0; i < 200; ++i)
        for (int j = 0; j < 200; ++j)
            worst_angle = std::min(worst_angle, cheat::angle_sum_gap(max_angle * i / 199, max_angle * j / 199));
    c.at_least("projection claim", worst_proj, -1e-12);
    c.at_least("triangle claim", worst_tri, -1e-12);
    c.at_least("angle-sum claim", worst_angle, -1e-12);
}

// 7. Brute force <= SDP primal <= certified dual on the commitment coin flip.
void sdp_sandwich(Checks &c) {
    const auto &spec = cheat::named_spec("qutrit-commitment-cf");
    double values[2] = {0, 0};
    for (Party p : {Party::kAlice, Party::kBob}) {
        const std::string who = otcore::party_name(p);
        const std::string label = cheat::coin_target_label(spec, p, "0");
        const auto problem = sdp::build_cheating_sdp(spec, p, label);
        const auto sol = sdp::solve_sdp(problem, 1e-7);
        const auto cert = sdp::verify_dual_certificate(problem, sol);
        sdp::BruteForceOptions bo;
        bo.restarts = 5;
        bo.seed = 7007;
        const double bf = sdp::brute_force_cheat(spec, p, label, bo).value;
        c.truth(who + " certificate verifies", cert.pass);
        c.near(who + " sdp", sol.primal_value, 0.75, 2e-3);
        c.near(who + " dual", cert.dual_value, 0.75, 2e-3);
        c.near(who + " brute force", bf, 0.75, 2e-3);
        c.at_most(who + " brute force - dual", bf - cert.dual_value, 1e-6);
        values[p == Party::kAlice ? 0 : 1] = sol.primal_value;
    }
    const auto k = bounds::kitaev_product_check(values[0], values[1]);
    c.truth("kitaev product check", k.pass);
    c.near("kitaev margin", k.margin, 1.0 / 16.0, 2e-3);
}

// 8. Forcing-OT bounds against coin-flip biases, and sampled adversaries.
void fot_bounds(Checks &c) {
    for (double gamma : {1e-6, 0.01}) {
        const auto b = fot::fot_cheat_bounds(2, 1, fot::ideal_cf((1 + gamma) / std::sqrt(2.0)));
        c.near("B_max gamma=" + Checks::fmt(gamma), b.b_max, (1 + gamma) / std::sqrt(8.0), 1e-12);
    }
    double worst_bias = 0;
    for (std::size_t k = 1; k <= 6; ++k)
        for (std::size_t n = k; n <= 6; ++n) {
            const auto cmp = fot::fot_bound_vs_lower(n, k, fot::ideal_cf(1 / std::sqrt(2.0)));
            worst_bias = std::max(worst_bias, std::abs(cmp.bias - std::pow(std::sqrt(2.0), static_cast<double>(k))));
        }
    c.near("max |ideal bias - sqrt2^k|", worst_bias, 0.0, 1e-12);

    const std::uint64_t trials = 100000;
    struct Case {
        std::size_t n, k;
        fot::CfPrimitive cf;
        fot::FotAdversary adv;
    };
    std::vector<Case> cases = {
        {2, 1, fot::ideal_cf(1 / std::sqrt(2.0)), {Party::kAlice, {1}, {0}}},
        {2, 1, fot::ideal_cf(1 / std::sqrt(2.0)), {Party::kBob, {}, {1, 0}}},
        {3, 2, fot::ideal_cf(0.8), {Party::kAlice, {0, 2}, {1, 1}}},
        {3, 2, fot::ideal_cf(0.8), {Party::kBob, {1, 2}, {0, 1, 1}}},
        {2, 1, fot::commitment_cf(), {Party::kAlice, {0}, {1}}},
        {2, 1, fot::commitment_cf(), {Party::kBob, {}, {0, 1}}},
    };
    double worst_excess = -1;
    std::uint64_t seed = 8000;
    for (const auto &cs : cases) {
        const auto b = fot::fot_cheat_bounds(cs.n, cs.k, cs.cf);
        const double bound = cs.adv.party == Party::kAlice ? b.a_max : b.b_max;
        const auto est = fot::estimate_fot_cheat(cs.n, cs.k, cs.cf, cs.adv, trials, ++seed);
        const double sigma = std::sqrt(bound * (1 - bound) / static_cast<double>(trials));
        worst_excess = std::max(worst_excess, (est.rate - bound) / sigma);
    }
    c.at_most("max (rate - bound) / sigma", worst_excess, 3.0);
    c.note("max (rate - bound) / sigma", worst_excess);
}

// 9. OT from random OT: correctness and the simulation of wrapper adversaries.
void reductions(Checks &c) {
    std::size_t wrong = 0;
    for (std::size_t in = 0; in < 8; ++in)
        for (std::size_t rnd = 0; rnd < 8; ++rnd) {
            const std::size_t X0 = in >> 2, X1 = (in >> 1) & 1, B = in & 1;
            const auto inner = otcore::qutrit_ot_protocol(otcore::OtInputs{rnd & 1, rnd >> 2, (rnd >> 1) & 1});
            const auto run = otcore::run_exact(otcore::ot_from_random_ot_protocol(inner, X0, X1, B));
            for (const auto &[o, p] : run.distribution) {
                const auto out = otcore::to_ot_outcome(o);
                if (p > 1e-12 && (out.bob_aborted || out.y != (B == 0 ? X0 : X1))) ++wrong;
            }
        }
    c.truth("y' = X_B on all 64 cases", wrong == 0);

    const auto rot = otcore::qutrit_ot_protocol();
    const std::uint64_t trials = 100000;
    const std::vector<std::pair<cheat::Strategy, otcore::SuccessEvent>> advs = {
        {cheat::alice_basis_attack_through_ot_wrapper(), otcore::alice_guesses_b()},
        {cheat::bob_superposition_attack_through_ot_wrapper(), otcore::bob_guesses_pair()}};
    std::uint64_t seed = 9000;
    for (const auto &[s, event] : advs) {
        // Wrapper inputs (X0, X1, B) uniform: trials split evenly over the 8 choices.
        std::uint64_t succ = 0;
        for (std::size_t in = 0; in < 8; ++in) {
            const auto wrapper = otcore::ot_from_random_ot_protocol(rot, in >> 2, (in >> 1) & 1, in & 1);
            succ += otcore::estimate_success(wrapper, s.program, event, trials / 8, ++seed).successes;
        }
        const double outer = static_cast<double>(succ) / static_cast<double>(trials);
        const auto inner_adv = otcore::inner_adversary_for_ot_wrapper(rot, s.program);
        const auto inner = otcore::estimate_success(rot, inner_adv, event, trials, ++seed);
        const double sigma = std::sqrt(outer * (1 - outer) / trials + inner.rate * (1 - inner.rate) / trials);
        c.near(s.descriptor + " wrapper vs inner", outer - inner.rate, 0.0, 3 * sigma);
        c.note(s.descriptor + " wrapper", outer);
    }
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "qutrit OT honest correctness", 1, qutrit_ot_honest},
        {2, "cheating Alice in qutrit OT reaches 3/4", 1, alice_ot},
        {3, "cheating Bob in qutrit OT reaches 3/4", 10, bob_ot},
        {4, "purification reduction", 10, purification},
        {5, "general OT lower-bound endpoint", 1, ot_endpoint},
        {6, "learning-in-sequence suite", 60, learning_in_sequence},
        {7, "SDP sandwich on the commitment coin flip", 300, sdp_sandwich},
        {8, "forcing-OT bounds", 120, fot_bounds},
        {9, "reduction equivalences", 120, reductions},
    };
    int failed = 0;
    for (const auto &cr : criteria) {
        Checks checks;
        const auto start = std::chrono::steady_clock::now();
        try {
            cr.body(checks);
        } catch (const std::exception &e) {
            checks.truth(std::string("exception: ") + e.what(), false);
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        checks.at_most("runtime seconds", secs, cr.budget_seconds);
        const bool pass = checks.ok();
        failed += !pass;
        std::printf("%s criterion %d: %s [%.2f s / %.0f s] %s\n", pass ? "PASS" : "FAIL", cr.id, cr.name.c_str(), secs,
                    cr.budget_seconds, checks.summary().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
