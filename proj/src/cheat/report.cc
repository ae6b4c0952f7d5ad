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

#include "otlab/cheat/report.h"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>

#include "otlab/cheat/attacks.h"
#include "otlab/cheat/discrimination.h"
#include "otlab/error.h"
#include "otlab/model/compile.h"
#include "otlab/model/json.h"
#include "otlab/otcore/executor.h"
#include "otlab/otcore/protocols.h"
#include "otlab/sdp/brute_force.h"
#include "otlab/sdp/certificate.h"
#include "otlab/sdp/cheating.h"
#include "otlab/sdp/json.h"
#include "otlab/sdp/solver.h"

namespace otlab::cheat {

using otcore::Party;

namespace {

// Rounding error of an exact state-vector value.
constexpr double kExactTol = 1e-12;

const std::vector<std::string> &protocol_names() {
    static const std::vector<std::string> names = {"qutrit-ot", "cf-from-ot", "qutrit-commitment-cf", "announce-coin"};
    return names;
}

void require_protocol(const std::string &name) {
    const auto &names = protocol_names();
    if (std::find(names.begin(), names.end(), name) == names.end())
        throw PreconditionError("unknown protocol '" + name + "'");
}

std::size_t parse_coin(const std::string &target) {
    if (target == "0") return 0;
    if (target == "1") return 1;
    throw PreconditionError("target coin must be 0 or 1, got '" + target + "'");
}

nlohmann::json matrices_to_json(const std::vector<qlin::ComplexMatrix> &ms) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto &m : ms) out.push_back(model::matrix_to_json(m));
    return out;
}

// Exact value of a scripted strategy plus the optional sampled estimate.
LowerBound scripted_lower_bound(const otcore::InteractiveProtocol &protocol, const Strategy &s,
                                const CheatRequest &req) {
    LowerBound lb;
    lb.strategy = s.descriptor;
    lb.value = exact_value(protocol, s);
    lb.tolerance = kExactTol;
    const auto run = otcore::run_exact(protocol, &s.program);
    lb.detail["event"] = s.target_event;
    lb.detail["honest_abort_probability"] = s.party == Party::kAlice ? run.bob_abort : run.alice_abort;
    if (req.trials > 0) lb.estimate = otcore::estimate_success(protocol, s.program, s.event, req.trials, req.seed, req.jobs);
    return lb;
}

UpperBound sdp_upper_bound(const sdp::SdpProblem &problem, const sdp::SdpSolution &solution) {
    UpperBound ub;
    ub.method = "sdp-dual";
    ub.value = solution.dual_value;
    ub.tolerance = sdp::kCertificateTol;
    const auto check = sdp::verify_dual_certificate(problem, solution);
    ub.certificate["check"] = sdp::to_json(check);
    ub.certificate["dual"] = matrices_to_json(solution.dual);
    ub.certificate["residuals"] = {{"primal", solution.residuals.primal},
                                   {"dual", solution.residuals.dual},
                                   {"gap", solution.residuals.gap}};
    ub.certificate["iterations"] = solution.iterations;
    return ub;
}

CheatReport sdp_report(const std::string &protocol, const CheatRequest &req, const std::string &label) {
    const auto &spec = named_spec(protocol);
    const auto problem = sdp::build_cheating_sdp(spec, req.party, label);
    const auto solution = sdp::solve_sdp(problem, req.tol);
    CheatReport r;
    r.lower_bound.strategy = "sdp-primal";
    r.lower_bound.value = solution.primal_value;
    r.lower_bound.tolerance = std::max(req.tol, solution.residuals.primal);
    r.lower_bound.detail["n_convention"] = problem.metadata.n_convention;
    r.lower_bound.detail["rounds"] = problem.metadata.n_constraints_rounds;
    if (req.oracle) {
        sdp::BruteForceOptions o;
        o.seed = req.seed;
        o.restarts = 5;
        const auto bf = sdp::brute_force_cheat(spec, req.party, label, o);
        r.lower_bound.detail["oracle"] = {{"method", "brute-force"},
                                          {"value", bf.value},
                                          {"restarts", o.restarts},
                                          {"workspace_dim", bf.workspace_dim}};
    }
    r.upper_bound = sdp_upper_bound(problem, solution);
    return r;
}

// SDP bound for a scripted coin-flipping attack.
void attach_sdp_upper(CheatReport &r, const std::string &protocol, const CheatRequest &req, const std::string &label) {
    const auto &spec = named_spec(protocol);
    const auto problem = sdp::build_cheating_sdp(spec, req.party, label);
    r.upper_bound = sdp_upper_bound(problem, sdp::solve_sdp(problem, req.tol));
}

}  // namespace

nlohmann::json to_json(const CheatReport &report) {
    nlohmann::json j;
    j["protocol"] = report.protocol;
    j["party"] = report.party;
    j["target"] = report.target;
    j["lower_bound"] = {{"value", report.lower_bound.value},
                        {"strategy", report.lower_bound.strategy},
                        {"tolerance", report.lower_bound.tolerance},
                        {"detail", report.lower_bound.detail}};
    if (report.lower_bound.estimate) {
        const auto &e = *report.lower_bound.estimate;
        j["lower_bound"]["estimate"] = {{"trials", e.trials},           {"successes", e.successes},
                                        {"rate", e.rate},               {"std_error", e.std_error},
                                        {"honest_aborts", e.honest_aborts}, {"seed", e.seed}};
    }
    if (report.upper_bound) {
        j["upper_bound"] = {{"value", report.upper_bound->value},
                            {"method", report.upper_bound->method},
                            {"tolerance", report.upper_bound->tolerance},
                            {"certificate", report.upper_bound->certificate}};
    } else {
        j["upper_bound"] = nullptr;
    }
    j["seed"] = report.seed;
    return j;
}

std::vector<std::string> cheat_protocols() { return protocol_names(); }

std::vector<std::string> available_attacks(const std::string &protocol, Party party) {
    require_protocol(protocol);
    const bool alice = party == Party::kAlice;
    if (protocol == "qutrit-ot") return alice ? std::vector<std::string>{"basis"} : std::vector<std::string>{"superposition", "parity"};
    if (protocol == "cf-from-ot") return alice ? std::vector<std::string>{"basis", "optimal"} : std::vector<std::string>{"optimal"};
    if (protocol == "qutrit-commitment-cf")
        return alice ? std::vector<std::string>{"biased-commitment", "optimal"}
                     : std::vector<std::string>{"read-commitment", "optimal"};
    return {"optimal"};
}

otcore::InteractiveProtocol named_protocol(const std::string &name) {
    require_protocol(name);
    if (name == "qutrit-ot") return otcore::qutrit_ot_protocol();
    if (name == "cf-from-ot") return otcore::cf_from_ot_protocol(otcore::qutrit_ot_protocol());
    if (name == "qutrit-commitment-cf") return otcore::qutrit_commitment_cf_protocol();
    return otcore::announce_coin_protocol();
}

const model::ProtocolSpec &named_spec(const std::string &name) {
    require_protocol(name);
    static std::mutex mu;
    static std::map<std::string, std::unique_ptr<model::ProtocolSpec>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto &slot = cache[name];
    if (!slot) {
        slot = std::make_unique<model::ProtocolSpec>(model::compile_with_deferred_measurement(named_protocol(name)));
        slot->name = name;
    }
    return *slot;
}

std::string coin_target_label(const model::ProtocolSpec &spec, Party cheater, const std::string &target) {
    if (spec.n != 1 || spec.k != 1 || (target != "0" && target != "1")) return target;
    return cheater == Party::kBob ? target : "b={0};xb=" + target;
}

CheatReport run_cheat(const CheatRequest &req) {
    const auto attacks = available_attacks(req.protocol, req.party);
    const std::string attack = req.attack.empty() ? attacks.front() : req.attack;
    if (std::find(attacks.begin(), attacks.end(), attack) == attacks.end())
        throw PreconditionError("attack '" + attack + "' is not available for " + otcore::party_name(req.party) +
                                " in " + req.protocol);

    CheatReport r;
    if (req.protocol == "qutrit-ot") {
        const auto protocol = named_protocol(req.protocol);
        if (attack == "basis") {
            const auto s = alice_basis_attack();
            r.lower_bound = scripted_lower_bound(protocol, s, req);
            r.target = s.target_event;
            // Alice receives the second half of (|bb> + |22>)/sqrt2.
            std::array<qlin::DensityMatrix, 2> sigma = {
                qlin::DensityMatrix::from_pure(qlin::PureState::basis(1, 0)),
                qlin::DensityMatrix::from_pure(qlin::PureState::basis(1, 0))};
            const qlin::SubsystemLayout rq({3, 3});
            const std::size_t keep[1] = {1};
            for (std::size_t b = 0; b < 2; ++b) {
                const auto pair = qlin::DensityMatrix::from_pure(qlin::PureState::from_amplitudes(otcore::qutrit_pair_state(b)));
                sigma[b] = qlin::partial_trace(pair, rq, keep);
            }
            const auto h = helstrom(sigma[0], sigma[1]);
            UpperBound ub;
            ub.method = "helstrom";
            ub.value = h.probability;
            ub.tolerance = kExactTol;
            ub.certificate["states"] = matrices_to_json({sigma[0].matrix(), sigma[1].matrix()});
            ub.certificate["measurement"] = matrices_to_json({h.measurement[0], h.measurement[1]});
            r.upper_bound = ub;
        } else if (attack == "superposition") {
            const auto s = bob_superposition_attack();
            r.lower_bound = scripted_lower_bound(protocol, s, req);
            r.target = s.target_event;
            const qlin::ComplexVector alpha = otcore::uniform_amplitudes(3);
            std::vector<qlin::PureState> states;
            for (std::size_t x = 0; x < 4; ++x) states.push_back(qlin::PureState::from_amplitudes(phased_state(alpha, x / 2, x % 2)));
            const std::vector<double> priors(4, 0.25);
            const auto disc = optimal_discrimination(states, priors);
            UpperBound ub;
            ub.method = "nayak";
            ub.value = nayak_bound(3, 4);
            ub.tolerance = 0;
            ub.certificate["message_dim"] = 3;
            ub.certificate["values"] = 4;
            ub.certificate["sent_state_optimum"] = {{"probability", disc.probability},
                                                    {"dual_value", disc.upper_bound},
                                                    {"povm", matrices_to_json(disc.povm)}};
            r.upper_bound = ub;
        } else {
            const auto s = bob_parity_attack();
            r.lower_bound = scripted_lower_bound(protocol, s, req);
            r.target = s.target_event;
        }
    } else {
        const auto &spec = named_spec(req.protocol);
        const std::string label = coin_target_label(spec, req.party, req.target);
        if (attack == "optimal") {
            r = sdp_report(req.protocol, req, label);
        } else {
            const std::size_t coin = parse_coin(req.target);
            const auto protocol = named_protocol(req.protocol);
            Strategy s;
            if (attack == "basis") s = alice_basis_attack_through_cf(coin);
            else if (attack == "read-commitment") s = commitment_cf_bob_attack(coin);
            else s = commitment_cf_alice_attack(coin);
            r.lower_bound = scripted_lower_bound(protocol, s, req);
            attach_sdp_upper(r, req.protocol, req, label);
        }
        r.target = label;
    }
    r.protocol = req.protocol;
    r.party = otcore::party_name(req.party);
    r.seed = req.seed;
    return r;
}

}  // namespace otlab::cheat
