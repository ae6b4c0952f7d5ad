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

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <thread>

#include "otlab/bounds/bounds.h"
#include "otlab/cheat/report.h"
#include "otlab/error.h"
#include "otlab/fot/fot.h"
#include "otlab/model/json.h"
#include "otlab/model/spec.h"
#include "otlab/otcore/executor.h"
#include "otlab/otcore/protocols.h"
#include "otlab/sdp/brute_force.h"
#include "otlab/sdp/certificate.h"
#include "otlab/sdp/cheating.h"
#include "otlab/sdp/json.h"
#include "otlab/sdp/solver.h"
#include "otlab/util/rng.h"

#ifndef OTLAB_DEFAULT_DATA_DIR
#define OTLAB_DEFAULT_DATA_DIR "data"
#endif

namespace otlab::cli {

namespace {

using nlohmann::json;
using otcore::Party;
using JointLabel = std::pair<std::string, std::string>;
using Counts = std::map<JointLabel, std::uint64_t>;

// Exact probabilities are sums of products of a few amplitudes.
constexpr double kExactTol = 1e-12;

bool is_named_protocol(const std::string &name) {
    const auto names = cheat::cheat_protocols();
    return std::find(names.begin(), names.end(), name) != names.end();
}

fot::CfPrimitive parse_cf(const std::string &text) {
    if (text == "qutrit-commitment-cf" || text == "commitment") return fot::commitment_cf();
    if (text.rfind("ideal:", 0) == 0) {
        double c = 0;
        try {
            std::size_t used = 0;
            c = std::stod(text.substr(6), &used);
            if (used != text.size() - 6) throw std::invalid_argument(text);
        } catch (const std::logic_error &) {
            throw ValidationError("--cf: cannot parse bias in '" + text + "'");
        }
        try {
            return fot::ideal_cf(c);
        } catch (const DomainError &e) {
            throw ValidationError(std::string("--cf: ") + e.what());
        }
    }
    throw ValidationError("--cf must be 'ideal:C' or 'qutrit-commitment-cf', got '" + text + "'");
}

// Runs `trials` samples, trial i on derive_stream(seed, i), spread over `jobs` threads.
Counts sample_counts(std::uint64_t trials, std::uint64_t seed, unsigned jobs,
                     const std::function<JointLabel(Rng &)> &sample) {
    jobs = std::max(1u, jobs);
    std::vector<Counts> per_job(jobs);
    auto worker = [&](unsigned j) {
        for (std::uint64_t i = j; i < trials; i += jobs) {
            Rng rng = derive_stream(seed, i);
            ++per_job[j][sample(rng)];
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker, j);
        for (auto &t : pool) t.join();
    }
    Counts out;
    for (const auto &c : per_job)
        for (const auto &[k, v] : c) out[k] += v;
    return out;
}

json exact_json(const std::map<JointLabel, double> &dist) {
    json rows = json::array();
    for (const auto &[key, p] : dist) rows.push_back({{"alice", key.first}, {"bob", key.second}, {"probability", p}});
    return {{"outcomes", rows}, {"tolerance", kExactTol}};
}

json sampled_json(const Counts &counts, std::uint64_t trials, std::uint64_t seed) {
    json rows = json::array();
    for (const auto &[key, c] : counts) {
        const double freq = static_cast<double>(c) / static_cast<double>(trials);
        rows.push_back({{"alice", key.first},
                        {"bob", key.second},
                        {"count", c},
                        {"frequency", freq},
                        {"std_error", std::sqrt(freq * (1 - freq) / static_cast<double>(trials))}});
    }
    return {{"trials", trials}, {"seed", seed}, {"outcomes", rows}};
}

json simulate_interactive(const std::string &name, const CommonOptions &opts) {
    const auto protocol = cheat::named_protocol(name);
    const auto run = otcore::run_exact(protocol);
    std::map<JointLabel, double> dist;
    for (const auto &[o, p] : run.distribution) dist[{o.alice, o.bob}] += p;
    json out = {{"protocol", name}, {"source", "builtin"}, {"exact", exact_json(dist)}};
    out["exact"]["alice_abort"] = run.alice_abort;
    out["exact"]["bob_abort"] = run.bob_abort;
    if (opts.trials > 0) {
        const auto counts = sample_counts(opts.trials, opts.seed, opts.jobs, [&protocol](Rng &rng) {
            const auto r = otcore::run_sampled(protocol, rng);
            return JointLabel{r.outcome.alice, r.outcome.bob};
        });
        out["sampled"] = sampled_json(counts, opts.trials, opts.seed);
    }
    return out;
}

json simulate_fot(const SimulateArgs &args, const CommonOptions &opts) {
    const auto cf = parse_cf(args.cf);
    if (args.k < 1 || args.k > args.n) throw ValidationError("need 1 <= k <= n");
    json out = {{"protocol", "fot"},
                {"n", args.n},
                {"k", args.k},
                {"cf", args.cf},
                {"exact", exact_json(fot::exact_honest_distribution(args.n, args.k, cf))}};
    out["exact"]["honest_joint"] = bounds::fot_lower(args.n, args.k).honest_joint;
    if (opts.trials > 0) {
        const auto counts = sample_counts(opts.trials, opts.seed, opts.jobs, [&](Rng &rng) {
            const auto r = fot::fot_run(args.n, args.k, cf, rng);
            return JointLabel{r.alice_label(), r.bob_label()};
        });
        out["sampled"] = sampled_json(counts, opts.trials, opts.seed);
    }
    return out;
}

model::ProtocolSpec load_spec_file(const std::string &path) {
    try {
        return model::load_spec(path);
    } catch (const Error &) {
        throw;
    } catch (const std::exception &e) {
        throw ValidationError("cannot read spec file '" + path + "': " + e.what());
    }
}

json simulate_spec(const std::string &path, const CommonOptions &opts) {
    const auto spec = load_spec_file(path);
    const auto structural = model::structural_violations(spec);
    if (!structural.empty()) throw ValidationError("invalid spec file '" + path + "': " + structural.front(), structural);
    const auto run = model::run_honest(spec);
    json out = {{"protocol", spec.name}, {"source", path}, {"exact", exact_json(run.distribution)}};
    out["fot_violations"] = model::validate(spec);
    if (opts.trials > 0) {
        std::vector<std::pair<JointLabel, double>> cells(run.distribution.begin(), run.distribution.end());
        const auto counts = sample_counts(opts.trials, opts.seed, opts.jobs, [&cells](Rng &rng) {
            double u = uniform01(rng);
            for (const auto &[key, p] : cells) {
                if (u < p) return key;
                u -= p;
            }
            return cells.back().first;
        });
        out["sampled"] = sampled_json(counts, opts.trials, opts.seed);
    }
    return out;
}

std::vector<std::size_t> parse_bit_string(const std::string &s, std::size_t len, const char *what) {
    if (s.size() != len || s.find_first_not_of("01") != std::string::npos)
        throw ValidationError(std::string(what) + " must be " + std::to_string(len) + " bits, got '" + s + "'");
    std::vector<std::size_t> out;
    for (char c : s) out.push_back(static_cast<std::size_t>(c - '0'));
    return out;
}

json cheat_fot(const CheatArgs &args, const CommonOptions &opts) {
    const auto cf = parse_cf(args.cf);
    const auto party = otcore::parse_party(args.party);
    if (args.k < 1 || args.k > args.n) throw ValidationError("need 1 <= k <= n");
    if (!args.attack.empty() && args.attack != "force-each-coin")
        throw PreconditionError("fot offers the attack 'force-each-coin' only, not '" + args.attack + "'");
    fot::FotAdversary adv;
    adv.party = party;
    std::string target = args.target;
    if (party == Party::kAlice) {
        if (target.empty()) {
            for (std::size_t i = 0; i < args.k; ++i) adv.target_b.push_back(i);
            adv.target_bits.assign(args.k, 0);
            target = otcore::bob_label(adv.target_b, adv.target_bits);
        } else {
            const auto label = otcore::parse_bob_label(target);
            if (!label) throw ValidationError("--target for cheating Alice must be a Bob label like 'b={0};xb=1'");
            adv.target_b = label->indices;
            adv.target_bits = label->bits;
        }
    } else {
        if (target.empty()) target = std::string(args.n, '0');
        adv.target_bits = parse_bit_string(target, args.n, "--target");
    }
    const std::uint64_t trials = opts.trials > 0 ? opts.trials : 10000;
    const auto est = fot::estimate_fot_cheat(args.n, args.k, cf, adv, trials, opts.seed, opts.jobs);
    const auto b = fot::fot_cheat_bounds(args.n, args.k, cf);
    const double upper = party == Party::kAlice ? b.a_max : b.b_max;
    return {{"protocol", "fot"},
            {"n", args.n},
            {"k", args.k},
            {"cf", args.cf},
            {"party", otcore::party_name(party)},
            {"target", target},
            {"seed", opts.seed},
            {"lower_bound",
             {{"value", est.rate},
              {"strategy", "force-each-coin"},
              {"tolerance", est.std_error},
              {"estimate",
               {{"trials", est.trials},
                {"successes", est.successes},
                {"rate", est.rate},
                {"std_error", est.std_error},
                {"honest_aborts", est.honest_aborts},
                {"abort_rate", est.abort_rate}}}}},
            {"upper_bound",
             {{"value", upper}, {"method", "per-coin forcing bounds composed over k coins"}, {"tolerance", 1e-15}}},
            {"bounds", to_json(fot::fot_bound_vs_lower(args.n, args.k, cf))}};
}

double require_arg(const std::optional<double> &v, const char *flag, const std::string &name) {
    if (!v) throw ValidationError("bound " + name + " needs " + flag);
    return *v;
}

std::size_t require_arg(const std::optional<std::size_t> &v, const char *flag, const std::string &name) {
    if (!v) throw ValidationError("bound " + name + " needs " + flag);
    return *v;
}

template <class F>
auto domain_checked(F f) {
    try {
        return f();
    } catch (const DomainError &e) {
        throw ValidationError(e.what());
    }
}

model::ProtocolSpec resolve_spec(const std::string &spec) {
    namespace fs = std::filesystem;
    if (fs::is_regular_file(spec)) return load_spec_file(spec);
    for (const auto &candidate : {fs::path(data_dir()) / spec, fs::path(data_dir()) / (spec + ".json")})
        if (fs::is_regular_file(candidate)) return load_spec_file(candidate.string());
    throw ValidationError("no spec file '" + spec + "' (also looked in " + data_dir() + ")");
}

}  // namespace

std::string data_dir() {
    if (const char *env = std::getenv("OTLAB_DATA_DIR"); env && *env) return env;
    return OTLAB_DEFAULT_DATA_DIR;
}

json cmd_simulate(const SimulateArgs &args, const CommonOptions &opts) {
    if (args.protocol == "fot") return simulate_fot(args, opts);
    if (is_named_protocol(args.protocol)) return simulate_interactive(args.protocol, opts);
    if (std::filesystem::exists(args.protocol)) return simulate_spec(args.protocol, opts);
    throw ValidationError("unknown protocol '" + args.protocol + "' and no such spec file");
}

json cmd_cheat(const CheatArgs &args, const CommonOptions &opts) {
    if (args.protocol == "fot") return cheat_fot(args, opts);
    cheat::CheatRequest req;
    req.protocol = args.protocol;
    req.party = otcore::parse_party(args.party);
    req.attack = args.attack;
    req.target = args.target.empty() ? "0" : args.target;
    req.seed = opts.seed;
    req.trials = opts.trials;
    req.jobs = opts.jobs;
    req.tol = opts.tol;
    req.oracle = opts.oracle;
    return cheat::to_json(cheat::run_cheat(req));
}

json cmd_bound(const BoundArgs &args, const CommonOptions &) {
    const std::string &name = args.name;
    bounds::BoundSet set;
    json out = {{"bound", name}};
    if (name == "ot-lower") {
        const double closed = bounds::ot_lower_bound_epsilon();
        const double bis = bounds::ot_lower_bound_epsilon_by_bisection();
        set.epsilon = closed;
        out["epsilon"] = closed;
        out["oracle"] = {{"method", "bisection on x f(x) = 1/2"}, {"epsilon", bis}, {"difference", std::abs(closed - bis)}};
        out["tolerance"] = 1e-9;
    } else if (name == "f") {
        const double z = require_arg(args.z, "--z", name);
        const double v = domain_checked([z] { return bounds::f(z); });
        set.b_ot = z;
        set.b_cf = v;
        out["z"] = z;
        out["f"] = v;
        out["oracle"] = {{"method", "bisection on g"},
                         {"f", bounds::f_by_bisection(z)},
                         {"difference", std::abs(v - bounds::f_by_bisection(z))}};
        out["g_of_f"] = bounds::g(v);
        out["tolerance"] = 1e-9;
    } else if (name == "g") {
        const double x = require_arg(args.x, "--x", name);
        out["x"] = x;
        out["g"] = domain_checked([x] { return bounds::g(x); });
        out["tolerance"] = 1e-15;
    } else if (name == "kitaev-product") {
        const double a = require_arg(args.a, "--a", name);
        const double b = require_arg(args.b, "--b", name);
        const auto check = bounds::kitaev_product_check(a, b);
        set.a_cf = a;
        set.b_cf = b;
        out["product"] = check.product;
        out["margin"] = check.margin;
        out["pass"] = check.pass;
        out["tolerance"] = 1e-9;
    } else if (name == "fot-lower") {
        const auto n = require_arg(args.n, "--n", name), k = require_arg(args.k, "--k", name);
        const auto l = domain_checked([n, k] { return bounds::fot_lower(n, k); });
        set.n = n;
        set.k = k;
        out["honest_joint"] = l.honest_joint;
        out["min_forcing_bias"] = l.min_forcing_bias;
        out["tolerance"] = 1e-15;
    } else if (name == "fot-upper") {
        const auto n = require_arg(args.n, "--n", name), k = require_arg(args.k, "--k", name);
        const double gamma = require_arg(args.gamma, "--gamma", name);
        const auto u = domain_checked([n, k, gamma] { return bounds::fot_upper(n, k, gamma); });
        set.n = n;
        set.k = k;
        set.gamma = gamma;
        set.delta = u.required_delta;
        set.a_cf = set.b_cf = 1 / std::sqrt(2.0) + u.required_delta / 2;
        out["a_bound"] = u.a_bound;
        out["b_bound"] = u.b_bound;
        out["required_delta"] = u.required_delta;
        out["oracle"] = {{"method", "closed form for delta"},
                         {"required_delta", 2 * (std::pow(1 + gamma, 1.0 / static_cast<double>(k)) - 1) / std::sqrt(2.0)}};
        out["tolerance"] = 1e-12;
    } else {
        throw ValidationError("unknown bound '" + name + "' (ot-lower, f, g, kitaev-product, fot-lower, fot-upper)");
    }
    out["bound_set"] = bounds::to_json(set);
    return out;
}

json cmd_sdp(const SdpArgs &args, const CommonOptions &opts) {
    const auto spec = resolve_spec(args.spec);
    const auto structural = model::structural_violations(spec);
    if (!structural.empty()) throw ValidationError("invalid spec: " + structural.front(), structural);
    std::vector<Party> parties;
    if (args.party == "both") {
        parties = {Party::kAlice, Party::kBob};
    } else {
        parties = {otcore::parse_party(args.party)};
    }
    json out = {{"spec", spec.name}, {"target", args.target}, {"solutions", json::array()}};
    json certificates = json::object();
    std::map<Party, double> values;
    for (Party p : parties) {
        const std::string label = cheat::coin_target_label(spec, p, args.target);
        const auto problem = sdp::build_cheating_sdp(spec, p, label);
        sdp::SolverOptions so;
        so.tol = opts.tol;
        const auto sol = sdp::solve_sdp(problem, so);
        const auto check = sdp::verify_dual_certificate(problem, sol);
        json entry = {{"party", otcore::party_name(p)},
                      {"target_label", label},
                      {"value", sol.primal_value},
                      {"dual_value", sol.dual_value},
                      {"tolerance", opts.tol},
                      {"iterations", sol.iterations},
                      {"residuals", {{"primal", sol.residuals.primal}, {"dual", sol.residuals.dual}, {"gap", sol.residuals.gap}}},
                      {"certificate", sdp::to_json(check)}};
        if (opts.oracle) {
            sdp::BruteForceOptions bo;
            bo.restarts = args.oracle_restarts;
            bo.seed = opts.seed;
            const auto bf = sdp::brute_force_cheat(spec, p, label, bo);
            entry["oracle"] = {{"method", "gradient ascent over cheating unitaries"},
                               {"value", bf.value},
                               {"restarts", bo.restarts},
                               {"workspace_dim", bf.workspace_dim},
                               {"difference", std::abs(bf.value - sol.primal_value)}};
        }
        if (!args.certificate_out.empty()) certificates[otcore::party_name(p)] = sdp::certificate_to_json(problem, sol);
        values[p] = sol.primal_value;
        out["solutions"].push_back(entry);
    }
    if (values.size() == 2) {
        const auto k = bounds::kitaev_product_check(values[Party::kAlice], values[Party::kBob]);
        out["kitaev"] = {{"product", k.product}, {"margin", k.margin}, {"pass", k.pass}, {"tolerance", 1e-9}};
    }
    if (!args.certificate_out.empty()) {
        std::ofstream f(args.certificate_out);
        if (!f) throw ValidationError("cannot write certificate to '" + args.certificate_out + "'");
        f << certificates.dump() << '\n';
        out["certificate_file"] = args.certificate_out;
    }
    return out;
}

json cmd_export_specs(const std::string &out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw ValidationError("cannot create '" + out_dir + "': " + ec.message());
    json written = json::array();
    for (const auto &name : cheat::cheat_protocols()) {
        const auto path = (fs::path(out_dir) / (name + ".json")).string();
        model::save_spec(cheat::named_spec(name), path, true);
        written.push_back(path);
    }
    return {{"written", written}};
}

}  // namespace otlab::cli
