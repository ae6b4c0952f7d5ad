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

#include "otlab/fot/fot.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <thread>

#include "otlab/bounds/bounds.h"
#include "otlab/error.h"
#include "otlab/model/spec.h"
#include "otlab/otcore/executor.h"
#include "otlab/otcore/protocols.h"

namespace otlab::fot {

namespace {

std::size_t pi(Party p) { return p == Party::kAlice ? 0 : 1; }

void require_nk(std::size_t n, std::size_t k) {
    if (k < 1 || k > n) throw DomainError("need 1 <= k <= n, got n = " + std::to_string(n) + ", k = " + std::to_string(k));
}

void require_primitive(const CfPrimitive &cf) {
    const auto v = primitive_violations(cf);
    if (!v.empty()) throw ValidationError("invalid coin-flipping primitive: " + v.front(), v);
}

bool valid_subset(const std::vector<std::size_t> &b, std::size_t n, std::size_t k) {
    if (b.size() != k) return false;
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i] >= n || (i > 0 && b[i] <= b[i - 1])) return false;
    return true;
}

bool valid_bits(const std::vector<std::size_t> &bits, std::size_t len) {
    return bits.size() == len && std::all_of(bits.begin(), bits.end(), [](std::size_t v) { return v < 2; });
}

void require_adversary(const FotAdversary &adv, std::size_t n, std::size_t k) {
    if (adv.party == Party::kAlice) {
        if (!valid_subset(adv.target_b, n, k) || !valid_bits(adv.target_bits, k))
            throw ValidationError("cheating Alice needs a sorted k-subset and k target bits");
    } else {
        if ((!adv.target_b.empty() && !valid_subset(adv.target_b, n, k)) || !valid_bits(adv.target_bits, n))
            throw ValidationError("cheating Bob needs n target bits and an optional sorted k-subset");
    }
}

std::vector<std::size_t> sample_subset(std::size_t n, std::size_t k, Rng &rng) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(perm[i], perm[pick(rng)]);
    }
    std::vector<std::size_t> b(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(k));
    std::sort(b.begin(), b.end());
    return b;
}

CoinRecord flip(const CfPrimitive &cf, std::size_t index, Rng &rng, std::optional<Party> cheater,
                std::optional<std::size_t> target) {
    CoinRecord rec;
    rec.index = index;
    rec.target = cheater ? target : std::nullopt;
    if (cf.kind == CfPrimitive::Kind::kIdeal) {
        std::size_t v;
        if (cheater) {
            v = uniform01(rng) < cf.max_cheat[pi(*cheater)][*target] ? *target : 1 - *target;
        } else {
            v = random_bit(rng);
        }
        rec.alice_coin = rec.bob_coin = v;
        return rec;
    }
    otcore::SampledRun run;
    if (cheater) {
        const auto s = cf.attack(*cheater, *target);
        run = otcore::run_sampled(*cf.protocol, rng, &s.program, true);
    } else {
        run = otcore::run_sampled(*cf.protocol, rng, nullptr, true);
    }
    const auto coins = otcore::to_cf_outcome(run.outcome);
    if (!run.alice_aborted) rec.alice_coin = coins.alice_coin;
    if (!run.bob_aborted) rec.bob_coin = coins.bob_coin;
    // A cheater's own output is not meaningful; it adopts the honest party's coin.
    if (cheater == Party::kAlice) rec.alice_coin = rec.bob_coin;
    if (cheater == Party::kBob) rec.bob_coin = rec.alice_coin;
    for (const auto &t : run.transcript) rec.transcript.emplace_back(t.actor, t.message);
    return rec;
}

}  // namespace

double CfPrimitive::c(Party party) const {
    return std::max(max_cheat[pi(party)][0], max_cheat[pi(party)][1]);
}

CfPrimitive ideal_cf(double c) {
    if (!(c >= 0.5 && c <= 1.0)) throw DomainError("coin-flipping bias c must lie in [1/2, 1], got " + std::to_string(c));
    CfPrimitive cf;
    cf.kind = CfPrimitive::Kind::kIdeal;
    cf.name = "ideal:" + std::to_string(c);
    for (auto &row : cf.max_cheat) row = {c, c};
    return cf;
}

CfPrimitive commitment_cf() {
    CfPrimitive cf;
    cf.kind = CfPrimitive::Kind::kSimulated;
    cf.name = "qutrit-commitment-cf";
    for (auto &row : cf.max_cheat) row = {0.75, 0.75};
    cf.protocol = otcore::qutrit_commitment_cf_protocol();
    cf.attack = [](Party p, std::size_t coin) {
        return p == Party::kAlice ? cheat::commitment_cf_alice_attack(coin) : cheat::commitment_cf_bob_attack(coin);
    };
    return cf;
}

std::vector<std::string> primitive_violations(const CfPrimitive &cf) {
    std::vector<std::string> out;
    for (std::size_t p = 0; p < 2; ++p)
        for (std::size_t v = 0; v < 2; ++v) {
            const double c = cf.max_cheat[p][v];
            if (!(c >= 0.5 && c <= 1.0))
                out.push_back(std::string(p == 0 ? "alice" : "bob") + " forcing " + std::to_string(v) + ": c = " +
                              std::to_string(c) + " outside [1/2, 1]");
        }
    if (cf.kind == CfPrimitive::Kind::kSimulated) {
        if (!cf.protocol) out.push_back("simulated primitive without a protocol");
        if (!cf.attack) out.push_back("simulated primitive without attacks");
    }
    return out;
}

std::string FotRun::alice_label() const { return alice_aborted || bob_aborted ? otcore::kAbort : otcore::bits_label(x); }

std::string FotRun::bob_label() const { return alice_aborted || bob_aborted ? otcore::kAbort : otcore::bob_label(b, x_b); }

FotRun fot_run(std::size_t n, std::size_t k, const CfPrimitive &cf, Rng &rng, const FotAdversary *adversary) {
    require_nk(n, k);
    require_primitive(cf);
    if (adversary) require_adversary(*adversary, n, k);
    const std::optional<Party> cheater = adversary ? std::optional<Party>(adversary->party) : std::nullopt;

    FotRun run;
    // Step 1: Bob's index set.
    if (cheater == Party::kBob) {
        run.b = adversary->target_b;
        if (run.b.empty()) {
            run.b.resize(k);
            std::iota(run.b.begin(), run.b.end(), 0);
        }
    } else {
        run.b = sample_subset(n, k, rng);
    }

    // Step 2: one coin flip per index of b, each on its own stream.
    const std::uint64_t coin_seed = rng();
    run.x.assign(n, 0);
    for (std::size_t i = 0; i < k; ++i) {
        Rng coin_rng = derive_stream(coin_seed, i);
        std::optional<std::size_t> target;
        if (cheater == Party::kAlice) target = adversary->target_bits[i];
        if (cheater == Party::kBob) target = adversary->target_bits[run.b[i]];
        auto rec = flip(cf, run.b[i], coin_rng, cheater, target);
        const bool alice_ok = rec.alice_coin.has_value(), bob_ok = rec.bob_coin.has_value();
        run.coins.push_back(std::move(rec));
        if (!alice_ok || !bob_ok) {
            run.alice_aborted = !alice_ok;
            run.bob_aborted = !bob_ok;
            return run;
        }
        run.x[run.b[i]] = *run.coins.back().alice_coin;
        run.x_b.push_back(*run.coins.back().bob_coin);
    }

    // Step 3: Alice's remaining bits.
    for (std::size_t j = 0; j < n; ++j)
        if (!std::binary_search(run.b.begin(), run.b.end(), j)) run.x[j] = random_bit(rng);
    return run;
}

bool adversary_succeeded(const FotRun &run, const FotAdversary &adversary) {
    if (adversary.party == Party::kAlice)
        return !run.bob_aborted && run.b == adversary.target_b && run.x_b == adversary.target_bits;
    return !run.alice_aborted && run.x == adversary.target_bits;
}

std::map<std::pair<std::string, std::string>, double> exact_honest_distribution(std::size_t n, std::size_t k,
                                                                                 const CfPrimitive &cf) {
    require_nk(n, k);
    require_primitive(cf);
    // Per-coin joint distribution of (alice coin, bob coin); 2 encodes an abort.
    std::map<std::pair<std::size_t, std::size_t>, double> coin;
    if (cf.kind == CfPrimitive::Kind::kIdeal) {
        coin[{0, 0}] = coin[{1, 1}] = 0.5;
    } else {
        for (const auto &[o, p] : otcore::run_exact(*cf.protocol).distribution) {
            const auto c = otcore::to_cf_outcome(o);
            coin[{c.alice_coin.value_or(2), c.bob_coin.value_or(2)}] += p;
        }
    }

    std::map<std::pair<std::string, std::string>, double> out;
    const double subset_p = 1.0 / static_cast<double>(model::binomial(n, k));
    std::vector<bool> mask(n, false);
    std::fill(mask.begin(), mask.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
        std::vector<std::size_t> b;
        for (std::size_t i = 0; i < n; ++i)
            if (mask[i]) b.push_back(i);
        struct Partial {
            double p;
            std::vector<std::size_t> alice, bob;
            bool aborted;
        };
        std::vector<Partial> partial = {{subset_p, {}, {}, false}};
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<Partial> next;
            for (const auto &part : partial) {
                if (part.aborted) {
                    next.push_back(part);
                    continue;
                }
                for (const auto &[cv, p] : coin) {
                    Partial q = part;
                    q.p *= p;
                    q.aborted = cv.first == 2 || cv.second == 2;
                    q.alice.push_back(cv.first);
                    q.bob.push_back(cv.second);
                    next.push_back(std::move(q));
                }
            }
            partial = std::move(next);
        }
        for (const auto &part : partial) {
            if (part.aborted) {
                out[{otcore::kAbort, otcore::kAbort}] += part.p;
                continue;
            }
            const std::size_t free_bits = n - k;
            const double each = part.p / std::ldexp(1.0, static_cast<int>(free_bits));
            for (std::size_t mask_free = 0; mask_free < (std::size_t{1} << free_bits); ++mask_free) {
                std::vector<std::size_t> x(n, 0);
                std::size_t f = 0, c = 0;
                for (std::size_t j = 0; j < n; ++j) {
                    if (mask[j]) x[j] = part.alice[c++];
                    else x[j] = (mask_free >> (free_bits - 1 - f++)) & 1;
                }
                out[{otcore::bits_label(x), otcore::bob_label(b, part.bob)}] += each;
            }
        }
    } while (std::prev_permutation(mask.begin(), mask.end()));
    return out;
}

CheatBounds fot_cheat_bounds(std::size_t n, std::size_t k, const CfPrimitive &cf) {
    require_nk(n, k);
    const double kd = static_cast<double>(k);
    CheatBounds out;
    out.a_max = std::pow(cf.c(Party::kAlice), kd) / static_cast<double>(model::binomial(n, k));
    out.b_max = std::pow(cf.c(Party::kBob), kd) / std::ldexp(1.0, static_cast<int>(n - k));
    return out;
}

BoundComparison fot_bound_vs_lower(std::size_t n, std::size_t k, const CfPrimitive &cf) {
    BoundComparison out;
    out.bounds = fot_cheat_bounds(n, k, cf);
    out.product = out.bounds.a_max * out.bounds.b_max;
    const auto lower = bounds::fot_lower(n, k);
    out.floor = lower.honest_joint;
    out.bias_a = out.bounds.a_max * static_cast<double>(model::binomial(n, k)) * std::ldexp(1.0, static_cast<int>(k));
    out.bias_b = out.bounds.b_max * std::ldexp(1.0, static_cast<int>(n));
    out.bias = std::max(out.bias_a, out.bias_b);
    out.optimal_bias = lower.min_forcing_bias;
    return out;
}

otcore::MonteCarloEstimate estimate_fot_cheat(std::size_t n, std::size_t k, const CfPrimitive &cf,
                                              const FotAdversary &adversary, std::uint64_t trials,
                                              std::uint64_t seed, unsigned jobs) {
    require_nk(n, k);
    require_primitive(cf);
    require_adversary(adversary, n, k);
    jobs = std::max(1u, jobs);
    std::vector<std::uint64_t> succ(jobs, 0), aborts(jobs, 0);
    auto worker = [&](unsigned j) {
        for (std::uint64_t i = j; i < trials; i += jobs) {
            Rng rng = derive_stream(seed, i);
            const auto run = fot_run(n, k, cf, rng, &adversary);
            succ[j] += adversary_succeeded(run, adversary);
            aborts[j] += adversary.party == Party::kAlice ? run.bob_aborted : run.alice_aborted;
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker, j);
        for (auto &t : pool) t.join();
    }
    otcore::MonteCarloEstimate e;
    e.seed = seed;
    e.trials = trials;
    for (unsigned j = 0; j < jobs; ++j) {
        e.successes += succ[j];
        e.honest_aborts += aborts[j];
    }
    if (trials > 0) {
        e.rate = static_cast<double>(e.successes) / static_cast<double>(trials);
        e.abort_rate = static_cast<double>(e.honest_aborts) / static_cast<double>(trials);
        e.std_error = std::sqrt(e.rate * (1 - e.rate) / static_cast<double>(trials));
    }
    return e;
}

nlohmann::json to_json(const FotRun &run) {
    nlohmann::json coins = nlohmann::json::array();
    for (const auto &c : run.coins) {
        nlohmann::json transcript = nlohmann::json::array();
        for (const auto &[actor, msg] : c.transcript)
            transcript.push_back({{"actor", otcore::party_name(actor)}, {"message", msg}});
        coins.push_back({{"index", c.index},
                         {"alice_coin", c.alice_coin ? nlohmann::json(*c.alice_coin) : nlohmann::json(nullptr)},
                         {"bob_coin", c.bob_coin ? nlohmann::json(*c.bob_coin) : nlohmann::json(nullptr)},
                         {"target", c.target ? nlohmann::json(*c.target) : nlohmann::json(nullptr)},
                         {"transcript", transcript}});
    }
    return {{"b", run.b},
            {"x_b", run.x_b},
            {"x", run.x},
            {"alice_output", run.alice_label()},
            {"bob_output", run.bob_label()},
            {"alice_aborted", run.alice_aborted},
            {"bob_aborted", run.bob_aborted},
            {"coins", coins}};
}

nlohmann::json to_json(const BoundComparison &cmp) {
    return {{"A_max", cmp.bounds.a_max}, {"B_max", cmp.bounds.b_max}, {"product", cmp.product},
            {"floor", cmp.floor},        {"bias_a", cmp.bias_a},      {"bias_b", cmp.bias_b},
            {"bias", cmp.bias},          {"optimal_bias", cmp.optimal_bias}};
}

}  // namespace otlab::fot
