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

// k-out-of-n forcing OT from coin flips: Bob picks a random k-subset b, one
// coin flip fixes each bit of x_b, and Alice fills in the other n - k bits.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "otlab/cheat/attacks.h"
#include "otlab/otcore/harness.h"
#include "otlab/otcore/program.h"
#include "otlab/util/rng.h"

namespace otlab::fot {

using otcore::Party;

/// The coin-flipping subroutine. Ideal: each coin is uniform, and a cheater
/// gets its preferred value with probability `c` (otherwise the other value).
/// Simulated: each coin is a run of an interactive coin-flipping protocol; a
/// cheater runs a scripted strategy from `attack`.
struct CfPrimitive {
    enum class Kind { kIdeal, kSimulated };
    Kind kind = Kind::kIdeal;
    std::string name;
    /// max_cheat[party][coin]: best probability that `party` forces `coin`, in [1/2, 1].
    std::array<std::array<double, 2>, 2> max_cheat{};
    std::optional<otcore::InteractiveProtocol> protocol;
    std::function<cheat::Strategy(Party, std::size_t)> attack;

    /// Largest forcing probability of one party over both coins.
    double c(Party party) const;
};

/// Throws DomainError unless c is in [1/2, 1].
CfPrimitive ideal_cf(double c);

/// The qutrit commitment coin flip with its scripted attacks. The per-coin
/// bound is 3/4 for both parties and both coins, the value of the cheating
/// SDPs on the compiled protocol.
CfPrimitive commitment_cf();

/// Checks c in [1/2, 1] for every entry and, for simulated primitives, a protocol and attacks.
std::vector<std::string> primitive_violations(const CfPrimitive &cf);

struct CoinRecord {
    std::size_t index = 0;
    std::optional<std::size_t> alice_coin;
    std::optional<std::size_t> bob_coin;
    /// Coin the cheater pushed for, if any.
    std::optional<std::size_t> target;
    /// Actor and message per step for simulated coins.
    std::vector<std::pair<Party, std::string>> transcript;
};

struct FotRun {
    /// Bob's index set, sorted.
    std::vector<std::size_t> b;
    /// Bob's output bits at b.
    std::vector<std::size_t> x_b;
    /// Alice's output bits.
    std::vector<std::size_t> x;
    std::vector<CoinRecord> coins;
    bool alice_aborted = false;
    bool bob_aborted = false;

    /// Output labels; both are "abort" once either party aborted.
    std::string alice_label() const;
    std::string bob_label() const;
};

/// A cheating party in fot_run. Cheating Alice wants Bob to output
/// (target_b, target_bits); cheating Bob wants Alice to output target_bits
/// (n bits) and announces target_b (empty: the first k indices).
struct FotAdversary {
    Party party = Party::kAlice;
    std::vector<std::size_t> target_b;
    std::vector<std::size_t> target_bits;
};

/// Samples b with a Fisher-Yates prefix, runs the k coin flips on independent
/// streams, then samples Alice's free bits. A subroutine abort stops the run
/// and is recorded. Throws DomainError unless 1 <= k <= n, and
/// ValidationError for an invalid primitive or adversary.
FotRun fot_run(std::size_t n, std::size_t k, const CfPrimitive &cf, Rng &rng, const FotAdversary *adversary = nullptr);

/// Whether the adversary reached its target in `run` (the honest party did not abort).
bool adversary_succeeded(const FotRun &run, const FotAdversary &adversary);

/// Exact honest output distribution keyed by (alice label, bob label). Simulated
/// coins use the exact distribution of one honest protocol run.
std::map<std::pair<std::string, std::string>, double> exact_honest_distribution(std::size_t n, std::size_t k,
                                                                                 const CfPrimitive &cf);

struct CheatBounds {
    /// c_A^k / C(n, k).
    double a_max = 0;
    /// c_B^k / 2^(n - k).
    double b_max = 0;
};

/// Throws DomainError unless 1 <= k <= n.
CheatBounds fot_cheat_bounds(std::size_t n, std::size_t k, const CfPrimitive &cf);

struct BoundComparison {
    CheatBounds bounds;
    double product = 0;
    /// 1 / (C(n, k) 2^n), the smallest product any protocol can have.
    double floor = 0;
    /// a_max C(n, k) 2^k and b_max 2^n: gain over the honest probability.
    double bias_a = 0;
    double bias_b = 0;
    /// max(bias_a, bias_b) = c^k 2^k.
    double bias = 0;
    /// sqrt2^k, the optimum.
    double optimal_bias = 0;
};

BoundComparison fot_bound_vs_lower(std::size_t n, std::size_t k, const CfPrimitive &cf);

/// Monte-Carlo success rate of `adversary`; trial i uses derive_stream(seed, i).
otcore::MonteCarloEstimate estimate_fot_cheat(std::size_t n, std::size_t k, const CfPrimitive &cf,
                                              const FotAdversary &adversary, std::uint64_t trials,
                                              std::uint64_t seed, unsigned jobs = 1);

nlohmann::json to_json(const FotRun &run);
nlohmann::json to_json(const BoundComparison &cmp);

}  // namespace otlab::fot
