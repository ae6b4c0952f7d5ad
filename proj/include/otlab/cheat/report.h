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

// Cheating reports for the bundled protocols: an explicit strategy's value
// (lower bound) next to a certified upper bound when one is available.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "otlab/model/spec.h"
#include "otlab/otcore/harness.h"
#include "otlab/otcore/program.h"

namespace otlab::cheat {

struct LowerBound {
    double value = 0;
    std::string strategy;
    /// Absolute accuracy of `value` (rounding for exact values, solver tolerance for SDPs).
    double tolerance = 0;
    /// Sampled estimate from the scripted harness, when trials were requested.
    std::optional<otcore::MonteCarloEstimate> estimate;
    nlohmann::json detail = nlohmann::json::object();
};

struct UpperBound {
    double value = 0;
    std::string method;
    double tolerance = 0;
    nlohmann::json certificate = nlohmann::json::object();
};

struct CheatReport {
    std::string protocol;
    std::string party;
    std::string target;
    LowerBound lower_bound;
    std::optional<UpperBound> upper_bound;
    std::uint64_t seed = 0;
};

nlohmann::json to_json(const CheatReport &report);

struct CheatRequest {
    std::string protocol;
    otcore::Party party = otcore::Party::kAlice;
    /// Attack name, "optimal" for the SDP, or empty for the first listed attack.
    std::string attack;
    /// Coin to force ("0" or "1") for coin-flipping protocols; ignored otherwise.
    std::string target = "0";
    std::uint64_t seed = 1;
    std::uint64_t trials = 0;
    unsigned jobs = 1;
    double tol = 1e-7;
    /// Also run the brute-force search next to SDP solves.
    bool oracle = false;
};

/// Protocols with named cheating strategies.
std::vector<std::string> cheat_protocols();

/// Attacks for `protocol` and `party`, default first. Throws PreconditionError for an unknown protocol.
std::vector<std::string> available_attacks(const std::string &protocol, otcore::Party party);

/// The interactive protocol and its compiled spec behind a protocol name.
otcore::InteractiveProtocol named_protocol(const std::string &name);
const model::ProtocolSpec &named_spec(const std::string &name);

/// Maps a coin "0"/"1" to the honest party's POVM label of a coin-flipping spec;
/// other labels pass through unchanged.
std::string coin_target_label(const model::ProtocolSpec &spec, otcore::Party cheater, const std::string &target);

/// Throws PreconditionError for an unknown protocol, attack or target and
/// ConvergenceError when an SDP does not converge.
CheatReport run_cheat(const CheatRequest &request);

}  // namespace otlab::cheat
