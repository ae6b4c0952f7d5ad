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

// Subcommands of the otlab tool. Each returns the "results" object of a
// report; the driver adds the command echo and metadata.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace otlab::cli {

struct CommonOptions {
    std::uint64_t seed = 1;
    std::uint64_t trials = 0;
    double tol = 1e-7;
    unsigned jobs = 1;
    bool oracle = false;
};

struct SimulateArgs {
    /// Protocol name or path to a spec file.
    std::string protocol;
    std::size_t n = 2;
    std::size_t k = 1;
    /// "ideal:C" or "qutrit-commitment-cf".
    std::string cf = "ideal:0.7071067811865476";
};

struct CheatArgs {
    std::string protocol;
    std::string party = "alice";
    std::string attack;
    /// Coin for coin-flipping protocols; for fot, Bob's label (Alice cheating)
    /// or Alice's bits (Bob cheating). Empty picks a default.
    std::string target;
    std::size_t n = 2;
    std::size_t k = 1;
    std::string cf = "ideal:0.7071067811865476";
};

struct BoundArgs {
    std::string name;
    std::optional<double> z, x, a, b, gamma;
    std::optional<std::size_t> n, k;
};

struct SdpArgs {
    /// Spec file, or the name of a bundled spec in the data directory.
    std::string spec;
    /// "alice", "bob" or "both".
    std::string party = "both";
    std::string target = "0";
    std::size_t oracle_restarts = 5;
    /// Write the full dual certificate to this file.
    std::string certificate_out;
};

/// Data directory: $OTLAB_DATA_DIR, else the build-time default.
std::string data_dir();

nlohmann::json cmd_simulate(const SimulateArgs &args, const CommonOptions &opts);
nlohmann::json cmd_cheat(const CheatArgs &args, const CommonOptions &opts);
nlohmann::json cmd_bound(const BoundArgs &args, const CommonOptions &opts);
nlohmann::json cmd_sdp(const SdpArgs &args, const CommonOptions &opts);
/// Writes <name>.json for every bundled protocol; returns the written paths.
nlohmann::json cmd_export_specs(const std::string &out_dir);

}  // namespace otlab::cli
