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

// otlab: simulate protocols, run cheating strategies, evaluate bounds and
// solve cheating SDPs. Reports are JSON on stdout.
//
// Exit codes: 0 success, 2 usage or validation error, 3 numerical failure.

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <Eigen/Core>

#include "CLI11.hpp"
#include "commands.h"
#include "json.hpp"
#include "otlab/error.h"

namespace {

using nlohmann::json;

constexpr const char *kVersion = "0.1.0";
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

std::string scalar_text(const json &v) {
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

void write_csv(const json &results, const std::string &path) {
    std::ofstream f(path);
    if (!f) throw otlab::ValidationError("cannot write CSV to '" + path + "'");
    f << "key,value\n";
    const auto flat = results.flatten();
    for (const auto &[key, v] : flat.items()) {
        std::string text = scalar_text(v);
        if (text.find_first_of(",\"\n") != std::string::npos) {
            std::string quoted = "\"";
            for (char c : text) quoted += c == '"' ? std::string("\"\"") : std::string(1, c);
            text = quoted + "\"";
        }
        f << key << ',' << text << '\n';
    }
}

void print_table(const json &results, std::ostream &os) {
    const auto flat = results.flatten();
    std::size_t width = 0;
    for (const auto &[key, v] : flat.items()) width = std::max(width, key.size());
    for (const auto &[key, v] : flat.items())
        os << std::left << std::setw(static_cast<int>(width) + 2) << key << scalar_text(v) << '\n';
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

json error_json(const std::string &kind, const std::string &message) {
    return {{"error", kind}, {"message", message}};
}

}  // namespace

int main(int argc, char **argv) {
    namespace cli = otlab::cli;
    CLI::App app{"Oblivious transfer and coin flipping laboratory"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);

    cli::CommonOptions opts;
    bool pretty = false, no_meta = false;
    std::string csv_path;
    app.add_option("--seed", opts.seed, "Seed for sampled quantities");
    app.add_option("--trials", opts.trials, "Monte-Carlo trials (0: exact only)");
    app.add_option("--tol", opts.tol, "SDP solver tolerance")->check(CLI::PositiveNumber);
    app.add_option("--jobs", opts.jobs, "Worker threads for trials")->check(CLI::Range(1u, 256u));
    app.add_flag("--oracle", opts.oracle, "Add a brute-force search next to SDP solves");
    app.add_flag("--pretty", pretty, "Indent the JSON and print a table to stderr");
    app.add_option("--csv", csv_path, "Also write the results as key,value rows");
    app.add_flag("--no-meta", no_meta, "Omit version and timing metadata");

    cli::SimulateArgs sim;
    auto *simulate = app.add_subcommand("simulate", "Honest-run statistics and exact distributions");
    simulate->add_option("protocol", sim.protocol, "qutrit-ot, cf-from-ot, qutrit-commitment-cf, announce-coin, fot, or a spec file")
        ->required();
    simulate->add_option("--n", sim.n, "fot: number of bits");
    simulate->add_option("--k", sim.k, "fot: bits Bob learns");
    simulate->add_option("--cf", sim.cf, "fot: coin flip, ideal:C or qutrit-commitment-cf");

    cli::CheatArgs ch;
    auto *cheat = app.add_subcommand("cheat", "Cheating strategy with lower and upper bounds");
    cheat->add_option("protocol", ch.protocol, "qutrit-ot, cf-from-ot, qutrit-commitment-cf, announce-coin or fot")->required();
    cheat->add_option("--party", ch.party, "Cheating party (alice or bob)");
    cheat->add_option("--attack", ch.attack, "Attack name or 'optimal'");
    cheat->add_option("--target", ch.target, "Coin to force, or the fot output to force");
    cheat->add_option("--n", ch.n, "fot: number of bits");
    cheat->add_option("--k", ch.k, "fot: bits Bob learns");
    cheat->add_option("--cf", ch.cf, "fot: coin flip, ideal:C or qutrit-commitment-cf");

    cli::BoundArgs bd;
    auto *bound = app.add_subcommand("bound", "Evaluate a bound");
    bound->add_option("name", bd.name, "ot-lower, f, g, kitaev-product, fot-lower or fot-upper")->required();
    bound->add_option("--z", bd.z, "Argument of f");
    bound->add_option("--x", bd.x, "Argument of g");
    bound->add_option("--a", bd.a, "Alice's cheating probability");
    bound->add_option("--b", bd.b, "Bob's cheating probability");
    bound->add_option("--n", bd.n, "fot: number of bits");
    bound->add_option("--k", bd.k, "fot: bits Bob learns");
    bound->add_option("--gamma", bd.gamma, "fot-upper: slack gamma > 0");

    cli::SdpArgs sa;
    auto *sdp = app.add_subcommand("sdp", "Solve the cheating SDP of a spec and certify it");
    sdp->add_option("spec", sa.spec, "Spec file or bundled spec name")->required();
    sdp->add_option("--party", sa.party, "alice, bob or both");
    sdp->add_option("--target", sa.target, "Coin (0 or 1) or an honest POVM label");
    sdp->add_option("--oracle-restarts", sa.oracle_restarts, "Restarts for --oracle");
    sdp->add_option("--certificate-out", sa.certificate_out, "Write the dual certificates here");

    std::string out_dir;
    auto *export_specs = app.add_subcommand("export-specs", "Write the bundled protocol specs");
    export_specs->add_option("--out", out_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    const auto start = std::chrono::steady_clock::now();
    json results;
    try {
        if (*simulate) results = cli::cmd_simulate(sim, opts);
        else if (*cheat) results = cli::cmd_cheat(ch, opts);
        else if (*bound) results = cli::cmd_bound(bd, opts);
        else if (*sdp) results = cli::cmd_sdp(sa, opts);
        else results = cli::cmd_export_specs(out_dir);
    } catch (const otlab::ConvergenceError &e) {
        auto err = error_json("ConvergenceError", e.what());
        err["residuals"] = {{"primal", e.primal_residual()}, {"dual", e.dual_residual()}, {"gap", e.gap()}};
        std::cerr << err.dump() << '\n';
        return kExitNumerical;
    } catch (const otlab::RankError &e) {
        std::cerr << error_json("RankError", e.what()).dump() << '\n';
        return kExitNumerical;
    } catch (const otlab::ValidationError &e) {
        auto err = error_json("ValidationError", e.what());
        err["violations"] = e.violations();
        std::cerr << err.dump() << '\n';
        return kExitUsage;
    } catch (const otlab::Error &e) {
        std::cerr << error_json("Error", e.what()).dump() << '\n';
        return kExitUsage;
    } catch (const json::exception &e) {
        std::cerr << error_json("ValidationError", e.what()).dump() << '\n';
        return kExitUsage;
    }

    json report;
    json command = json::array();
    for (int i = 1; i < argc; ++i) command.push_back(argv[i]);
    report["command"] = command;
    report["seed"] = opts.seed;
    report["results"] = results;
    if (!no_meta) {
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        report["meta"] = {{"versions",
                           {{"otlab", kVersion},
                            {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                          "." + std::to_string(EIGEN_MINOR_VERSION)},
                            {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                                  std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                                  std::to_string(NLOHMANN_JSON_VERSION_PATCH)},
                            {"cli11", CLI11_VERSION}}},
                          {"started_utc", utc_timestamp()},
                          {"wall_clock_seconds", elapsed.count()}};
    }
    try {
        if (!csv_path.empty()) write_csv(results, csv_path);
    } catch (const otlab::Error &e) {
        std::cerr << error_json("ValidationError", e.what()).dump() << '\n';
        return kExitUsage;
    }
    std::cout << (pretty ? report.dump(2) : report.dump()) << '\n';
    if (pretty) print_table(results, std::cerr);
    return 0;
}
