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

#include "otlab/model/json.h"

#include <fstream>

#include "otlab/error.h"

namespace otlab::model {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix &m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const json &j) {
    if (!j.is_array() || j.empty()) throw ValidationError("matrix must be a non-empty array of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    ComplexMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto &row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw ValidationError("ragged matrix");
        for (Eigen::Index c = 0; c < cols; ++c) {
            const auto &z = row[static_cast<std::size_t>(c)];
            if (z.is_number()) {
                m(r, c) = z.get<double>();
            } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
                m(r, c) = {z[0].get<double>(), z[1].get<double>()};
            } else {
                throw ValidationError("matrix entries must be [re, im] pairs");
            }
        }
    }
    return m;
}

namespace {

json factors_to_json(const std::vector<Factor> &fs) {
    json out = json::array();
    for (const auto &f : fs) out.push_back({{"name", f.name}, {"dim", f.dim}});
    return out;
}

std::vector<Factor> factors_from_json(const json &j) {
    std::vector<Factor> out;
    for (const auto &f : j) out.push_back({f.at("name").get<std::string>(), f.at("dim").get<std::size_t>()});
    return out;
}

}  // namespace

json to_json(const ProtocolSpec &spec) {
    json j;
    if (!spec.name.empty()) j["name"] = spec.name;
    j["dim_a"] = spec.dim_a;
    j["dim_m"] = spec.dim_m;
    j["dim_b"] = spec.dim_b;
    json rounds = json::array();
    for (const auto &r : spec.rounds)
        rounds.push_back({{"actor", otcore::party_name(r.actor)}, {"unitary", matrix_to_json(r.unitary)}});
    j["rounds"] = std::move(rounds);
    for (const auto &[key, povm] : {std::pair{"alice_povm", &spec.alice_povm}, std::pair{"bob_povm", &spec.bob_povm}}) {
        json p = json::object();
        for (const auto &[label, e] : *povm) p[label] = matrix_to_json(e);
        j[key] = std::move(p);
    }
    j["n"] = spec.n;
    j["k"] = spec.k;
    if (spec.messages) j["messages"] = spec.messages;
    if (!spec.alice_factors.empty()) j["alice_factors"] = factors_to_json(spec.alice_factors);
    if (!spec.bob_factors.empty()) j["bob_factors"] = factors_to_json(spec.bob_factors);
    return j;
}

ProtocolSpec spec_from_json(const json &j) {
    try {
        ProtocolSpec spec;
        spec.name = j.value("name", "");
        spec.dim_a = j.at("dim_a").get<std::size_t>();
        spec.dim_m = j.at("dim_m").get<std::size_t>();
        spec.dim_b = j.at("dim_b").get<std::size_t>();
        for (const auto &r : j.at("rounds"))
            spec.rounds.push_back({otcore::parse_party(r.at("actor").get<std::string>()), matrix_from_json(r.at("unitary"))});
        for (const auto &[label, m] : j.at("alice_povm").items()) spec.alice_povm[label] = matrix_from_json(m);
        for (const auto &[label, m] : j.at("bob_povm").items()) spec.bob_povm[label] = matrix_from_json(m);
        spec.n = j.at("n").get<std::size_t>();
        spec.k = j.at("k").get<std::size_t>();
        spec.messages = j.value("messages", std::size_t{0});
        if (j.contains("alice_factors")) spec.alice_factors = factors_from_json(j["alice_factors"]);
        if (j.contains("bob_factors")) spec.bob_factors = factors_from_json(j["bob_factors"]);
        return spec;
    } catch (const json::exception &e) {
        throw ValidationError(std::string("malformed protocol spec: ") + e.what());
    }
}

ProtocolSpec load_spec(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception &e) {
        throw ValidationError("'" + path + "' is not valid JSON: " + e.what());
    }
    return spec_from_json(j);
}

void save_spec(const ProtocolSpec &spec, const std::string &path, bool pretty) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path + "'");
    out << to_json(spec).dump(pretty ? 2 : -1) << '\n';
}

}  // namespace otlab::model
