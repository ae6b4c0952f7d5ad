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

#include "otlab/sdp/json.h"

#include "otlab/error.h"
#include "otlab/model/json.h"

namespace otlab::sdp {

using model::matrix_from_json;
using model::matrix_to_json;
using nlohmann::json;

namespace {

json matrices_to_json(const std::vector<ComplexMatrix> &ms) {
    json out = json::array();
    for (const auto &m : ms) out.push_back(matrix_to_json(m));
    return out;
}

std::vector<ComplexMatrix> matrices_from_json(const json &j) {
    if (!j.is_array()) throw ValidationError("expected an array of matrices");
    std::vector<ComplexMatrix> out;
    for (const auto &m : j) out.push_back(matrix_from_json(m));
    return out;
}

template <typename F>
auto guarded(F &&f) {
    try {
        return f();
    } catch (const json::exception &e) {
        throw ValidationError(std::string("malformed SDP JSON: ") + e.what());
    }
}

}  // namespace

json to_json(const SdpProblem &p) {
    json blocks = json::array();
    for (const auto &b : p.blocks) {
        json jb{{"name", b.name}, {"dim", b.dim}};
        jb["embedding"] = b.embedding.size() == 0 ? json(nullptr) : matrix_to_json(b.embedding);
        blocks.push_back(std::move(jb));
    }
    json constraints = json::array();
    for (const auto &c : p.constraints) {
        json terms = json::array();
        for (const auto &t : c.terms)
            terms.push_back({{"block", t.block}, {"coefficient", t.coefficient}, {"kraus", matrices_to_json(t.kraus)}});
        constraints.push_back({{"name", c.name}, {"dim", c.dim}, {"rhs", matrix_to_json(c.rhs)}, {"terms", terms}});
    }
    const auto &m = p.metadata;
    return {{"blocks", blocks},
            {"objective", matrices_to_json(p.objective)},
            {"constraints", constraints},
            {"metadata",
             {{"cheater", m.cheater},
              {"target", m.target},
              {"n_rounds", m.n_constraints_rounds},
              {"n_messages", m.n_messages},
              {"n_spec_rounds", m.n_spec_rounds},
              {"n_convention", m.n_convention}}}};
}

SdpProblem problem_from_json(const json &j) {
    return guarded([&] {
        SdpProblem p;
        for (const auto &b : j.at("blocks")) {
            Block blk{b.at("name").get<std::string>(), b.at("dim").get<std::size_t>(), ComplexMatrix()};
            if (b.contains("embedding") && !b["embedding"].is_null()) blk.embedding = matrix_from_json(b["embedding"]);
            p.blocks.push_back(std::move(blk));
        }
        p.objective = matrices_from_json(j.at("objective"));
        for (const auto &c : j.at("constraints")) {
            Constraint con;
            con.name = c.at("name").get<std::string>();
            con.dim = c.at("dim").get<std::size_t>();
            con.rhs = matrix_from_json(c.at("rhs"));
            for (const auto &t : c.at("terms"))
                con.terms.push_back({t.at("block").get<std::size_t>(), t.at("coefficient").get<double>(),
                                     matrices_from_json(t.at("kraus"))});
            p.constraints.push_back(std::move(con));
        }
        if (j.contains("metadata")) {
            const auto &m = j["metadata"];
            p.metadata.cheater = m.value("cheater", "");
            p.metadata.target = m.value("target", "");
            p.metadata.n_constraints_rounds = m.value("n_rounds", std::size_t{0});
            p.metadata.n_messages = m.value("n_messages", std::size_t{0});
            p.metadata.n_spec_rounds = m.value("n_spec_rounds", std::size_t{0});
            p.metadata.n_convention = m.value("n_convention", "");
        }
        require_well_formed(p);
        return p;
    });
}

json to_json(const SdpSolution &s) {
    return {{"primal_value", s.primal_value},
            {"dual_value", s.dual_value},
            {"primal", matrices_to_json(s.primal)},
            {"dual", matrices_to_json(s.dual)},
            {"slack", matrices_to_json(s.slack)},
            {"residuals", {{"primal", s.residuals.primal}, {"dual", s.residuals.dual}, {"gap", s.residuals.gap}}},
            {"iterations", s.iterations}};
}

SdpSolution solution_from_json(const json &j) {
    return guarded([&] {
        SdpSolution s;
        s.primal_value = j.at("primal_value").get<double>();
        s.dual_value = j.at("dual_value").get<double>();
        s.primal = matrices_from_json(j.at("primal"));
        s.dual = matrices_from_json(j.at("dual"));
        s.slack = matrices_from_json(j.at("slack"));
        if (j.contains("residuals")) {
            const auto &r = j["residuals"];
            s.residuals = {r.value("primal", 0.0), r.value("dual", 0.0), r.value("gap", 0.0)};
        }
        s.iterations = j.value("iterations", std::size_t{0});
        return s;
    });
}

json to_json(const CertificateCheck &c) {
    return {{"pass", c.pass},
            {"max_residual", c.max_residual},
            {"dual_value", c.dual_value},
            {"min_slack_eigenvalue", c.min_slack_eigenvalue},
            {"slack_mismatch", c.slack_mismatch},
            {"failures", c.failures}};
}

json certificate_to_json(const SdpProblem &problem, const SdpSolution &solution) {
    return {{"problem", to_json(problem)}, {"solution", to_json(solution)}};
}

}  // namespace otlab::sdp
