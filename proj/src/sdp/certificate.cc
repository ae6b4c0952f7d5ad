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

#include "otlab/sdp/certificate.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace otlab::sdp {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

CertificateCheck verify_dual_certificate(const SdpProblem &problem, const SdpSolution &solution) {
    CertificateCheck out;
    auto fail = [&](const std::string &why, double amount) {
        out.failures.push_back(why);
        out.max_residual = std::max(out.max_residual, amount);
    };

    if (!problem_violations(problem).empty()) {
        fail("problem is malformed", std::numeric_limits<double>::infinity());
        return out;
    }
    if (solution.dual.size() != problem.constraints.size()) {
        fail("certificate needs one dual matrix per constraint", std::numeric_limits<double>::infinity());
        return out;
    }
    for (std::size_t c = 0; c < problem.constraints.size(); ++c) {
        const auto d = static_cast<Eigen::Index>(problem.constraints[c].dim);
        const auto &y = solution.dual[c];
        if (y.rows() != d || y.cols() != d) {
            fail("dual variable " + std::to_string(c) + " has wrong dimension", std::numeric_limits<double>::infinity());
            return out;
        }
        const double asym = (y - y.adjoint()).cwiseAbs().maxCoeff();
        if (asym > kCertificateTol) fail("dual variable " + std::to_string(c) + " is not Hermitian", asym);
    }

    const auto slack = dual_slack(problem, solution.dual);
    out.min_slack_eigenvalue = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < slack.size(); ++b) {
        const double lam = qlin::min_eigenvalue(0.5 * (slack[b] + slack[b].adjoint()));
        out.min_slack_eigenvalue = std::min(out.min_slack_eigenvalue, lam);
        if (lam < -kCertificateTol) fail("slack on block " + problem.blocks[b].name + " has eigenvalue " + fmt(lam), -lam);
    }
    if (solution.slack.size() == slack.size()) {
        for (std::size_t b = 0; b < slack.size(); ++b) {
            if (solution.slack[b].rows() != slack[b].rows() || solution.slack[b].cols() != slack[b].cols()) {
                out.slack_mismatch = std::numeric_limits<double>::infinity();
                continue;
            }
            out.slack_mismatch = std::max(out.slack_mismatch, (slack[b] - solution.slack[b]).cwiseAbs().maxCoeff());
        }
    } else {
        out.slack_mismatch = std::numeric_limits<double>::infinity();
    }
    if (out.slack_mismatch > kCertificateTol)
        fail("dual equality violated by " + fmt(out.slack_mismatch), out.slack_mismatch);

    out.dual_value = dual_objective(problem, solution.dual);
    const double claim = std::abs(out.dual_value - solution.dual_value);
    if (claim > kCertificateTol) fail("claimed dual value differs by " + fmt(claim), claim);
    const double below = solution.primal_value - out.dual_value;
    if (below > kCertificateTol) fail("dual value is below the claimed primal value by " + fmt(below), below);

    out.pass = out.failures.empty();
    return out;
}

}  // namespace otlab::sdp
