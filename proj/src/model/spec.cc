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

#include "otlab/model/spec.h"

#include <cmath>
#include <sstream>

#include "otlab/error.h"
#include "otlab/otcore/protocols.h"

namespace otlab::model {

using qlin::ComplexVector;

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void check_povm(const std::map<std::string, ComplexMatrix> &povm, std::size_t dim, const std::string &who,
                std::vector<std::string> &out) {
    if (povm.empty()) {
        out.push_back(who + " POVM is empty");
        return;
    }
    const auto d = static_cast<Eigen::Index>(dim);
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const auto &[label, e] : povm) {
        if (e.rows() != d || e.cols() != d) {
            out.push_back(who + " POVM element '" + label + "' has wrong dimension");
            return;
        }
        if (!qlin::is_finite(e)) out.push_back(who + " POVM element '" + label + "' is not finite");
        if (!qlin::is_hermitian(e, qlin::kOperatorTol)) out.push_back(who + " POVM element '" + label + "' is not Hermitian");
        else if (qlin::min_eigenvalue(e) < -qlin::kOperatorTol)
            out.push_back(who + " POVM element '" + label + "' is not PSD");
        sum += e;
    }
    const double dev = (sum - ComplexMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    if (dev > qlin::kOperatorTol) out.push_back(who + " POVM does not sum to identity (deviation " + fmt(dev) + ")");
}

}  // namespace

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::vector<std::string> fot_alice_labels(std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t x = 0; x < (std::size_t{1} << n); ++x) {
        std::string s(n, '0');
        for (std::size_t i = 0; i < n; ++i)
            if ((x >> (n - 1 - i)) & 1) s[i] = '1';
        out.push_back(s);
    }
    return out;
}

std::vector<std::string> fot_bob_labels(std::size_t n, std::size_t k) {
    std::vector<std::string> out;
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1) idx.push_back(i);
        if (idx.size() != k) continue;
        for (const auto &bits : fot_alice_labels(k)) {
            std::vector<std::size_t> b;
            for (char c : bits) b.push_back(static_cast<std::size_t>(c - '0'));
            out.push_back(otcore::bob_label(idx, b));
        }
    }
    return out;
}

bool consistent(const std::string &alice_label, const std::string &bob_label, std::size_t n, std::size_t k) {
    if (alice_label.size() != n) return false;
    for (char c : alice_label)
        if (c != '0' && c != '1') return false;
    auto bl = otcore::parse_bob_label(bob_label);
    if (!bl || bl->indices.size() != k) return false;
    for (std::size_t i = 0; i < k; ++i) {
        if (bl->indices[i] >= n) return false;
        if (i > 0 && bl->indices[i] <= bl->indices[i - 1]) return false;
        if (static_cast<std::size_t>(alice_label[bl->indices[i]] - '0') != bl->bits[i]) return false;
    }
    return true;
}

std::vector<std::string> structural_violations(const ProtocolSpec &spec) {
    std::vector<std::string> out;
    if (spec.dim_a == 0 || spec.dim_m == 0 || spec.dim_b == 0) {
        out.push_back("dimensions must be positive");
        return out;
    }
    if (spec.k == 0 || spec.k > spec.n || spec.n > 20) out.push_back("parameters require 1 <= k <= n <= 20");
    for (std::size_t i = 0; i < spec.rounds.size(); ++i) {
        const auto &r = spec.rounds[i];
        const std::size_t d = r.actor == Party::kAlice ? spec.dim_a * spec.dim_m : spec.dim_m * spec.dim_b;
        const std::string tag = "round " + std::to_string(i) + " (" + otcore::party_name(r.actor) + ")";
        if (r.unitary.rows() != static_cast<Eigen::Index>(d) || r.unitary.cols() != static_cast<Eigen::Index>(d)) {
            out.push_back(tag + ": unitary must be " + std::to_string(d) + "x" + std::to_string(d));
            continue;
        }
        if (!qlin::is_finite(r.unitary) || !qlin::is_unitary(r.unitary, qlin::kOperatorTol))
            out.push_back(tag + ": not unitary within 1e-10");
    }
    check_povm(spec.alice_povm, spec.dim_a, "alice", out);
    check_povm(spec.bob_povm, spec.dim_b, "bob", out);
    return out;
}

HonestRun run_honest(const ProtocolSpec &spec) {
    auto violations = structural_violations(spec);
    if (!violations.empty()) throw ValidationError("invalid protocol spec: " + violations.front(), violations);
    const auto layout = spec.layout();
    HonestRun run;
    ComplexVector psi = ComplexVector::Zero(static_cast<Eigen::Index>(layout.total()));
    psi(0) = 1.0;
    const std::size_t alice_side[2] = {0, 1};
    const std::size_t bob_side[2] = {1, 2};
    for (const auto &r : spec.rounds) {
        psi = qlin::apply_operator(psi, r.unitary, layout, r.actor == Party::kAlice ? alice_side : bob_side);
        run.norms.push_back(psi.norm());
    }
    const std::size_t a_only[1] = {0};
    const std::size_t b_only[1] = {2};
    std::vector<std::pair<std::string, ComplexVector>> after_alice;
    for (const auto &[la, ea] : spec.alice_povm) after_alice.emplace_back(la, qlin::apply_operator(psi, ea, layout, a_only));
    for (const auto &[la, va] : after_alice) {
        for (const auto &[lb, eb] : spec.bob_povm) {
            const ComplexVector v = qlin::apply_operator(va, eb, layout, b_only);
            const double p = psi.dot(v).real();
            if (std::abs(p) > 1e-15) run.distribution[{la, lb}] += p;
        }
    }
    run.final_state = std::move(psi);
    return run;
}

std::vector<std::string> validate(const ProtocolSpec &spec) {
    auto out = structural_violations(spec);
    if (!out.empty()) return out;
    const auto run = run_honest(spec);
    const double expected = 1.0 / (static_cast<double>(binomial(spec.n, spec.k)) * std::ldexp(1.0, static_cast<int>(spec.n)));
    auto prob = [&](const std::string &a, const std::string &b) {
        auto it = run.distribution.find({a, b});
        return it == run.distribution.end() ? 0.0 : it->second;
    };
    for (const auto &a : fot_alice_labels(spec.n))
        for (const auto &b : fot_bob_labels(spec.n, spec.k)) {
            if (!consistent(a, b, spec.n, spec.k)) continue;
            const double p = prob(a, b);
            if (std::abs(p - expected) > qlin::kDerivedTol)
                out.push_back("honest outcome (" + a + ", " + b + ") has probability " + fmt(p) + ", expected " +
                              fmt(expected));
        }
    for (const auto &[labels, p] : run.distribution) {
        if (consistent(labels.first, labels.second, spec.n, spec.k)) continue;
        if (std::abs(p) > qlin::kDerivedTol)
            out.push_back("inconsistent outcome (" + labels.first + ", " + labels.second + ") has probability " + fmt(p));
    }
    return out;
}

void require_valid(const ProtocolSpec &spec) {
    auto v = validate(spec);
    if (!v.empty()) throw ValidationError("invalid protocol spec: " + v.front(), v);
}

}  // namespace otlab::model
