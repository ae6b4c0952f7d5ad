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

#include "otlab/bounds/bounds.h"

#include <cmath>
#include <complex>
#include <string>

#include "otlab/error.h"
#include "otlab/model/spec.h"

namespace otlab::bounds {

namespace {

void require_range(double x, double lo, double hi, const char *what) {
    if (!(x >= lo && x <= hi))
        throw DomainError(std::string(what) + ": argument " + std::to_string(x) + " outside [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + "]");
}

void require_nk(std::size_t n, std::size_t k) {
    if (k < 1 || k > n) throw DomainError("need 1 <= k <= n, got n = " + std::to_string(n) + ", k = " + std::to_string(k));
}

// Smallest x in [lo, hi] with h(x) >= target for increasing h.
template <class H>
double bisect(H h, double target, double lo, double hi, double width) {
    while (hi - lo > width) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (h(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

constexpr double kClosedFormCrossover = 1e-6;

}  // namespace

double g(double x) {
    require_range(x, 0.5, 1.0, "g");
    return x * (2 * x - 1) * (2 * x - 1);
}

double f_by_bisection(double z) {
    require_range(z, 0.0, 1.0, "f");
    if (z == 0.0) return 0.5;
    if (z == 1.0) return 1.0;
    return bisect([](double x) { return x * (2 * x - 1) * (2 * x - 1); }, z, 0.5, 1.0, 1e-15);
}

double f(double z) {
    require_range(z, 0.0, 1.0, "f");
    if (z < kClosedFormCrossover) return f_by_bisection(z);
    using C = std::complex<double>;
    const C r = std::sqrt(C(27 * z * z - 2 * z, 0.0));
    const C w = std::pow(3 * std::sqrt(3.0) * r + (27 * z - 1), 1.0 / 3.0);
    return (w / 6.0 + 1.0 / (6.0 * w)).real() + 1.0 / 3.0;
}

double ot_lower_bound_epsilon() { return 0.5 * (std::sqrt(0.5 + 2 * std::sqrt(2.0)) - std::sqrt(0.5)) - 0.5; }

double ot_lower_bound_epsilon_by_bisection() {
    return bisect([](double x) { return x * f_by_bisection(x); }, 0.5, 0.5, 1.0, 1e-14) - 0.5;
}

double bcf_upper_from_bot(double b_ot) {
    require_range(b_ot, 0.0, 1.0, "bcf_upper_from_bot");
    return f(b_ot);
}

KitaevCheck kitaev_product_check(double a, double b) {
    KitaevCheck out;
    out.product = a * b;
    out.margin = out.product - 0.5;
    out.pass = out.product >= 0.5 - 1e-9;
    return out;
}

FotLower fot_lower(std::size_t n, std::size_t k) {
    require_nk(n, k);
    FotLower out;
    out.honest_joint = 1.0 / (static_cast<double>(model::binomial(n, k)) * std::ldexp(1.0, static_cast<int>(n)));
    out.min_forcing_bias = std::pow(std::sqrt(2.0), static_cast<double>(k));
    return out;
}

FotUpper fot_upper(std::size_t n, std::size_t k, double gamma) {
    require_nk(n, k);
    if (!(gamma > 0)) throw DomainError("fot_upper: gamma must be positive");
    const double kd = static_cast<double>(k);
    const double bias = std::pow(std::sqrt(2.0), kd) * (1 + gamma);
    FotUpper out;
    out.a_bound = bias / (static_cast<double>(model::binomial(n, k)) * std::ldexp(1.0, static_cast<int>(k)));
    out.b_bound = bias / std::ldexp(1.0, static_cast<int>(n));
    const double rhs = bias / std::ldexp(1.0, static_cast<int>(k));
    auto lhs = [kd](double delta) { return std::pow(1 / std::sqrt(2.0) + delta / 2, kd); };
    // lhs is increasing; grow the bracket until it exceeds rhs.
    double hi = 1.0;
    while (lhs(hi) <= rhs) hi *= 2;
    double lo = 0.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (lhs(mid) <= rhs ? lo : hi) = mid;
    }
    out.required_delta = lo;
    return out;
}

nlohmann::json to_json(const BoundSet &set) {
    nlohmann::json j = nlohmann::json::object();
    auto put = [&j](const char *key, const auto &v) {
        if (v) j[key] = *v;
    };
    put("A_OT", set.a_ot);
    put("B_OT", set.b_ot);
    put("A_CF", set.a_cf);
    put("B_CF", set.b_cf);
    put("epsilon", set.epsilon);
    put("n", set.n);
    put("k", set.k);
    put("gamma", set.gamma);
    put("delta", set.delta);
    return j;
}

}  // namespace otlab::bounds
