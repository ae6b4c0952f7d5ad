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

// Scalar bound algebra relating cheating probabilities of coin flipping,
// oblivious transfer and forcing OT.

#include <cstddef>
#include <optional>

#include "json.hpp"

namespace otlab::bounds {

/// g(x) = x (2x - 1)^2 on [1/2, 1]; increasing onto [0, 1].
/// Throws DomainError outside [1/2, 1].
double g(double x);

/// Inverse of g from [0, 1] onto [1/2, 1]: with r = sqrt(27 z^2 - 2 z) and
/// w = (3 sqrt3 r + 27 z - 1)^{1/3}, f(z) = w/6 + 1/(6w) + 1/3. For
/// z < 2/27 the radicand is negative and w is a complex unit whose two terms
/// add up to a real number; below 1e-6 the value comes from bisection on g.
/// Throws DomainError outside [0, 1].
double f(double z);

/// Inverse of g by bisection on [1/2, 1] (to 1e-15).
double f_by_bisection(double z);

/// 1/2 (sqrt(1/2 + 2 sqrt2) - sqrt(1/2)) - 1/2, about 0.0586.
double ot_lower_bound_epsilon();

/// Root of x f(x) = 1/2 on [1/2, 1] found by bisection, minus 1/2.
double ot_lower_bound_epsilon_by_bisection();

/// Bob's optimal coin-flipping bias cannot exceed f(B_OT). Throws DomainError outside [0, 1].
double bcf_upper_from_bot(double b_ot);

struct KitaevCheck {
    bool pass = false;
    double product = 0;
    /// product - 1/2.
    double margin = 0;
};

/// Kitaev's bound A B >= 1/2 for coin flipping, with 1e-9 slack.
KitaevCheck kitaev_product_check(double a, double b);

struct FotLower {
    /// 1 / (C(n, k) 2^n), the probability of each honest joint outcome.
    double honest_joint = 0;
    /// sqrt2^k: some party can multiply an outcome's probability by at least this much.
    double min_forcing_bias = 0;
};

/// Throws DomainError unless 1 <= k <= n.
FotLower fot_lower(std::size_t n, std::size_t k);

struct FotUpper {
    /// sqrt2^k (1 + gamma) / (C(n, k) 2^k): Alice forcing Bob's output.
    double a_bound = 0;
    /// sqrt2^k (1 + gamma) / 2^n: Bob forcing Alice's output.
    double b_bound = 0;
    /// Largest delta with (1/sqrt2 + delta/2)^k <= sqrt2^k (1 + gamma) / 2^k, by bisection.
    double required_delta = 0;
};

/// Throws DomainError unless 1 <= k <= n and gamma > 0.
FotUpper fot_upper(std::size_t n, std::size_t k, double gamma);

/// The named probabilities and parameters of a bound computation; unset
/// entries are omitted from JSON.
struct BoundSet {
    std::optional<double> a_ot, b_ot, a_cf, b_cf;
    std::optional<double> epsilon;
    std::optional<std::size_t> n, k;
    std::optional<double> gamma, delta;
};

nlohmann::json to_json(const BoundSet &set);

}  // namespace otlab::bounds
