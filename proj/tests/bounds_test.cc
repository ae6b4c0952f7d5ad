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

#include <gtest/gtest.h>

#include <cmath>

#include "otlab/bounds/bounds.h"
#include "otlab/error.h"

namespace otlab::bounds {
namespace {

// Newton's method on g(x) - z from x = 1; g is convex and increasing on
// [1/2, 1], so the iterates decrease monotonically to the root.
double newton_inverse(double z) {
    double x = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double gx = x * (2 * x - 1) * (2 * x - 1);
        const double dg = (2 * x - 1) * (6 * x - 1);
        if (dg <= 0) break;
        const double next = x - (gx - z) / dg;
        if (std::abs(next - x) < 1e-16) break;
        x = std::max(0.5, next);
    }
    return x;
}

TEST(G, Values) {
    EXPECT_DOUBLE_EQ(g(0.5), 0.0);
    EXPECT_DOUBLE_EQ(g(1.0), 1.0);
    EXPECT_DOUBLE_EQ(g(0.75), 3.0 / 16.0);
    EXPECT_THROW(g(0.49), DomainError);
    EXPECT_THROW(g(1.01), DomainError);
    EXPECT_THROW(g(std::nan("")), DomainError);
}

TEST(F, Values) {
    EXPECT_NEAR(f(0.0), 0.5, 1e-12);
    EXPECT_NEAR(f(1.0), 1.0, 1e-12);
    EXPECT_NEAR(f(3.0 / 16.0), 0.75, 1e-12);
    // At z = 2/27 the radicand vanishes and f = 2/3.
    EXPECT_NEAR(f(2.0 / 27.0), 2.0 / 3.0, 1e-12);
    EXPECT_THROW(f(-1e-3), DomainError);
    EXPECT_THROW(f(1.5), DomainError);
}

TEST(F, AgreesWithIndependentInverses) {
    for (int i = 0; i <= 1000; ++i) {
        const double z = i / 1000.0;
        EXPECT_NEAR(f(z), newton_inverse(z), 1e-9) << z;
        EXPECT_NEAR(f(z), f_by_bisection(z), 1e-9) << z;
    }
    // Both sides of the closed-form crossover.
    for (double z : {1e-9, 5e-7, 1e-6, 2e-6, 1e-4})
        EXPECT_NEAR(g(f(z)), z, 1e-12) << z;
}

TEST(F, QutritOtValue) {
    const double v = bcf_upper_from_bot(0.75);
    EXPECT_NEAR(v, newton_inverse(0.75), 1e-12);
    EXPECT_NEAR(v, 0.945352, 1e-6);
    EXPECT_NEAR(v, f_by_bisection(0.75), 1e-12);
    EXPECT_NEAR(g(v), 0.75, 1e-12);
    EXPECT_NEAR(bcf_upper_from_bot(3.0 / 16.0), 0.75, 1e-12);
    EXPECT_NEAR(bcf_upper_from_bot(1.0), 1.0, 1e-12);
    EXPECT_THROW(bcf_upper_from_bot(1.1), DomainError);
}

TEST(Properties, InverseOnGrids) {
    const int n = 10000;
    double prev_g = -1, prev_f = 0;
    for (int i = 0; i <= n; ++i) {
        const double x = 0.5 + 0.5 * i / n;
        const double z = static_cast<double>(i) / n;
        EXPECT_NEAR(f(g(x)), x, 1e-9) << x;
        EXPECT_NEAR(g(f(z)), z, 1e-9) << z;
        EXPECT_NEAR(bcf_upper_from_bot(g(x)), x, 1e-9) << x;
        EXPECT_GT(g(x), prev_g);
        EXPECT_GE(f(z), prev_f);
        prev_g = g(x);
        prev_f = f(z);
    }
}

TEST(Epsilon, ClosedFormAndBisection) {
    const double closed = ot_lower_bound_epsilon();
    const double bis = ot_lower_bound_epsilon_by_bisection();
    EXPECT_NEAR(closed, 0.0586, 5e-5);
    EXPECT_NEAR(closed, bis, 1e-9);
    const double x = closed + 0.5;
    EXPECT_NEAR(x * f(x), 0.5, 1e-9);
    // x f(x) = 1/2 means f(x) = 1/(2x), so g(1/(2x)) = x.
    EXPECT_NEAR(g(0.5 / x), x, 1e-9);
}

TEST(Kitaev, Cases) {
    const auto a = kitaev_product_check(0.75, 0.75);
    EXPECT_TRUE(a.pass);
    EXPECT_NEAR(a.margin, 1.0 / 16.0, 1e-15);
    const auto b = kitaev_product_check(1 / std::sqrt(2.0), 1 / std::sqrt(2.0));
    EXPECT_TRUE(b.pass);
    EXPECT_NEAR(b.margin, 0.0, 1e-15);
    const auto c = kitaev_product_check(0.6, 0.6);
    EXPECT_FALSE(c.pass);
    EXPECT_NEAR(c.product, 0.36, 1e-15);
}

TEST(Fot, Lower) {
    const auto a = fot_lower(1, 1);
    EXPECT_DOUBLE_EQ(a.honest_joint, 0.5);
    EXPECT_NEAR(a.min_forcing_bias, std::sqrt(2.0), 1e-15);
    const auto b = fot_lower(2, 1);
    EXPECT_DOUBLE_EQ(b.honest_joint, 0.125);
    EXPECT_NEAR(b.min_forcing_bias, std::sqrt(2.0), 1e-15);
    const auto c = fot_lower(4, 2);
    EXPECT_DOUBLE_EQ(c.honest_joint, 1.0 / 96.0);
    EXPECT_NEAR(c.min_forcing_bias, 2.0, 1e-15);
    EXPECT_THROW(fot_lower(2, 0), DomainError);
    EXPECT_THROW(fot_lower(2, 3), DomainError);
}

TEST(Fot, Upper) {
    for (double gamma : {1e-6, 0.01, 0.3}) {
        const auto u = fot_upper(2, 1, gamma);
        EXPECT_NEAR(u.b_bound, (1 + gamma) / std::sqrt(8.0), 1e-15);
        EXPECT_NEAR(u.a_bound, std::sqrt(2.0) * (1 + gamma) / 4, 1e-15);
    }
    EXPECT_THROW(fot_upper(2, 1, 0.0), DomainError);
    EXPECT_THROW(fot_upper(1, 2, 0.1), DomainError);
}

TEST(Fot, UpperApproachesLowerAsGammaVanishes) {
    for (std::size_t n = 1; n <= 6; ++n)
        for (std::size_t k = 1; k <= n; ++k) {
            const auto u = fot_upper(n, k, 1e-9);
            const auto l = fot_lower(n, k);
            EXPECT_NEAR(u.a_bound * u.b_bound / l.honest_joint, 1.0, 3e-9);
        }
}

TEST(Fot, RequiredDelta) {
    for (std::size_t k = 1; k <= 6; ++k)
        for (double gamma : {1e-6, 0.01, 0.1}) {
            const auto u = fot_upper(k, k, gamma);
            // (1/sqrt2 + delta/2)^k = (1 + gamma) / sqrt2^k solves to:
            const double closed = 2 * (std::pow(1 + gamma, 1.0 / static_cast<double>(k)) - 1) / std::sqrt(2.0);
            EXPECT_NEAR(u.required_delta, closed, 1e-11);
            const double lhs = std::pow(1 / std::sqrt(2.0) + u.required_delta / 2, static_cast<double>(k));
            EXPECT_LE(lhs, (1 + gamma) / std::pow(std::sqrt(2.0), static_cast<double>(k)) + 1e-15);
        }
    const double gamma = 0.05;
    const auto u = fot_upper(1, 1, gamma);
    EXPECT_LE(1 / std::sqrt(2.0) + u.required_delta / 2, (1 + gamma) / std::sqrt(2.0) + 1e-15);
    EXPECT_NEAR(1 / std::sqrt(2.0) + u.required_delta / 2, (1 + gamma) / std::sqrt(2.0), 1e-12);
}

TEST(Fot, ProductDominatesHonestJoint) {
    for (std::size_t n = 1; n <= 6; ++n)
        for (std::size_t k = 1; k <= n; ++k)
            for (double gamma : {1e-6, 0.01, 0.1}) {
                const auto u = fot_upper(n, k, gamma);
                EXPECT_GE(u.a_bound * u.b_bound, fot_lower(n, k).honest_joint);
            }
}

TEST(BoundSetJson, OmitsUnset) {
    BoundSet s;
    s.b_ot = 0.75;
    s.b_cf = f(0.75);
    s.n = 2;
    const auto j = to_json(s);
    EXPECT_EQ(j.size(), 3u);
    EXPECT_DOUBLE_EQ(j["B_OT"].get<double>(), 0.75);
    EXPECT_EQ(j["n"].get<std::size_t>(), 2u);
    EXPECT_FALSE(j.contains("gamma"));
    // Doubles round-trip exactly through text.
    EXPECT_EQ(nlohmann::json::parse(j.dump())["B_CF"].get<double>(), *s.b_cf);
}

}  // namespace
}  // namespace otlab::bounds
