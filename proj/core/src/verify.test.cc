// Copyright 2026 The qelim Authors
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
#include "qelim/verify.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gtest/gtest.h"
#include "qelim/analysis.h"
#include "qelim/error.h"
#include "qelim/schemes.h"

using namespace qelim;
using namespace qelim::verify;

namespace {

AngleParam deg(double two_theta) {
    return AngleParam::from_two_theta_degrees(two_theta);
}

}  // namespace

TEST(certify_one, thirty_degrees) {
    const auto r = certify_one(deg(30));
    EXPECT_TRUE(r.pass);
    EXPECT_NEAR(r.closed_form, 0.549038, 1e-6);
    EXPECT_NEAR(r.oracle, 0.549038, 1e-4);
    EXPECT_LE(std::abs(r.gap), 1e-4);
    EXPECT_GE(r.gap, -1e-12);
    EXPECT_EQ(r.tolerance, 1e-4);
}

TEST(certify_one, other_angles) {
    for (double a : {10.0, 40.0}) {
        const auto r = certify_one(deg(a));
        EXPECT_TRUE(r.pass) << a;
        EXPECT_GE(r.gap, -1e-12);
    }
    const auto zero = certify_one(deg(0));
    EXPECT_TRUE(zero.pass);
    EXPECT_NEAR(zero.oracle, 1.0, 1e-12);
    EXPECT_NEAR(zero.closed_form, 1.0, 1e-12);
}

TEST(certify_one, errors) {
    EXPECT_THROW(certify_one(deg(45)), Error);
    EXPECT_THROW(certify_one(deg(30), 1), Error);
}

TEST(certify_two, examples) {
    const auto r70 = certify_two(deg(70));
    EXPECT_TRUE(r70.pass);
    EXPECT_NEAR(r70.oracle, 1.0, 1e-4);
    EXPECT_EQ(r70.note, "deterministic-regime");

    const auto r60 = certify_two(deg(60));
    EXPECT_TRUE(r60.pass);
    EXPECT_NEAR(r60.closed_form, 0.875, 1e-12);
    EXPECT_NEAR(r60.oracle, 0.875, 1e-4);
    EXPECT_EQ(r60.note, "conjecture-consistent");

    const auto r90 = certify_two(deg(90));
    EXPECT_TRUE(r90.pass);
    EXPECT_NEAR(r90.oracle, 1.0, 1e-4);
}

TEST(certify_two, errors) {
    EXPECT_THROW(certify_two(deg(0)), Error);
}

TEST(audit_bound, local_usd_saturates) {
    for (std::size_t n = 1; n <= 4; ++n) {
        const auto theta = deg(45);
        const auto r = audit_bound(local_usd(theta, n), theta, n);
        EXPECT_TRUE(r.pass);
        EXPECT_NEAR(r.oracle, r.closed_form, 1e-10);
        EXPECT_EQ(r.note, "saturated");
    }
}

TEST(audit_bound, pbr_has_slack) {
    const auto theta = deg(45);
    const auto r = audit_bound(pbr_basis(theta), theta, 2);
    EXPECT_TRUE(r.pass);
    EXPECT_NEAR(r.oracle, 1.0, 1e-12);
    EXPECT_NEAR(r.closed_form, 1.08579, 5e-6);
    EXPECT_EQ(r.note, "slack");
}

TEST(audit_bound, eliminate_two_saturates_in_failing_regime) {
    for (double a : {20.0, 45.0, 60.0, 65.0}) {
        const auto theta = deg(a);
        const auto r = audit_bound(eliminate_two(theta), theta, 2);
        EXPECT_TRUE(r.pass);
        EXPECT_NEAR(r.oracle, 4 - std::pow(1 + theta.overlap(), 2), 1e-10) << a;
        EXPECT_NEAR(r.oracle, r.closed_form, 1e-10);
    }
}

TEST(audit_bound, all_schemes_across_domains) {
    for (auto id : all_schemes()) {
        const auto dom = scheme_domain(id);
        for (int k = 0; k <= 10; ++k) {
            double a = dom.min_deg + (dom.max_deg - dom.min_deg) * k / 10.0;
            if (!dom.contains(a)) continue;
            const auto theta = deg(a);
            const std::size_t n = scheme_qubits(id, 2);
            EXPECT_TRUE(audit_bound(build_scheme(id, theta, 2), theta, n).pass) << scheme_name(id) << " " << a;
        }
    }
}

TEST(audit_bound, rejects_invalid) {
    const auto theta = deg(45);
    Povm bad({{"x", ComplexMatrix::identity(4), ExclusionSet::of(2, {0})}});
    try {
        audit_bound(bad, theta, 2);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kInvalidPovm);
    }
    EXPECT_THROW(audit_bound(pbr_basis(theta), theta, 3), Error);
}

TEST(monte_carlo, pbr_frequencies) {
    const auto theta = deg(45);
    const auto r = monte_carlo(pbr_basis(theta), uniform_ensemble(theta, 2), 1'000'000, 7);
    ASSERT_EQ(r.frequencies.size(), 4u);
    for (double f : r.frequencies) EXPECT_NEAR(f, 0.25, 0.002);
    EXPECT_EQ(std::accumulate(r.counts.begin(), r.counts.end(), std::uint64_t{0}), r.shots);
    EXPECT_NEAR(r.empirical_avg_eliminated, 1.0, 1e-15);
}

TEST(monte_carlo, eliminate_two_fail_frequency) {
    const auto theta = deg(60);
    const auto r = monte_carlo(eliminate_two(theta), uniform_ensemble(theta, 2), 1'000'000, 11);
    ASSERT_EQ(r.labels.back(), "fail");
    EXPECT_NEAR(r.frequencies.back(), 0.125, 0.002);
    for (std::size_t i = 0; i < r.analytic.size(); ++i) {
        const double p = r.analytic[i];
        EXPECT_LE(std::abs(r.frequencies[i] - p), 5 * std::sqrt(p * (1 - p) / 1e6) + 1e-15);
    }
}

TEST(monte_carlo, invariant_to_worker_count) {
    const auto theta = deg(45);
    const auto p = local_usd(theta, 2);
    const auto e = uniform_ensemble(theta, 2);
    const auto a = monte_carlo(p, e, 300'001, 3, 1);
    const auto b = monte_carlo(p, e, 300'001, 3, 4);
    const auto c = monte_carlo(p, e, 300'001, 3, 7);
    EXPECT_EQ(a.counts, b.counts);
    EXPECT_EQ(a.counts, c.counts);
    EXPECT_EQ(a.frequencies, c.frequencies);
    const auto d = monte_carlo(p, e, 300'001, 4, 1);
    EXPECT_NE(a.counts, d.counts);
}

TEST(monte_carlo, single_shot) {
    const auto theta = deg(30);
    const auto p = eliminate_one(theta);
    const auto e = uniform_ensemble(theta, 2);
    const auto r = monte_carlo(p, e, 1, 99);
    EXPECT_EQ(std::count(r.counts.begin(), r.counts.end(), 1u), 1);
    EXPECT_EQ(std::accumulate(r.counts.begin(), r.counts.end(), std::uint64_t{0}), 1u);
    EXPECT_EQ(monte_carlo(p, e, 1, 99).counts, r.counts);
}

TEST(monte_carlo, errors) {
    const auto theta = deg(45);
    EXPECT_THROW(monte_carlo(pbr_basis(theta), uniform_ensemble(theta, 2), 0, 1), Error);
    Povm bad({{"x", ComplexMatrix::identity(4), ExclusionSet::of(2, {0})}});
    EXPECT_THROW(monte_carlo(bad, uniform_ensemble(theta, 2), 10, 1), Error);
}

TEST(split_mix64, known_sequence_and_unit_range) {
    // Reference outputs of SplitMix64 seeded with 0.
    SplitMix64 g(0);
    EXPECT_EQ(g.next(), 0xe220a8397b1dcdafULL);
    EXPECT_EQ(g.next(), 0x6e789e6aa1b965f4ULL);
    SplitMix64 u(5);
    for (int k = 0; k < 1000; ++k) {
        const double x = u.next_unit();
        EXPECT_GE(x, 0.0);
        EXPECT_LT(x, 1.0);
    }
}
