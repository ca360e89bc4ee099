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
#include "qelim/states.h"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"
#include "qelim/error.h"

using namespace qelim;

namespace {

AngleParam deg(double two_theta) {
    return AngleParam::from_two_theta_degrees(two_theta);
}

}  // namespace

TEST(AngleParam, conversion_and_range) {
    EXPECT_DOUBLE_EQ(deg(45).theta(), std::numbers::pi / 8);
    EXPECT_DOUBLE_EQ(deg(90).theta(), std::numbers::pi / 4);
    EXPECT_NEAR(deg(30).two_theta_degrees(), 30.0, 1e-12);
    EXPECT_THROW(deg(-1), Error);
    EXPECT_THROW(deg(90.5), Error);
    EXPECT_THROW(AngleParam::from_radians(1.0), Error);
    EXPECT_NO_THROW(deg(0));
}

TEST(qubit_state, examples) {
    auto s = qubit_state(deg(0), Sign::kPlus);
    EXPECT_EQ(s[0], cplx(1.0));
    EXPECT_EQ(s[1], cplx(0.0));

    const double h = std::sqrt(0.5);
    auto p = qubit_state(deg(90), Sign::kPlus);
    auto m = qubit_state(deg(90), Sign::kMinus);
    EXPECT_NEAR(p[0].real(), h, 1e-15);
    EXPECT_NEAR(p[1].real(), h, 1e-15);
    EXPECT_NEAR(m[1].real(), -h, 1e-15);

    auto q = qubit_state(deg(45), Sign::kPlus);
    EXPECT_NEAR(q[0].real(), 0.923880, 1e-6);
    EXPECT_NEAR(q[1].real(), 0.382683, 1e-6);
}

TEST(orth_state, examples) {
    auto o = orth_state(deg(0), Sign::kPlus);
    EXPECT_EQ(o[0], cplx(0.0));
    EXPECT_EQ(o[1], cplx(-1.0));
    EXPECT_NEAR(std::abs(inner(orth_state(deg(15), Sign::kPlus).amplitudes(),
                               qubit_state(deg(15), Sign::kPlus).amplitudes())),
                0.0, 1e-15);
    EXPECT_NEAR(std::abs(inner(qubit_state(deg(35), Sign::kMinus).amplitudes(),
                               orth_state(deg(35), Sign::kMinus).amplitudes())),
                0.0, 1e-15);
}

TEST(product_state, two_qubit_amplitudes) {
    const auto theta = deg(50);
    const double c = std::cos(theta.theta());
    const double s = std::sin(theta.theta());
    auto pp = product_state(theta, SignPattern::parse("++"));
    EXPECT_NEAR(pp[0].real(), c * c, 1e-15);
    EXPECT_NEAR(pp[1].real(), s * c, 1e-15);
    EXPECT_NEAR(pp[2].real(), s * c, 1e-15);
    EXPECT_NEAR(pp[3].real(), s * s, 1e-15);

    auto pm = product_state(theta, SignPattern::parse("+-"));
    EXPECT_NEAR(pm[0].real(), c * c, 1e-15);
    EXPECT_NEAR(pm[1].real(), -s * c, 1e-15);
    EXPECT_NEAR(pm[2].real(), s * c, 1e-15);
    EXPECT_NEAR(pm[3].real(), -s * s, 1e-15);

    auto zero = product_state(deg(0), SignPattern::parse("-+-"));
    ASSERT_EQ(zero.dim(), 8u);
    EXPECT_EQ(zero[0], cplx(1.0));
    for (std::size_t k = 1; k < 8; ++k) {
        EXPECT_EQ(zero[k], cplx(0.0));
    }
}

TEST(SignPattern, bit_zero_is_leftmost) {
    auto p = SignPattern::parse("-+");
    EXPECT_EQ(p.bits, 1u);
    EXPECT_EQ(p.to_string(), "-+");
    EXPECT_EQ(SignPattern(3, 6).to_string(), "+--");
    EXPECT_THROW(SignPattern(2, 4), Error);
    EXPECT_THROW(SignPattern::parse("+x"), Error);
}

TEST(uniform_ensemble, examples) {
    auto e = uniform_ensemble(deg(15), 2);
    ASSERT_EQ(e.size(), 4u);
    for (double p : e.priors()) {
        EXPECT_EQ(p, 0.25);
    }
    auto one = uniform_ensemble(deg(33), 1);
    ASSERT_EQ(one.size(), 2u);
    EXPECT_EQ(one.priors()[0], 0.5);
    EXPECT_NEAR(inner(one.states()[1].amplitudes(), one.states()[0].amplitudes()).real(),
                std::cos(deg(33).two_theta()), 1e-15);
}

TEST(Ensemble, rejects_bad_inputs) {
    std::vector<StateVector> two = {StateVector({1.0, 0.0}), StateVector({0.0, 1.0})};
    EXPECT_THROW(Ensemble(two, {0.5, 0.6}), Error);
    EXPECT_THROW(Ensemble(two, {1.5, -0.5}), Error);
    EXPECT_THROW(Ensemble(two, {1.0}), Error);
    std::vector<StateVector> mixed = {StateVector({1.0, 0.0}), StateVector({1.0, 0.0, 0.0, 0.0})};
    EXPECT_THROW(Ensemble(mixed, {0.5, 0.5}), Error);
    EXPECT_THROW(StateVector({1.0, 1.0}), Error);
    EXPECT_THROW(StateVector({1.0, 0.0, 0.0}), Error);
}

TEST(states_property, pair_overlap_is_cos_two_theta) {
    for (int k = 0; k < 100; ++k) {
        const auto theta = AngleParam::from_radians(std::numbers::pi / 4 * k / 99.0);
        const auto ov = inner(qubit_state(theta, Sign::kMinus).amplitudes(),
                              qubit_state(theta, Sign::kPlus).amplitudes());
        EXPECT_NEAR(ov.real(), std::cos(theta.two_theta()), 1e-12);
        EXPECT_NEAR(ov.imag(), 0.0, 1e-12);
    }
}

TEST(states_property, product_overlap_is_power_of_pair_overlap) {
    for (double two_theta : {0.0, 17.0, 45.0, 63.0, 90.0}) {
        const auto theta = deg(two_theta);
        const double pf = std::cos(theta.two_theta());
        for (std::size_t n = 1; n <= 4; ++n) {
            const std::uint64_t count = std::uint64_t{1} << n;
            for (std::uint64_t x = 0; x < count; ++x) {
                for (std::uint64_t y = 0; y < count; ++y) {
                    const SignPattern px(n, x);
                    const SignPattern py(n, y);
                    const auto ov = inner(product_state(theta, px).amplitudes(),
                                          product_state(theta, py).amplitudes());
                    const double expected = std::pow(pf, static_cast<double>(hamming_distance(px, py)));
                    EXPECT_NEAR(ov.real(), expected, 1e-12);
                    EXPECT_NEAR(ov.imag(), 0.0, 1e-12);
                }
            }
        }
    }
}

TEST(zero_plus_pair, orthogonal_complements) {
    auto pair = zero_plus_pair();
    EXPECT_NEAR(std::abs(inner(pair.plus.amplitudes(), pair.plus_orth.amplitudes())), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(inner(pair.minus.amplitudes(), pair.minus_orth.amplitudes())), 0.0, 1e-15);
    EXPECT_NEAR(inner(pair.plus.amplitudes(), pair.minus.amplitudes()).real(), std::sqrt(0.5), 1e-15);
}
