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
#include "qelim/matrix.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "qelim/error.h"

using namespace qelim;

namespace {

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, j) = cplx{g(rng), g(rng)};
        }
    }
    return m * cplx{1.0 / m.frobenius_norm(), 0.0};
}

ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64 &rng) {
    auto m = random_matrix(n, n, rng);
    return 0.5 * (m + m.adjoint());
}

double max_entry_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    double worst = 0;
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        worst = std::max(worst, std::abs(a.entries()[k] - b.entries()[k]));
    }
    return worst;
}

}  // namespace

TEST(kron, identity_and_diagonal) {
    EXPECT_EQ(kron(ComplexMatrix::identity(2), ComplexMatrix::identity(2)), ComplexMatrix::identity(4));

    std::vector<double> z = {1, -1};
    std::vector<double> expected = {1, 1, -1, -1};
    EXPECT_EQ(
        kron(ComplexMatrix::diagonal(z), ComplexMatrix::identity(2)), ComplexMatrix::diagonal(expected));
}

TEST(kron, projector_product_is_basis_projector) {
    std::vector<cplx> zero = {1, 0};
    std::vector<cplx> one = {0, 1};
    auto p = kron(outer(zero, zero), outer(one, one));
    // |01><01| in the order 00, 01, 10, 11: single one at (1, 1).
    ComplexMatrix expected(4, 4);
    expected(1, 1) = 1;
    EXPECT_EQ(p, expected);
}

TEST(kron, shape_and_index_law) {
    std::mt19937_64 rng(11);
    auto a = random_matrix(2, 3, rng);
    auto b = random_matrix(3, 2, rng);
    auto m = kron(a, b);
    ASSERT_EQ(m.rows(), 6u);
    ASSERT_EQ(m.cols(), 6u);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                    EXPECT_EQ(m(i * 3 + k, j * 2 + l), a(i, j) * b(k, l));
}

TEST(kron, associative_on_random_inputs) {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto a = random_matrix(2, 2, rng);
        auto b = random_matrix(2, 3, rng);
        auto c = random_matrix(3, 2, rng);
        EXPECT_LE(max_entry_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-14);
    }
}

TEST(outer, examples) {
    std::vector<cplx> zero = {1, 0};
    ComplexMatrix p0(2, 2);
    p0(0, 0) = 1;
    EXPECT_EQ(outer(zero, zero), p0);

    const double h = std::sqrt(0.5);
    std::vector<cplx> plus = {h, h};
    auto pp = outer(plus, plus);
    for (auto v : pp.entries()) {
        EXPECT_NEAR(v.real(), 0.5, 1e-15);
        EXPECT_EQ(v.imag(), 0.0);
    }

    std::vector<cplx> bell = {0, 1, 1, 0};
    auto m = outer(bell, bell);
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            const bool inner_block = (i == 1 || i == 2) && (j == 1 || j == 2);
            EXPECT_EQ(m(i, j), cplx(inner_block ? 1.0 : 0.0));
        }
    }
}

TEST(outer, conjugates_second_argument) {
    std::vector<cplx> x = {cplx{0, 1}};
    std::vector<cplx> y = {cplx{0, 1}};
    EXPECT_EQ(outer(x, y)(0, 0), cplx(1.0));
}

TEST(frob_dist, examples) {
    EXPECT_EQ(frob_dist(ComplexMatrix::identity(4), ComplexMatrix::identity(4)), 0.0);
    EXPECT_NEAR(frob_dist(ComplexMatrix(2, 2), ComplexMatrix::identity(2)), std::sqrt(2.0), 1e-15);
    std::vector<double> d0 = {1, 0};
    std::vector<double> d1 = {0, 1};
    EXPECT_NEAR(frob_dist(ComplexMatrix::diagonal(d0), ComplexMatrix::diagonal(d1)), std::sqrt(2.0), 1e-15);
}

TEST(frob_dist, dimension_mismatch) {
    try {
        frob_dist(ComplexMatrix(2, 2), ComplexMatrix(4, 4));
        FAIL() << "expected DimensionMismatch";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kDimensionMismatch);
    }
}

TEST(matrix, constructor_checks_entry_count) {
    EXPECT_THROW(ComplexMatrix(2, 2, std::vector<cplx>(3)), Error);
}

TEST(eig_hermitian, examples) {
    std::vector<double> d = {1, 2};
    auto ev = eig_hermitian(ComplexMatrix::diagonal(d));
    ASSERT_EQ(ev.size(), 2u);
    EXPECT_NEAR(ev[0], 1.0, 1e-15);
    EXPECT_NEAR(ev[1], 2.0, 1e-15);

    ComplexMatrix x(2, 2, {0, 1, 1, 0});
    ev = eig_hermitian(x);
    EXPECT_NEAR(ev[0], -1.0, 1e-14);
    EXPECT_NEAR(ev[1], 1.0, 1e-14);

    std::vector<cplx> psi = {cplx{0.5, 0.1}, cplx{-0.3, 0.4}, cplx{0.2, -0.2}, cplx{0.1, 0.0}};
    double n2 = 0;
    for (auto a : psi) n2 += std::norm(a);
    for (auto &a : psi) a /= std::sqrt(n2);
    ev = eig_hermitian(outer(psi, psi));
    ASSERT_EQ(ev.size(), 4u);
    for (int k = 0; k < 3; ++k) {
        EXPECT_NEAR(ev[k], 0.0, 1e-14);
    }
    EXPECT_NEAR(ev[3], 1.0, 1e-14);
}

TEST(eig_hermitian, pauli_y_has_complex_entries) {
    ComplexMatrix y(2, 2, {0, cplx{0, -1}, cplx{0, 1}, 0});
    auto ev = eig_hermitian(y);
    EXPECT_NEAR(ev[0], -1.0, 1e-14);
    EXPECT_NEAR(ev[1], 1.0, 1e-14);
}

TEST(eig_hermitian, rejects_non_hermitian) {
    ComplexMatrix m(2, 2, {0, 1, 0, 0});
    try {
        eig_hermitian(m);
        FAIL() << "expected NotHermitian";
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kNotHermitian);
    }
    EXPECT_THROW(eig_hermitian(ComplexMatrix(2, 3)), Error);
}

TEST(eig_hermitian, trace_and_reconstruction_on_random_inputs) {
    std::mt19937_64 rng(2024);
    for (std::size_t n = 1; n <= 16; ++n) {
        auto a = random_hermitian(n, rng) * cplx{3.0, 0.0};
        auto eig = eigh(a);
        double sum = 0;
        for (double v : eig.values) sum += v;
        EXPECT_NEAR(sum, a.trace().real(), 1e-10) << "n=" << n;
        EXPECT_TRUE(std::is_sorted(eig.values.begin(), eig.values.end()));

        auto rebuilt = eig.vectors * ComplexMatrix::diagonal(eig.values) * eig.vectors.adjoint();
        EXPECT_LE(frob_dist(rebuilt, a), 1e-10) << "n=" << n;
        EXPECT_LE(frob_dist(eig.vectors.adjoint() * eig.vectors, ComplexMatrix::identity(n)), 1e-12);
        EXPECT_LE(eig.sweeps, 100u);
    }
}

TEST(eig_hermitian, kron_with_identity_doubles_multiplicity) {
    std::mt19937_64 rng(7);
    for (std::size_t n : {2u, 3u, 5u, 8u}) {
        auto a = random_hermitian(n, rng);
        auto base = eig_hermitian(a);
        auto doubled = eig_hermitian(kron(a, ComplexMatrix::identity(2)));
        ASSERT_EQ(doubled.size(), 2 * n);
        for (std::size_t k = 0; k < n; ++k) {
            EXPECT_NEAR(doubled[2 * k], base[k], 1e-12);
            EXPECT_NEAR(doubled[2 * k + 1], base[k], 1e-12);
        }
    }
}

TEST(eig_hermitian, large_dimension) {
    std::mt19937_64 rng(3);
    auto a = random_hermitian(64, rng);
    auto eig = eigh(a);
    auto rebuilt = eig.vectors * ComplexMatrix::diagonal(eig.values) * eig.vectors.adjoint();
    EXPECT_LE(frob_dist(rebuilt, a), 1e-10);
}
