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
#ifndef QELIM_MATRIX_H
#define QELIM_MATRIX_H

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qelim {

using cplx = std::complex<double>;

/// Hermiticity tolerance used by eig_hermitian and ComplexMatrix::is_hermitian.
inline constexpr double kHermitianTol = 1e-12;

/// Dense complex matrix, row-major, 0-based.
///
/// Dimensions in this library stay at or below 2^10, so everything is kept
/// in a single contiguous buffer and operations are plain loops.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    /// Zero matrix.
    ComplexMatrix(std::size_t rows, std::size_t cols);
    /// Takes ownership of `entries` (row-major); throws DimensionMismatch if
    /// rows*cols != entries.size().
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const double> diag);

    std::size_t rows() const noexcept {
        return rows_;
    }
    std::size_t cols() const noexcept {
        return cols_;
    }
    bool is_square() const noexcept {
        return rows_ == cols_;
    }
    std::span<const cplx> entries() const noexcept {
        return entries_;
    }

    cplx &operator()(std::size_t r, std::size_t c) {
        return entries_[r * cols_ + c];
    }
    const cplx &operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }

    ComplexMatrix adjoint() const;
    cplx trace() const;
    double frobenius_norm() const;
    /// max |A[i][j] - conj(A[j][i])|; infinity for non-square matrices.
    double hermiticity_residual() const;
    bool is_hermitian(double tol = kHermitianTol) const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(cplx scale);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
        a += b;
        return a;
    }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
        a -= b;
        return a;
    }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx scale) {
        a *= scale;
        return a;
    }
    friend ComplexMatrix operator*(cplx scale, ComplexMatrix a) {
        a *= scale;
        return a;
    }
    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

    bool operator==(const ComplexMatrix &other) const = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> entries_;
};

/// Kronecker product; entry ((i*b.rows+k), (j*b.cols+l)) = a[i][j] * b[k][l].
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

/// Rank-one matrix |x><y|.
ComplexMatrix outer(std::span<const cplx> x, std::span<const cplx> y);

/// Frobenius distance. Throws DimensionMismatch on unequal shapes.
double frob_dist(const ComplexMatrix &a, const ComplexMatrix &b);

/// <x|y>, conjugate-linear in x.
cplx inner(std::span<const cplx> x, std::span<const cplx> y);

/// Matrix-vector product.
std::vector<cplx> apply(const ComplexMatrix &a, std::span<const cplx> x);

/// Re <x|A|x>.
double expectation(const ComplexMatrix &a, std::span<const cplx> x);

/// Kronecker product of vectors.
std::vector<cplx> kron(std::span<const cplx> x, std::span<const cplx> y);

struct HermitianEigen {
    /// Ascending.
    std::vector<double> values;
    /// Column k is the eigenvector for values[k].
    ComplexMatrix vectors;
    std::size_t sweeps = 0;
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Iterates full sweeps of two-sided complex Jacobi rotations until the
/// off-diagonal Frobenius mass drops below 1e-14 (scaled by the matrix norm
/// when that exceeds one) or 100 sweeps pass. Throws NotHermitian if the
/// input fails is_hermitian().
HermitianEigen eigh(const ComplexMatrix &a);

/// Eigenvalues only, ascending. See eigh.
std::vector<double> eig_hermitian(const ComplexMatrix &a);

}  // namespace qelim

#endif
