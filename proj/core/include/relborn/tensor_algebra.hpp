// Copyright 2026 The relborn Authors
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

#ifndef RELBORN_TENSOR_ALGEBRA_HPP
#define RELBORN_TENSOR_ALGEBRA_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace relborn {

using Complex = std::complex<double>;

/// Default tolerance for Hermiticity checks (max-abs of A - A^dagger).
inline constexpr double kHermitianTol = 1e-10;

/// Dense complex matrix, row-major. Entries are always finite.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    /// Zero matrix of the given shape.
    ComplexMatrix(std::size_t rows, std::size_t cols);
    /// Throws std::invalid_argument on a size mismatch or a non-finite entry.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    /// Nested-row literal, e.g. `ComplexMatrix{{1, 0}, {0, 1}}`.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(std::span<const Complex> diag);
    /// |v><w| for column vectors v, w.
    static ComplexMatrix outer(std::span<const Complex> v, std::span<const Complex> w);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    std::span<const Complex> entries() const { return data_; }

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scale);

    bool operator==(const ComplexMatrix&) const = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scale, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Ordered per-subsystem dimensions. Subsystem 0 is the most significant
/// index of the tensor-product basis: for two qubits |r1 r2> sits at 2*r1 + r2.
class SubsystemLayout {
   public:
    SubsystemLayout() = default;
    /// Throws std::invalid_argument if empty or any dim < 2.
    explicit SubsystemLayout(std::vector<std::size_t> dims);

    std::span<const std::size_t> dims() const { return dims_; }
    std::size_t count() const { return dims_.size(); }
    std::size_t dim(std::size_t subsystem) const;
    std::size_t total_dim() const;

    std::string to_string() const;
    bool operator==(const SubsystemLayout&) const = default;

   private:
    std::vector<std::size_t> dims_;
};

// Products ----------------------------------------------------------------

/// Kronecker product; `a` carries the most significant index.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<Complex> tensor_product(std::span<const Complex> a, std::span<const Complex> b);

ComplexMatrix adjoint(const ComplexMatrix& a);

/// Throws std::invalid_argument on inner-dimension mismatch.
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);
std::vector<Complex> mat_vec(const ComplexMatrix& a, std::span<const Complex> v);

/// Throws std::invalid_argument on a non-square input.
Complex trace(const ComplexMatrix& a);

/// Lifts a local operator on one subsystem to the full space, I x .. x op x .. x I.
ComplexMatrix embed(const ComplexMatrix& local_op, const SubsystemLayout& layout,
                    std::size_t subsystem);

/// Reduced operator on subsystem `keep`, tracing out every other subsystem.
ComplexMatrix partial_trace(const ComplexMatrix& rho, const SubsystemLayout& layout,
                            std::size_t keep);

// Norms and comparisons ----------------------------------------------------

double max_abs(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& a);
/// max |A - A^dagger|; +inf for non-square input.
double hermiticity_defect(const ComplexMatrix& a);
double vector_norm(std::span<const Complex> v);
Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket);

// Spectral ------------------------------------------------------------------

struct Eigensystem {
    /// Sorted descending.
    std::vector<double> values;
    /// Column k is the unit eigenvector for values[k].
    ComplexMatrix vectors;

    std::vector<Complex> vector(std::size_t k) const;
};

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Degenerate eigenspaces come back with an arbitrary orthonormal basis, so
/// callers comparing spectra should compare eigenvalue gaps, not vectors.
/// Throws std::invalid_argument if `a` is not Hermitian within `tol`.
Eigensystem hermitian_eigensystem(const ComplexMatrix& a, double tol = kHermitianTol);

/// exp(-i * h * phi) for Hermitian h, computed from the eigendecomposition.
ComplexMatrix exp_generator(const ComplexMatrix& h, double phi);

}  // namespace relborn

#endif  // RELBORN_TENSOR_ALGEBRA_HPP
