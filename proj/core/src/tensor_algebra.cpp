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

#include "relborn/tensor_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace relborn {

namespace {

std::string shape(const ComplexMatrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch " + shape(a) + " vs " +
                                    shape(b));
    }
}

}  // namespace

// ComplexMatrix ---------------------------------------------------------------

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) {
        throw std::invalid_argument("ComplexMatrix: expected " + std::to_string(rows_ * cols_) +
                                    " entries, got " + std::to_string(data_.size()));
    }
    for (const Complex& z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("ComplexMatrix: non-finite entry");
        }
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    std::vector<Complex> entries;
    entries.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw std::invalid_argument("ComplexMatrix: ragged row literal");
        }
        entries.insert(entries.end(), row.begin(), row.end());
    }
    *this = ComplexMatrix(rows_, cols_, std::move(entries));
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
    const std::size_t n = diag.size();
    std::vector<Complex> entries(n * n);
    for (std::size_t i = 0; i < n; ++i) entries[i * n + i] = diag[i];
    return ComplexMatrix(n, n, std::move(entries));
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v, std::span<const Complex> w) {
    ComplexMatrix m(v.size(), w.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < w.size(); ++j) m(i, j) = v[i] * std::conj(w[j]);
    }
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "operator+");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "operator-");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
    for (Complex& z : data_) z *= scale;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex scale, ComplexMatrix a) { return a *= scale; }
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return multiply(a, b); }

// SubsystemLayout -------------------------------------------------------------

SubsystemLayout::SubsystemLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
    if (dims_.empty()) throw std::invalid_argument("SubsystemLayout: no subsystems");
    for (std::size_t d : dims_) {
        if (d < 2) throw std::invalid_argument("SubsystemLayout: subsystem dimension < 2");
    }
}

std::size_t SubsystemLayout::dim(std::size_t subsystem) const {
    if (subsystem >= dims_.size()) {
        throw std::out_of_range("SubsystemLayout: subsystem index " + std::to_string(subsystem) +
                                " out of range for " + to_string());
    }
    return dims_[subsystem];
}

std::size_t SubsystemLayout::total_dim() const {
    return std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
}

std::string SubsystemLayout::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < dims_.size(); ++i) os << (i ? "x" : "") << dims_[i];
    return os.str();
}

// Products --------------------------------------------------------------------

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i1 = 0; i1 < a.rows(); ++i1) {
        for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
            const Complex s = a(i1, j1);
            for (std::size_t i2 = 0; i2 < b.rows(); ++i2) {
                for (std::size_t j2 = 0; j2 < b.cols(); ++j2) {
                    out(i1 * b.rows() + i2, j1 * b.cols() + j2) = s * b(i2, j2);
                }
            }
        }
    }
    return out;
}

std::vector<Complex> tensor_product(std::span<const Complex> a, std::span<const Complex> b) {
    std::vector<Complex> out;
    out.reserve(a.size() * b.size());
    for (Complex x : a) {
        for (Complex y : b) out.push_back(x * y);
    }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    }
    return out;
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("multiply: inner dimension mismatch " + shape(a) + " * " +
                                    shape(b));
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex s = a(i, k);
            if (s == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += s * b(k, j);
        }
    }
    return out;
}

std::vector<Complex> mat_vec(const ComplexMatrix& a, std::span<const Complex> v) {
    if (a.cols() != v.size()) {
        throw std::invalid_argument("mat_vec: matrix " + shape(a) + " on vector of length " +
                                    std::to_string(v.size()));
    }
    std::vector<Complex> out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex acc{};
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

Complex trace(const ComplexMatrix& a) {
    if (!a.is_square()) throw std::invalid_argument("trace: non-square matrix " + shape(a));
    Complex acc{};
    for (std::size_t i = 0; i < a.rows(); ++i) acc += a(i, i);
    return acc;
}

ComplexMatrix embed(const ComplexMatrix& local_op, const SubsystemLayout& layout,
                    std::size_t subsystem) {
    const std::size_t d = layout.dim(subsystem);
    if (local_op.rows() != d || local_op.cols() != d) {
        throw std::invalid_argument("embed: operator " + shape(local_op) + " does not act on a " +
                                    std::to_string(d) + "-dim subsystem");
    }
    ComplexMatrix out = ComplexMatrix::identity(1);
    for (std::size_t s = 0; s < layout.count(); ++s) {
        out = tensor_product(out, s == subsystem ? local_op : ComplexMatrix::identity(layout.dim(s)));
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const SubsystemLayout& layout,
                            std::size_t keep) {
    const std::size_t n = layout.total_dim();
    if (!rho.is_square() || rho.rows() != n) {
        throw std::invalid_argument("partial_trace: matrix " + shape(rho) +
                                    " does not match layout " + layout.to_string());
    }
    const std::size_t dk = layout.dim(keep);
    std::size_t stride = 1;
    for (std::size_t s = keep + 1; s < layout.count(); ++s) stride *= layout.dim(s);

    ComplexMatrix out(dk, dk);
    for (std::size_t base = 0; base < n; ++base) {
        // Visit each assignment of the traced-out indices once, with digit `keep` = 0.
        if ((base / stride) % dk != 0) continue;
        for (std::size_t a = 0; a < dk; ++a) {
            for (std::size_t b = 0; b < dk; ++b) {
                out(a, b) += rho(base + a * stride, base + b * stride);
            }
        }
    }
    return out;
}

// Norms -------------------------------------------------------------------------

double max_abs(const ComplexMatrix& a) {
    double m = 0.0;
    for (Complex z : a.entries()) m = std::max(m, std::abs(z));
    return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return m;
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (Complex z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

double hermiticity_defect(const ComplexMatrix& a) {
    if (!a.is_square()) return std::numeric_limits<double>::infinity();
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i; j < a.cols(); ++j) {
            m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
        }
    }
    return m;
}

double vector_norm(std::span<const Complex> v) {
    double s = 0.0;
    for (Complex z : v) s += std::norm(z);
    return std::sqrt(s);
}

Complex inner_product(std::span<const Complex> bra, std::span<const Complex> ket) {
    if (bra.size() != ket.size()) throw std::invalid_argument("inner_product: length mismatch");
    Complex acc{};
    for (std::size_t i = 0; i < bra.size(); ++i) acc += std::conj(bra[i]) * ket[i];
    return acc;
}

// Spectral ------------------------------------------------------------------------

std::vector<Complex> Eigensystem::vector(std::size_t k) const {
    std::vector<Complex> v(vectors.rows());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = vectors(i, k);
    return v;
}

Eigensystem hermitian_eigensystem(const ComplexMatrix& a, double tol) {
    const double defect = hermiticity_defect(a);
    if (!(defect <= tol)) {
        throw std::invalid_argument("hermitian_eigensystem: matrix is not Hermitian (defect " +
                                    std::to_string(defect) + ")");
    }
    const std::size_t n = a.rows();
    ComplexMatrix m = 0.5 * (a + adjoint(a));
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(1.0, frobenius_norm(m));
    const double stop = 1e-15 * scale;
    constexpr int kMaxSweeps = 100;

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(m(p, q));
        }
        if (std::sqrt(off) <= stop) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double r = std::abs(m(p, q));
                if (r == 0.0) continue;
                // Phase-rotate q so the pivot becomes real, then apply a real
                // Jacobi rotation. G = diag(1, e^{-i theta}) * [[c, s], [-s, c]].
                const Complex phase = std::conj(m(p, q)) / r;
                const double app = m(p, p).real();
                const double aqq = m(q, q).real();
                const double theta = (aqq - app) / (2.0 * r);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Complex gpp = c, gpq = s, gqp = -s * phase, gqq = c * phase;

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = mkp * gpp + mkq * gqp;
                    m(k, q) = mkp * gpq + mkq * gqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = std::conj(gpp) * mpk + std::conj(gqp) * mqk;
                    m(q, k) = std::conj(gpq) * mpk + std::conj(gqq) * mqk;
                }
                m(p, q) = m(q, p) = 0.0;
                m(p, p) = m(p, p).real();
                m(q, q) = m(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * gpp + vkq * gqp;
                    v(k, q) = vkp * gpq + vkq * gqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return m(i, i).real() > m(j, j).real();
    });

    Eigensystem out;
    out.values.reserve(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        out.values.push_back(m(src, src).real());
        // Fix the global phase: largest-magnitude component real and positive.
        std::size_t pivot = 0;
        for (std::size_t i = 1; i < n; ++i) {
            if (std::abs(v(i, src)) > std::abs(v(pivot, src)) + 1e-14) pivot = i;
        }
        const Complex ph = std::conj(v(pivot, src)) / std::abs(v(pivot, src));
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, src) * ph;
    }
    return out;
}

ComplexMatrix exp_generator(const ComplexMatrix& h, double phi) {
    const Eigensystem es = hermitian_eigensystem(h);
    const std::size_t n = h.rows();
    std::vector<Complex> phases(n);
    for (std::size_t k = 0; k < n; ++k) phases[k] = std::polar(1.0, -es.values[k] * phi);
    return es.vectors * ComplexMatrix::diagonal(phases) * adjoint(es.vectors);
}

}  // namespace relborn
