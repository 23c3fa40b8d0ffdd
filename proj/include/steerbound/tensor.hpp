// Copyright 2026 The steerbound Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

/**
 * @file tensor.hpp
 * Dense complex matrices for N-qubit operators.
 *
 * Everything here is sized for dimensions up to 2^12. Storage is row-major
 * and party 1 owns the leftmost Kronecker factor (most significant bit).
 */

namespace steerbound {

using Complex = std::complex<double>;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;

/// Square dense complex matrix, row-major.
class CMatrix {
  public:
    CMatrix() = default;

    explicit CMatrix(std::size_t dim) : dim_{dim}, data_(dim * dim) {
        if (dim == 0) {
            throw std::invalid_argument("CMatrix: dimension must be positive");
        }
    }

    CMatrix(std::size_t dim, std::vector<Complex> entries)
        : dim_{dim}, data_{std::move(entries)} {
        if (dim == 0 || data_.size() != dim * dim) {
            throw std::invalid_argument(
                "CMatrix: entry count does not match dim*dim");
        }
    }

    /// Row-by-row literal, e.g. `CMatrix{{0, 1}, {1, 0}}`.
    CMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
        : dim_{rows.size()} {
        data_.reserve(dim_ * dim_);
        for (const auto &row : rows) {
            if (row.size() != dim_) {
                throw std::invalid_argument("CMatrix: literal is not square");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static CMatrix identity(std::size_t dim) {
        CMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] bool empty() const noexcept { return dim_ == 0; }

    Complex &operator()(std::size_t row, std::size_t col) noexcept {
        return data_[row * dim_ + col];
    }
    const Complex &operator()(std::size_t row, std::size_t col) const noexcept {
        return data_[row * dim_ + col];
    }

    [[nodiscard]] std::span<const Complex> entries() const noexcept {
        return data_;
    }

    CMatrix &operator+=(const CMatrix &other) {
        require_same_dim(other, "operator+=");
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] += other.data_[i];
        }
        return *this;
    }

    CMatrix &operator-=(const CMatrix &other) {
        require_same_dim(other, "operator-=");
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] -= other.data_[i];
        }
        return *this;
    }

    CMatrix &operator*=(Complex scale) noexcept {
        for (auto &v : data_) {
            v *= scale;
        }
        return *this;
    }

    friend CMatrix operator+(CMatrix a, const CMatrix &b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix &b) { return a -= b; }
    friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }

    friend CMatrix operator*(const CMatrix &a, const CMatrix &b) {
        a.require_same_dim(b, "operator*");
        const std::size_t n = a.dim_;
        CMatrix out(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                const Complex aik = a(i, k);
                if (aik == Complex{}) {
                    continue;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    out(i, j) += aik * b(k, j);
                }
            }
        }
        return out;
    }

    friend bool operator==(const CMatrix &, const CMatrix &) = default;

  private:
    void require_same_dim(const CMatrix &other, const char *where) const {
        if (dim_ != other.dim_) {
            throw std::invalid_argument(std::string(where) +
                                        ": dimension mismatch (" +
                                        std::to_string(dim_) + " vs " +
                                        std::to_string(other.dim_) + ")");
        }
    }

    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

/// Kronecker product; `a` is the more significant factor.
inline CMatrix kron(const CMatrix &a, const CMatrix &b) {
    const std::size_t da = a.dim();
    const std::size_t db = b.dim();
    CMatrix out(da * db);
    for (std::size_t ia = 0; ia < da; ++ia) {
        for (std::size_t ja = 0; ja < da; ++ja) {
            const Complex s = a(ia, ja);
            if (s == Complex{}) {
                continue;
            }
            for (std::size_t ib = 0; ib < db; ++ib) {
                for (std::size_t jb = 0; jb < db; ++jb) {
                    out(ia * db + ib, ja * db + jb) = s * b(ib, jb);
                }
            }
        }
    }
    return out;
}

/// Left fold of kron over a non-empty list of factors.
inline CMatrix kron_all(std::span<const CMatrix> factors) {
    if (factors.empty()) {
        throw std::invalid_argument("kron_all: no factors");
    }
    CMatrix out = factors.front();
    for (std::size_t k = 1; k < factors.size(); ++k) {
        out = kron(out, factors[k]);
    }
    return out;
}

inline CMatrix adjoint(const CMatrix &a) {
    const std::size_t n = a.dim();
    CMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

inline Complex trace(const CMatrix &a) {
    Complex t{};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        t += a(i, i);
    }
    return t;
}

/// Tr(rho * op) without forming the product. `op` may be non-Hermitian.
inline Complex trace_product(const CMatrix &rho, const CMatrix &op) {
    if (rho.dim() != op.dim()) {
        throw std::invalid_argument("trace_product: dimension mismatch (" +
                                    std::to_string(rho.dim()) + " vs " +
                                    std::to_string(op.dim()) + ")");
    }
    const std::size_t n = rho.dim();
    Complex t{};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            t += rho(i, k) * op(k, i);
        }
    }
    return t;
}

/// Largest absolute entry of a - b.
inline double max_abs_diff(const CMatrix &a, const CMatrix &b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    }
    double m = 0.0;
    const auto ea = a.entries();
    const auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) {
        m = std::max(m, std::abs(ea[i] - eb[i]));
    }
    return m;
}

inline double frobenius_norm(const CMatrix &a) {
    double s = 0.0;
    for (const auto &v : a.entries()) {
        s += std::norm(v);
    }
    return std::sqrt(s);
}

inline bool is_hermitian(const CMatrix &a, double tol = kHermitianTol) {
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) {
                return false;
            }
        }
    }
    return true;
}

inline bool is_finite(const CMatrix &a) {
    return std::ranges::all_of(a.entries(), [](const Complex &v) {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    });
}

/**
 * Eigenvalues of a Hermitian matrix, ascending.
 *
 * Cyclic Jacobi: each (p, q) rotation first removes the phase of a(p, q)
 * and then applies a real Givens rotation. Sweeps stop once the
 * off-diagonal Frobenius norm drops below 1e-13 * ||A||_F, or after 100
 * sweeps.
 */
inline std::vector<double> hermitian_eigenvalues(const CMatrix &input) {
    if (!is_hermitian(input)) {
        throw std::invalid_argument(
            "hermitian_eigenvalues: matrix is not Hermitian");
    }
    const std::size_t n = input.dim();
    CMatrix a = input;

    const double threshold = 1e-13 * frobenius_norm(a);
    auto off_norm = [&a, n] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) {
                    s += std::norm(a(i, j));
                }
            }
        }
        return std::sqrt(s);
    };

    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps && off_norm() > threshold;
         ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0) {
                    continue;
                }
                const Complex phase = apq / r; // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = 0.5 * std::atan2(2.0 * r, app - aqq);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                const Complex sp = s * std::conj(phase); // s e^{-i phi}
                const Complex cp = c * std::conj(phase); // c e^{-i phi}

                // A <- A U with U = [[c, -s], [s e^{-i phi}, c e^{-i phi}]].
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp + sp * akq;
                    a(k, q) = -s * akp + cp * akq;
                }
                // A <- U^dagger A.
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(sp) * aqk;
                    a(q, k) = -s * apk + std::conj(cp) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) {
        eig[i] = a(i, i).real();
    }
    std::ranges::sort(eig);
    return eig;
}

/// Throws unless `rho` is a finite, Hermitian, unit-trace, PSD matrix.
inline void validate_density(const CMatrix &rho) {
    if (rho.empty()) {
        throw std::invalid_argument("density matrix: empty");
    }
    if (!is_finite(rho)) {
        throw std::invalid_argument("density matrix: non-finite entry");
    }
    if (!is_hermitian(rho)) {
        throw std::invalid_argument("density matrix: not Hermitian");
    }
    if (std::abs(trace(rho) - 1.0) > kTraceTol) {
        throw std::invalid_argument("density matrix: trace is not 1");
    }
    if (hermitian_eigenvalues(rho).front() < -kPsdTol) {
        throw std::invalid_argument("density matrix: negative eigenvalue");
    }
}

inline bool is_density(const CMatrix &rho) {
    try {
        validate_density(rho);
    } catch (const std::invalid_argument &) {
        return false;
    }
    return true;
}

inline bool is_power_of_two(std::size_t n) noexcept {
    return n != 0 && (n & (n - 1)) == 0;
}

} // namespace steerbound
