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

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tensor.hpp"

namespace steerbound {

/// Single-qubit Bloch vector (r_x, r_y, r_z).
using Bloch = std::array<double, 3>;

inline double bloch_norm(const Bloch &r) {
    return std::sqrt(r[0] * r[0] + r[1] * r[1] + r[2] * r[2]);
}

/// Normalized state vector over 2^n computational basis states.
struct PureState {
    std::vector<Complex> amplitudes;

    [[nodiscard]] std::size_t dim() const noexcept { return amplitudes.size(); }

    [[nodiscard]] double norm() const {
        double s = 0.0;
        for (const auto &a : amplitudes) {
            s += std::norm(a);
        }
        return std::sqrt(s);
    }
};

/// |psi><psi|
inline CMatrix density(const PureState &psi) {
    const std::size_t n = psi.dim();
    CMatrix rho(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            rho(i, j) = psi.amplitudes[i] * std::conj(psi.amplitudes[j]);
        }
    }
    return rho;
}

inline PureState ghz(int parties) {
    if (parties < 2) {
        throw std::invalid_argument("ghz: need at least 2 parties, got " +
                                    std::to_string(parties));
    }
    if (parties > 12) {
        throw std::invalid_argument("ghz: at most 12 parties supported");
    }
    const std::size_t dim = std::size_t{1} << parties;
    PureState psi{std::vector<Complex>(dim)};
    psi.amplitudes.front() = std::numbers::sqrt2 / 2.0;
    psi.amplitudes.back() = std::numbers::sqrt2 / 2.0;
    return psi;
}

/// p |GHZ_N><GHZ_N| + (1 - p) I / 2^N
inline CMatrix depolarized_ghz(int parties, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("depolarized_ghz: p must lie in [0, 1]");
    }
    CMatrix rho = density(ghz(parties));
    rho *= p;
    const double mixed = (1.0 - p) / static_cast<double>(rho.dim());
    for (std::size_t i = 0; i < rho.dim(); ++i) {
        rho(i, i) += mixed;
    }
    return rho;
}

/// (I + r . sigma) / 2
inline CMatrix qubit_state(const Bloch &r) {
    if (bloch_norm(r) > 1.0 + 1e-12) {
        throw std::invalid_argument("qubit_state: Bloch vector longer than 1");
    }
    return CMatrix{{0.5 * (1.0 + r[2]), 0.5 * Complex{r[0], -r[1]}},
                   {0.5 * Complex{r[0], r[1]}, 0.5 * (1.0 - r[2])}};
}

/// Tensor product of single-qubit states, party 1 leftmost.
inline CMatrix product_state(std::span<const Bloch> blochs) {
    if (blochs.empty()) {
        throw std::invalid_argument("product_state: no parties");
    }
    CMatrix rho = qubit_state(blochs.front());
    for (std::size_t k = 1; k < blochs.size(); ++k) {
        rho = kron(rho, qubit_state(blochs[k]));
    }
    return rho;
}

inline CMatrix product_state(std::initializer_list<Bloch> blochs) {
    return product_state(std::span<const Bloch>(blochs.begin(), blochs.size()));
}

/// Haar-random pure state from normalized complex Gaussians; same seed,
/// same state.
inline PureState random_pure(int parties, std::uint64_t seed) {
    if (parties < 1 || parties > 12) {
        throw std::invalid_argument("random_pure: parties must be in [1, 12]");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t dim = std::size_t{1} << parties;
    PureState psi{std::vector<Complex>(dim)};
    double s = 0.0;
    for (auto &a : psi.amplitudes) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        a = {re, im};
        s += re * re + im * im;
    }
    const double inv = 1.0 / std::sqrt(s);
    for (auto &a : psi.amplitudes) {
        a *= inv;
    }
    return psi;
}

} // namespace steerbound
