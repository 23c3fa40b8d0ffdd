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
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "tensor.hpp"

/**
 * @file observables.hpp
 * Ideal Pauli observables and their imprecise (tilted) laboratory versions.
 *
 * A laboratory observable is modelled as q * target + sqrt(1 - q^2) * other,
 * where the "other" direction is the partner Pauli (sigma_y for the x
 * setting, sigma_x for the y setting). That is the direction that maximizes
 * the trusted-party correlation, so bounds computed with it are worst case.
 */

namespace steerbound {

/// Largest admissible imprecision, (2 - sqrt 2) / 4. At this value q = sqrt 2 / 2.
inline constexpr double kMaxImprecision = (2.0 - std::numbers::sqrt2) / 4.0;
inline constexpr double kMinAlignment = std::numbers::sqrt2 / 2.0;

namespace detail {
inline constexpr double kRangeSlack = 1e-12;
} // namespace detail

/// Fidelity deficit of a laboratory measurement, 0 <= eps <= (2 - sqrt 2) / 4.
class Imprecision {
  public:
    constexpr Imprecision() = default;

    explicit Imprecision(double eps) : eps_{eps} {
        if (!(eps >= -detail::kRangeSlack &&
              eps <= kMaxImprecision + detail::kRangeSlack)) {
            throw std::invalid_argument(
                "imprecision " + std::to_string(eps) +
                " outside [0, (2 - sqrt 2) / 4]");
        }
        eps_ = std::clamp(eps, 0.0, kMaxImprecision);
    }

    [[nodiscard]] constexpr double value() const noexcept { return eps_; }

    /// sqrt(eps (1 - eps))
    [[nodiscard]] double root() const { return std::sqrt(eps_ * (1.0 - eps_)); }

    /// Extremal device alignment 1 - 2 eps.
    [[nodiscard]] double worst_alignment() const { return 1.0 - 2.0 * eps_; }

  private:
    double eps_ = 0.0;
};

/// Coefficient of the target observable inside its laboratory version.
class AlignmentFactor {
  public:
    explicit AlignmentFactor(double q = 1.0) : q_{q} {
        if (!(q >= kMinAlignment - detail::kRangeSlack &&
              q <= 1.0 + detail::kRangeSlack)) {
            throw std::invalid_argument("alignment factor " +
                                        std::to_string(q) +
                                        " outside [sqrt 2 / 2, 1]");
        }
        q_ = std::clamp(q, kMinAlignment, 1.0);
    }

    /// q = 1 - 2 eps, the device alignment the imprecision bound allows.
    static AlignmentFactor worst_case(Imprecision eps) {
        return AlignmentFactor(eps.worst_alignment());
    }

    [[nodiscard]] double value() const noexcept { return q_; }

    /// sqrt(1 - q^2), weight of the orthogonal component.
    [[nodiscard]] double orthogonal() const {
        return std::sqrt(std::max(0.0, 1.0 - q_ * q_));
    }

  private:
    double q_ = 1.0;
};

enum class Axis { X, Y, Z };

inline Axis parse_axis(char c) {
    switch (c) {
    case 'x':
    case 'X':
        return Axis::X;
    case 'y':
    case 'Y':
        return Axis::Y;
    case 'z':
    case 'Z':
        return Axis::Z;
    default:
        throw std::invalid_argument(std::string("unknown Pauli axis '") + c +
                                    "'");
    }
}

inline CMatrix pauli(Axis axis) {
    using namespace std::complex_literals;
    switch (axis) {
    case Axis::X:
        return CMatrix{{0.0, 1.0}, {1.0, 0.0}};
    case Axis::Y:
        return CMatrix{{0.0, -1i}, {1i, 0.0}};
    case Axis::Z:
        return CMatrix{{1.0, 0.0}, {0.0, -1.0}};
    }
    throw std::invalid_argument("unknown Pauli axis");
}

inline CMatrix pauli(char axis) { return pauli(parse_axis(axis)); }

/// [q_min, q_max] compatible with a given fidelity deficit.
inline std::pair<double, double> eps_to_q_range(Imprecision eps) {
    return {eps.worst_alignment(), 1.0};
}

/// One party's two laboratory observables together with their alignment.
struct ObservablePair {
    CMatrix x_obs;
    CMatrix y_obs;
    AlignmentFactor q;
};

/// x = q sx + sqrt(1-q^2) sy,  y = q sy + sqrt(1-q^2) sx.
inline ObservablePair tilted_pair(AlignmentFactor q) {
    const double a = q.value();
    const double b = q.orthogonal();
    const CMatrix sx = pauli(Axis::X);
    const CMatrix sy = pauli(Axis::Y);
    return {a * sx + b * sy, a * sy + b * sx, q};
}

inline ObservablePair tilted_pair(double q) {
    return tilted_pair(AlignmentFactor(q));
}

inline ObservablePair ideal_pair() { return tilted_pair(AlignmentFactor(1.0)); }

namespace detail {
inline void require_pm1_observable(const CMatrix &m, const char *what) {
    if (m.dim() != 2) {
        throw std::invalid_argument(std::string(what) + ": not a 2x2 matrix");
    }
    if (!is_hermitian(m)) {
        throw std::invalid_argument(std::string(what) + ": not Hermitian");
    }
    const auto eig = hermitian_eigenvalues(m);
    if (std::abs(eig[0] + 1.0) > 1e-12 || std::abs(eig[1] - 1.0) > 1e-12) {
        throw std::invalid_argument(std::string(what) +
                                    ": spectrum is not {-1, +1}");
    }
}
} // namespace detail

/**
 * Imprecision implied by a laboratory observable relative to its target:
 * the eps for which Tr(target * lab) = 2 - 4 eps.
 */
inline double fidelity_gap(const CMatrix &target, const CMatrix &lab) {
    detail::require_pm1_observable(target, "fidelity_gap target");
    detail::require_pm1_observable(lab, "fidelity_gap lab");
    return (2.0 - trace_product(target, lab).real()) / 4.0;
}

enum class Sign { Minus, Plus };

inline constexpr double sign_value(Sign s) noexcept {
    return s == Sign::Plus ? 1.0 : -1.0;
}

/// x_obs + s i y_obs
inline CMatrix f_operator(const ObservablePair &pair, Sign sign) {
    return pair.x_obs + Complex{0.0, sign_value(sign)} * pair.y_obs;
}

} // namespace steerbound
