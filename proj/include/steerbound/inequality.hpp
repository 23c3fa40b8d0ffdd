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

#include <cmath>
#include <complex>
#include <numbers>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "observables.hpp"
#include "tensor.hpp"

/**
 * @file inequality.hpp
 * The multipartite correlation functional
 *
 *     L = |< prod_k (x_k + s_k i y_k) >|^2
 *
 * and its bounds for local-hidden-state models with T trusted and N - T
 * untrusted parties, with and without imprecise trusted measurements.
 *
 * Parties 1..T are the trusted ones throughout.
 */

namespace steerbound {

/// N parties, the first T trusted, with one imprecision per party.
class Scenario {
  public:
    Scenario(int n, int t, std::vector<Imprecision> eps)
        : n_{n}, t_{t}, eps_{std::move(eps)} {
        if (n < 1) {
            throw std::invalid_argument("scenario: need at least one party");
        }
        if (t < 0 || t > n) {
            throw std::invalid_argument("scenario: trusted count " +
                                        std::to_string(t) +
                                        " outside [0, " + std::to_string(n) +
                                        "]");
        }
        if (eps_.size() != static_cast<std::size_t>(n)) {
            throw std::invalid_argument(
                "scenario: need one imprecision per party");
        }
    }

    Scenario(int n, int t) : Scenario(n, t, std::vector<Imprecision>(n > 0 ? n : 0)) {}

    static Scenario uniform(int n, int t, Imprecision eps) {
        return {n, t, std::vector<Imprecision>(n > 0 ? n : 0, eps)};
    }

    [[nodiscard]] int parties() const noexcept { return n_; }
    [[nodiscard]] int trusted() const noexcept { return t_; }
    [[nodiscard]] int untrusted() const noexcept { return n_ - t_; }
    [[nodiscard]] std::span<const Imprecision> imprecision() const noexcept {
        return eps_;
    }

  private:
    int n_;
    int t_;
    std::vector<Imprecision> eps_;
};

class SignPattern {
  public:
    explicit SignPattern(std::vector<Sign> signs) : signs_{std::move(signs)} {}

    static SignPattern all_plus(int n) {
        return SignPattern(std::vector<Sign>(n, Sign::Plus));
    }
    static SignPattern all_minus(int n) {
        return SignPattern(std::vector<Sign>(n, Sign::Minus));
    }

    [[nodiscard]] std::size_t size() const noexcept { return signs_.size(); }
    [[nodiscard]] Sign operator[](std::size_t k) const { return signs_.at(k); }
    [[nodiscard]] std::span<const Sign> signs() const noexcept { return signs_; }

  private:
    std::vector<Sign> signs_;
};

/// N copies of the tilted pair at q = 1 - 2 eps.
inline std::vector<ObservablePair> device_pairs(int n, Imprecision eps) {
    return std::vector<ObservablePair>(
        n, tilted_pair(AlignmentFactor::worst_case(eps)));
}

/// Product operator prod_k f_k^{s_k} on 2^N dimensions.
inline CMatrix correlator(std::span<const ObservablePair> pairs,
                          const SignPattern &pattern) {
    if (pairs.empty() || pairs.size() != pattern.size()) {
        throw std::invalid_argument(
            "correlator: need one sign per observable pair");
    }
    CMatrix op = f_operator(pairs[0], pattern[0]);
    for (std::size_t k = 1; k < pairs.size(); ++k) {
        op = kron(op, f_operator(pairs[k], pattern[k]));
    }
    return op;
}

/// |Tr(rho prod_k f_k^{s_k})|^2
inline double l_value(const CMatrix &rho, std::span<const ObservablePair> pairs,
                      const SignPattern &pattern) {
    const CMatrix op = correlator(pairs, pattern);
    if (rho.dim() != op.dim()) {
        throw std::invalid_argument("l_value: state dimension " +
                                    std::to_string(rho.dim()) +
                                    " does not match " +
                                    std::to_string(pairs.size()) + " parties");
    }
    // PSD is left to the caller; the O(d^3) check is too costly per call.
    if (!is_hermitian(rho) || std::abs(trace(rho) - 1.0) > kTraceTol) {
        throw std::invalid_argument("l_value: rho is not a density matrix");
    }
    return std::norm(trace_product(rho, op));
}

inline double bound_ideal(const Scenario &s) {
    return std::ldexp(1.0, s.untrusted());
}

/**
 * Per-trusted-party inflation of the bound,
 * 1 + 4 sqrt(eps(1-eps)) - 8 eps sqrt(eps(1-eps)).
 *
 * Equal to 1 + 2 q sqrt(1 - q^2) at q = 1 - 2 eps, and to
 * (1 - 2 eps + 2 sqrt(eps(1-eps)))^2.
 */
inline double imprecision_factor(Imprecision eps) {
    const double r = eps.root();
    return 1.0 + 4.0 * r - 8.0 * eps.value() * r;
}

/// Bound with a separate imprecision for every trusted party.
inline double bound_imprecise_perparty(const Scenario &s) {
    double b = bound_ideal(s);
    const auto eps = s.imprecision();
    for (int k = 0; k < s.trusted(); ++k) {
        b *= imprecision_factor(eps[k]);
    }
    return b;
}

inline double bound_imprecise_uniform(const Scenario &s, Imprecision eps) {
    return bound_ideal(s) * std::pow(imprecision_factor(eps), s.trusted());
}

/// Leading-order form 2^{N-T} (1 + 4 sqrt eps)^T; an upper envelope of the
/// exact uniform bound.
inline double bound_first_order(const Scenario &s, Imprecision eps) {
    return bound_ideal(s) *
           std::pow(1.0 + 4.0 * std::sqrt(eps.value()), s.trusted());
}

/// i^n, exact for integer n.
inline Complex i_power(int n) {
    switch (((n % 4) + 4) % 4) {
    case 0:
        return {1.0, 0.0};
    case 1:
        return {0.0, 1.0};
    case 2:
        return {-1.0, 0.0};
    default:
        return {0.0, -1.0};
    }
}

/// (1-2eps)^N + i^N (2 sqrt(eps(1-eps)))^N: the GHZ correlator over 2^{N-1}.
inline Complex ghz_correlation(int n, Imprecision eps) {
    const double q = eps.worst_alignment();
    const double o = 2.0 * eps.root();
    return std::pow(q, n) + i_power(n) * std::pow(o, n);
}

/// Closed-form L for the GHZ state with all N devices at q = 1 - 2 eps.
inline double ghz_l_value(int n, Imprecision eps) {
    return std::ldexp(std::norm(ghz_correlation(n, eps)), 2 * n - 2);
}

/// Violation weight sqrt(L / B_eps) of the GHZ state, closed form.
inline double ghz_weight(const Scenario &s, Imprecision eps) {
    const int n = s.parties();
    const int t = s.trusted();
    if (t < 1) {
        throw std::invalid_argument(
            "ghz_weight: needs a trusted party; use di_weight for T = 0");
    }
    const double denom =
        std::pow(eps.worst_alignment() + 2.0 * eps.root(), t);
    return std::pow(2.0, (n + t - 2) / 2.0) *
           std::abs(ghz_correlation(n, eps)) / denom;
}

/// GHZ weight at the largest admissible imprecision, independent of T.
inline double ghz_weight_eps1(int n) {
    if (n < 2) {
        throw std::invalid_argument("ghz_weight_eps1: need n >= 2");
    }
    if (n % 2 == 1) {
        return std::numbers::sqrt2 / 2.0;
    }
    return n % 4 == 0 ? 1.0 : 0.0;
}

namespace detail {
inline void require_probability(double p, const char *where) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(where) +
                                    ": depolarizing parameter outside [0, 1]");
    }
}
} // namespace detail

/// W_d = p W_G for the depolarized GHZ state.
inline double depolarized_weight(const Scenario &s, Imprecision eps, double p) {
    detail::require_probability(p, "depolarized_weight");
    return p * ghz_weight(s, eps);
}

/// Device-independent weight: every party untrusted, so the bound stays 2^N
/// while L still feels the imprecise devices.
inline double di_weight(int n, Imprecision eps, double p) {
    detail::require_probability(p, "di_weight");
    if (n < 2) {
        throw std::invalid_argument("di_weight: need n >= 2");
    }
    return p * std::sqrt(ghz_l_value(n, eps) / std::ldexp(1.0, n));
}

enum class Method { Quantitative, DeviceIndependent };

inline std::string_view to_string(Method m) {
    return m == Method::Quantitative ? "quantitative" : "device-independent";
}

struct Threshold {
    Method method;
    double eps;
    /// Smallest p with W_d > 1; empty when W_d <= 1 on all of [0, 1].
    std::optional<double> p_star;

    [[nodiscard]] bool verifiable() const noexcept { return p_star.has_value(); }
};

/// W_d is linear in p, so the crossing is 1 / W(p = 1).
inline Threshold threshold_p(const Scenario &s, Imprecision eps,
                             Method method) {
    const double w = method == Method::Quantitative
                         ? depolarized_weight(s, eps, 1.0)
                         : di_weight(s.parties(), eps, 1.0);
    Threshold out{method, eps.value(), std::nullopt};
    if (w > 1.0) {
        out.p_star = 1.0 / w;
    }
    return out;
}

enum class Classification { NoViolation, FalsePositiveGap, Violation };

inline std::string_view to_string(Classification c) {
    switch (c) {
    case Classification::NoViolation:
        return "no-violation";
    case Classification::FalsePositiveGap:
        return "false-positive-gap";
    case Classification::Violation:
        return "violation";
    }
    return "unknown";
}

/// Where an observed L falls relative to the ideal and imprecise bounds.
inline Classification classify(double l, double bound_ideal_value,
                               double bound_imprecise_value) {
    if (l > bound_imprecise_value) {
        return Classification::Violation;
    }
    if (l > bound_ideal_value) {
        return Classification::FalsePositiveGap;
    }
    return Classification::NoViolation;
}

struct VerificationResult {
    double l_value = 0.0;
    double bound_ideal = 0.0;
    double bound_imprecise = 0.0;
    double weight = 0.0;
    Classification classification = Classification::NoViolation;
};

/**
 * Evaluate L for `rho` under the given device observables and compare it
 * against both bounds. The imprecise bound uses the scenario's per-party
 * imprecision for the trusted parties.
 *
 * A "violation" here means violation of the LHS(T, N) inequality. For
 * 1 <= T < N that is not by itself a certificate of steering.
 */
inline VerificationResult verify(const CMatrix &rho, const Scenario &s,
                                 std::span<const ObservablePair> pairs,
                                 const SignPattern &pattern) {
    if (pairs.size() != static_cast<std::size_t>(s.parties())) {
        throw std::invalid_argument(
            "verify: number of observable pairs differs from party count");
    }
    VerificationResult r;
    r.l_value = l_value(rho, pairs, pattern);
    r.bound_ideal = bound_ideal(s);
    r.bound_imprecise = bound_imprecise_perparty(s);
    r.weight = r.l_value > 0.0 ? std::sqrt(r.l_value / r.bound_imprecise) : 0.0;
    r.classification = classify(r.l_value, r.bound_ideal, r.bound_imprecise);
    return r;
}

} // namespace steerbound
