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
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "inequality.hpp"
#include "observables.hpp"
#include "states.hpp"
#include "tensor.hpp"

/**
 * @file adversary.hpp
 * Explicit local-hidden-state models and a randomized search for the model
 * that maximizes the correlation functional.
 *
 * Trusted parties hold a qubit state per hidden variable. Untrusted parties
 * answer deterministically with (x, y) in {-1, +1}^2; every response
 * function is a mixture of these, and the functional is maximized on
 * extreme points, so nothing is lost for bound testing.
 */

namespace steerbound {

/// Outcomes an untrusted party reports for its two settings.
struct Response {
    int x = 1;
    int y = 1;

    friend bool operator==(const Response &, const Response &) = default;
};

/// One value of the hidden variable.
struct HiddenComponent {
    std::vector<Bloch> trusted;     // T Bloch vectors, |r| <= 1
    std::vector<Response> untrusted; // N - T deterministic responses

    friend bool operator==(const HiddenComponent &,
                           const HiddenComponent &) = default;
};

struct LHSModel {
    std::vector<double> weights;
    std::vector<HiddenComponent> components;

    friend bool operator==(const LHSModel &, const LHSModel &) = default;
};

inline void validate_model(const LHSModel &model, const Scenario &s) {
    if (model.weights.empty() ||
        model.weights.size() != model.components.size()) {
        throw std::invalid_argument("LHS model: weights and components differ");
    }
    double total = 0.0;
    for (double w : model.weights) {
        if (!(w >= 0.0)) {
            throw std::invalid_argument("LHS model: negative weight");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("LHS model: weights do not sum to 1");
    }
    for (const auto &c : model.components) {
        if (c.trusted.size() != static_cast<std::size_t>(s.trusted()) ||
            c.untrusted.size() != static_cast<std::size_t>(s.untrusted())) {
            throw std::invalid_argument(
                "LHS model: component shape does not match scenario");
        }
        for (const auto &r : c.trusted) {
            if (bloch_norm(r) > 1.0 + 1e-12) {
                throw std::invalid_argument(
                    "LHS model: trusted Bloch vector longer than 1");
            }
        }
        for (const auto &r : c.untrusted) {
            if ((r.x != 1 && r.x != -1) || (r.y != 1 && r.y != -1)) {
                throw std::invalid_argument(
                    "LHS model: untrusted response must be +-1");
            }
        }
    }
}

/// Tr(A rho(r)) = a0 + a . r for a 2x2 Hermitian A, with a_i = Tr(A sigma_i)/2.
struct QubitExpectation {
    double offset = 0.0;
    Bloch slope{};

    explicit QubitExpectation(const CMatrix &a) {
        offset = 0.5 * trace(a).real();
        slope = {0.5 * trace_product(a, pauli(Axis::X)).real(),
                 0.5 * trace_product(a, pauli(Axis::Y)).real(),
                 0.5 * trace_product(a, pauli(Axis::Z)).real()};
    }

    [[nodiscard]] double operator()(const Bloch &r) const noexcept {
        return offset + slope[0] * r[0] + slope[1] * r[1] + slope[2] * r[2];
    }
};

/**
 * Evaluates |sum_lambda p(lambda) prod_k <f_k^{s_k}>_lambda|^2 for models of
 * a fixed scenario. Observables only matter for the trusted parties.
 */
class ModelEvaluator {
  public:
    ModelEvaluator(const Scenario &s, std::span<const ObservablePair> pairs,
                   const SignPattern &pattern)
        : scenario_{s} {
        if (pairs.size() != static_cast<std::size_t>(s.parties()) ||
            pattern.size() != pairs.size()) {
            throw std::invalid_argument(
                "model evaluator: need N observable pairs and N signs");
        }
        for (int k = 0; k < s.parties(); ++k) {
            signs_.push_back(sign_value(pattern[k]));
        }
        for (int k = 0; k < s.trusted(); ++k) {
            x_.emplace_back(pairs[k].x_obs);
            y_.emplace_back(pairs[k].y_obs);
        }
    }

    /// <f_k^{s_k}>_lambda for trusted party k.
    [[nodiscard]] Complex trusted_factor(int k, const Bloch &r) const {
        return {x_[k](r), signs_[k] * y_[k](r)};
    }

    /// <f_k^{s_k}>_lambda for untrusted party k (global index).
    [[nodiscard]] Complex untrusted_factor(int k, const Response &r) const {
        return {static_cast<double>(r.x), signs_[k] * r.y};
    }

    [[nodiscard]] Complex component_value(const HiddenComponent &c) const {
        Complex v{1.0, 0.0};
        const int t = scenario_.trusted();
        for (int k = 0; k < t; ++k) {
            v *= trusted_factor(k, c.trusted[k]);
        }
        for (int k = t; k < scenario_.parties(); ++k) {
            v *= untrusted_factor(k, c.untrusted[k - t]);
        }
        return v;
    }

    [[nodiscard]] double operator()(const LHSModel &model) const {
        Complex sum{};
        for (std::size_t i = 0; i < model.components.size(); ++i) {
            sum += model.weights[i] * component_value(model.components[i]);
        }
        return std::norm(sum);
    }

    [[nodiscard]] const Scenario &scenario() const noexcept { return scenario_; }

  private:
    Scenario scenario_;
    std::vector<double> signs_;
    std::vector<QubitExpectation> x_;
    std::vector<QubitExpectation> y_;
};

inline double model_l_value(const LHSModel &model, const Scenario &s,
                            std::span<const ObservablePair> pairs,
                            const SignPattern &pattern) {
    validate_model(model, s);
    return ModelEvaluator(s, pairs, pattern)(model);
}

namespace detail {

inline Bloch random_ball_point(std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Bloch d{gauss(rng), gauss(rng), gauss(rng)};
    double len = bloch_norm(d);
    while (len == 0.0) {
        d = {gauss(rng), gauss(rng), gauss(rng)};
        len = bloch_norm(d);
    }
    const double radius = std::cbrt(unit(rng));
    for (auto &v : d) {
        v *= radius / len;
    }
    return d;
}

inline LHSModel random_model(const Scenario &s, int mixtures,
                             std::mt19937_64 &rng) {
    std::exponential_distribution<double> expo(1.0);
    std::bernoulli_distribution coin(0.5);
    LHSModel m;
    m.weights.resize(mixtures);
    double total = 0.0;
    for (auto &w : m.weights) {
        w = expo(rng);
        total += w;
    }
    for (auto &w : m.weights) {
        w /= total;
    }
    m.components.resize(mixtures);
    for (auto &c : m.components) {
        c.trusted.resize(s.trusted());
        for (auto &r : c.trusted) {
            r = random_ball_point(rng);
        }
        c.untrusted.resize(s.untrusted());
        for (auto &r : c.untrusted) {
            r.x = coin(rng) ? 1 : -1;
            r.y = coin(rng) ? 1 : -1;
        }
    }
    return m;
}

} // namespace detail

/// Seeded random model: exponential-normalized weights, trusted Bloch
/// vectors uniform in the unit ball, uniform +-1 responses.
inline LHSModel random_model(const Scenario &s, int mixtures,
                             std::uint64_t seed) {
    if (mixtures < 1) {
        throw std::invalid_argument("random_model: need at least one mixture");
    }
    std::mt19937_64 rng(seed);
    return detail::random_model(s, mixtures, rng);
}

inline constexpr double kBoundSlack = 1e-9;

struct SearchReport {
    double best_l = 0.0;
    LHSModel best_model;
    double bound = 0.0;       // imprecise bound the search is tested against
    double bound_ideal = 0.0; // B_0
    bool reached_gap = false; // best_l > B_0
    std::size_t iterations = 0;
    std::uint64_t seed = 0;

    /// A model beating the imprecise bound would contradict the inequality.
    [[nodiscard]] bool bound_falsified() const noexcept {
        return best_l > bound + kBoundSlack;
    }
};

struct SearchOptions {
    int refine_steps = 200;
    double initial_step = 0.05;
    /// Iterations are sharded over this many threads; shard w uses seed + w.
    int workers = 1;
};

namespace detail {

struct ShardBest {
    double value = -1.0;
    LHSModel model;
};

inline ShardBest search_shard(const ModelEvaluator &eval, int mixtures,
                              std::size_t iterations, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    ShardBest best;
    for (std::size_t i = 0; i < iterations; ++i) {
        LHSModel m = random_model(eval.scenario(), mixtures, rng);
        const double v = eval(m);
        if (v > best.value) {
            best.value = v;
            best.model = std::move(m);
        }
    }
    return best;
}

/// Coordinate-wise hill climbing over every trusted Bloch coordinate.
/// Moves leaving the unit ball are projected back onto the sphere.
inline void refine(const ModelEvaluator &eval, ShardBest &best,
                   const SearchOptions &opt) {
    double step = opt.initial_step;
    for (int it = 0; it < opt.refine_steps; ++it) {
        bool improved = false;
        for (auto &comp : best.model.components) {
            for (auto &r : comp.trusted) {
                for (std::size_t axis = 0; axis < 3; ++axis) {
                    for (const double delta : {step, -step}) {
                        const Bloch saved = r;
                        r[axis] += delta;
                        const double len = bloch_norm(r);
                        if (len > 1.0) {
                            for (auto &v : r) {
                                v /= len;
                            }
                        }
                        const double v = eval(best.model);
                        if (v > best.value) {
                            best.value = v;
                            improved = true;
                            break;
                        }
                        r = saved;
                    }
                }
            }
        }
        if (!improved) {
            step *= 0.5;
        }
    }
}

} // namespace detail

/**
 * Random search for the LHS model with the largest L, followed by local
 * refinement of the winner. Trusted devices sit at q = 1 - 2 eps.
 *
 * The result is deterministic for a given (seed, workers): shard w draws
 * from seed + w and the merge keeps the largest value, ties going to the
 * lowest shard.
 */
inline SearchReport search_max(const Scenario &s, Imprecision eps,
                               std::size_t iterations, int mixtures,
                               std::uint64_t seed,
                               const SearchOptions &opt = {}) {
    if (iterations < 1) {
        throw std::invalid_argument("search_max: need at least one iteration");
    }
    if (mixtures < 1) {
        throw std::invalid_argument("search_max: need at least one mixture");
    }
    const auto pairs = device_pairs(s.parties(), eps);
    const ModelEvaluator eval(s, pairs, SignPattern::all_plus(s.parties()));

    const std::size_t workers =
        std::max<std::size_t>(1, std::min<std::size_t>(opt.workers, iterations));
    std::vector<detail::ShardBest> shards(workers);
    auto run = [&](std::size_t w) {
        const std::size_t share =
            iterations / workers + (w < iterations % workers ? 1 : 0);
        shards[w] = detail::search_shard(eval, mixtures, share, seed + w);
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back(run, w);
        }
    }

    detail::ShardBest best = std::move(shards.front());
    for (std::size_t w = 1; w < workers; ++w) {
        if (shards[w].value > best.value) {
            best = std::move(shards[w]);
        }
    }
    detail::refine(eval, best, opt);

    SearchReport report;
    report.best_l = best.value;
    report.best_model = std::move(best.model);
    report.bound = bound_imprecise_uniform(s, eps);
    report.bound_ideal = bound_ideal(s);
    report.reached_gap = report.best_l > report.bound_ideal + kBoundSlack;
    report.iterations = iterations;
    report.seed = seed;
    return report;
}

} // namespace steerbound
