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
#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "oracle.hpp"
#include "steerbound/inequality.hpp"
#include "steerbound/states.hpp"

using namespace steerbound;

namespace {

// Expected values below were computed independently (double precision,
// direct evaluation of the closed forms and brute-force matrix sums) and
// frozen here.
constexpr double kBoundEps001T1 = 5.56014030138318;   // 4 * 1.390035...
constexpr double kBoundEps001 = 7.72879004276636;     // 4 * 1.390035...^2
constexpr double kBoundEps005 = 12.739214478698567;   // q = 0.9
constexpr double kWeightN4T2Eps001 = 2.658742463085415;
constexpr double kLGhz4Q098 = 54.634132698569104;

std::vector<double> eps_grid_fine() {
    std::vector<double> g;
    for (int i = 0; i <= 146; ++i) {
        g.push_back(i * 1e-3);
    }
    g.push_back(kMaxImprecision);
    return g;
}

} // namespace

TEST(LValue, GhzIdealAllPlus) {
    for (int n = 2; n <= 6; ++n) {
        const auto pairs = device_pairs(n, Imprecision(0.0));
        const double l = l_value(density(ghz(n)), pairs, SignPattern::all_plus(n));
        EXPECT_NEAR(l, std::ldexp(1.0, 2 * n - 2), 1e-10) << n;
    }
    const auto pairs = device_pairs(3, Imprecision(0.0));
    EXPECT_NEAR(l_value(density(ghz(3)), pairs, SignPattern::all_plus(3)), 16.0, 1e-12);
}

TEST(LValue, ComputationalBasisStateGivesZero) {
    for (int n : {1, 2, 4}) {
        std::vector<Bloch> up(n, Bloch{0, 0, 1});
        const auto pairs = device_pairs(n, Imprecision(0.0));
        EXPECT_EQ(l_value(product_state(up), pairs, SignPattern::all_plus(n)), 0.0);
    }
}

TEST(LValue, TiltedGhzFourMatchesBruteForce) {
    const auto pairs = device_pairs(4, Imprecision(0.01));
    const double l = l_value(density(ghz(4)), pairs, SignPattern::all_plus(4));
    EXPECT_NEAR(l, kLGhz4Q098, 1e-10);
    EXPECT_NEAR(l, oracle::ghz_l_bruteforce(4, 0.98), 1e-10);
    EXPECT_NEAR(l, ghz_l_value(4, Imprecision(0.01)), 1e-10);
}

TEST(LValue, UniformPatternsAgreeAndMixedVanishOnGhz) {
    const auto pairs = device_pairs(3, Imprecision(0.03));
    const CMatrix rho = density(ghz(3));
    const double plus = l_value(rho, pairs, SignPattern::all_plus(3));
    EXPECT_NEAR(l_value(rho, pairs, SignPattern::all_minus(3)), plus, 1e-12);
    const SignPattern mixed({Sign::Plus, Sign::Minus, Sign::Plus});
    EXPECT_NEAR(l_value(rho, device_pairs(3, Imprecision(0.0)), mixed), 0.0, 1e-12);
    // Tilted devices leak into the opposite ladder direction.
    const double q = 1.0 - 2.0 * 0.03;
    const double brute = std::norm(oracle::expectation(
        oracle::ghz_vector(3),
        {oracle::tilted_f(q, 1.0), oracle::tilted_f(q, -1.0), oracle::tilted_f(q, 1.0)}));
    EXPECT_GT(brute, 0.0);
    EXPECT_NEAR(l_value(rho, pairs, mixed), brute, 1e-12);
}

TEST(LValue, ShapeErrors) {
    const auto pairs = device_pairs(3, Imprecision(0.0));
    EXPECT_THROW(l_value(density(ghz(2)), pairs, SignPattern::all_plus(3)), std::invalid_argument);
    EXPECT_THROW(l_value(density(ghz(3)), pairs, SignPattern::all_plus(2)), std::invalid_argument);
    EXPECT_THROW(l_value(CMatrix::identity(8), pairs, SignPattern::all_plus(3)),
                 std::invalid_argument);
}

TEST(Bounds, Ideal) {
    EXPECT_EQ(bound_ideal(Scenario(4, 2)), 4.0);
    EXPECT_EQ(bound_ideal(Scenario(3, 3)), 1.0);
    EXPECT_EQ(bound_ideal(Scenario(4, 0)), 16.0);
}

TEST(Bounds, PerParty) {
    const Imprecision e0(0.0);
    const Imprecision e1(0.01);
    EXPECT_EQ(bound_imprecise_perparty(Scenario(4, 2)), 4.0);
    EXPECT_NEAR(bound_imprecise_perparty(Scenario(4, 2, {e1, e0, e1, e1})), kBoundEps001T1, 1e-12);
    EXPECT_NEAR(bound_imprecise_perparty(Scenario(4, 2, {e1, e1, e0, e0})), kBoundEps001, 1e-12);
    // Untrusted imprecision never enters.
    EXPECT_EQ(bound_imprecise_perparty(Scenario(4, 2, {e0, e0, e1, e1})), 4.0);
}

TEST(Bounds, Uniform) {
    const Scenario s(4, 2);
    EXPECT_EQ(bound_imprecise_uniform(s, Imprecision(0.0)), 4.0);
    EXPECT_NEAR(bound_imprecise_uniform(s, Imprecision(0.01)), kBoundEps001, 1e-12);
    EXPECT_NEAR(bound_imprecise_uniform(s, Imprecision(0.05)), kBoundEps005, 1e-12);
    for (double e : eps_grid_fine()) {
        const Imprecision eps(e);
        EXPECT_NEAR(bound_imprecise_uniform(s, eps),
                    bound_imprecise_perparty(Scenario::uniform(4, 2, eps)), 1e-12);
    }
}

TEST(Bounds, FirstOrder) {
    const Scenario s(4, 2);
    EXPECT_EQ(bound_first_order(s, Imprecision(0.0)), 4.0);
    EXPECT_NEAR(bound_first_order(s, Imprecision(0.01)), 7.84, 1e-12);
}

TEST(Bounds, OrderingAcrossGrid) {
    for (int n = 1; n <= 6; ++n) {
        for (int t = 1; t <= n; ++t) {
            const Scenario s(n, t);
            for (double e : eps_grid_fine()) {
                if (e == 0.0) {
                    continue;
                }
                const Imprecision eps(e);
                EXPECT_LT(bound_ideal(s), bound_imprecise_uniform(s, eps));
                EXPECT_LE(bound_imprecise_uniform(s, eps), bound_first_order(s, eps));
            }
        }
    }
}

TEST(Bounds, FactorIdentity) {
    for (double e : eps_grid_fine()) {
        const Imprecision eps(e);
        const double q = 1.0 - 2.0 * e;
        const double lhs = std::pow(1.0 - 2.0 * e + 2.0 * std::sqrt(e * (1.0 - e)), 2);
        EXPECT_NEAR(lhs, imprecision_factor(eps), 1e-12);
        EXPECT_NEAR(oracle::trusted_max(q), imprecision_factor(eps), 1e-12);
    }
}

TEST(GhzWeight, IdealCase) {
    EXPECT_NEAR(ghz_weight(Scenario(4, 2), Imprecision(0.0)), 4.0, 1e-14);
    for (int n = 2; n <= 8; ++n) {
        for (int t = 1; t <= n; ++t) {
            EXPECT_NEAR(ghz_weight(Scenario(n, t), Imprecision(0.0)),
                        std::pow(2.0, (n + t - 2) / 2.0), 1e-12);
        }
    }
}

TEST(GhzWeight, SmallImprecision) {
    EXPECT_NEAR(ghz_weight(Scenario(4, 2), Imprecision(0.01)), kWeightN4T2Eps001, 1e-12);
}

TEST(GhzWeight, RequiresTrustedParty) {
    EXPECT_THROW(ghz_weight(Scenario(4, 0), Imprecision(0.01)), std::invalid_argument);
}

TEST(GhzWeight, MatchesMatrixRoute) {
    for (int n = 2; n <= 6; ++n) {
        const CMatrix rho = density(ghz(n));
        for (int i = 0; i <= 14; ++i) {
            const Imprecision eps(0.01 * i);
            const double l = l_value(rho, device_pairs(n, eps), SignPattern::all_plus(n));
            for (int t = 1; t <= n; ++t) {
                const Scenario s(n, t);
                EXPECT_NEAR(ghz_weight(s, eps), std::sqrt(l / bound_imprecise_uniform(s, eps)),
                            1e-10);
            }
        }
    }
}

TEST(GhzWeight, Eps1ClosedFormAndTIndependence) {
    EXPECT_EQ(ghz_weight_eps1(6), 0.0);
    EXPECT_NEAR(ghz_weight_eps1(3), 0.70710678118654752, 1e-15);
    EXPECT_EQ(ghz_weight_eps1(4), 1.0);
    EXPECT_THROW(ghz_weight_eps1(1), std::invalid_argument);
    const Imprecision eps1(kMaxImprecision);
    for (int n = 2; n <= 10; ++n) {
        for (int t = 1; t <= n; ++t) {
            EXPECT_NEAR(ghz_weight(Scenario(n, t), eps1), ghz_weight_eps1(n), 1e-10)
                << "n=" << n << " t=" << t;
        }
    }
}

TEST(GhzWeight, NonIncreasingInEps) {
    for (int n : {3, 4, 5, 6}) {
        for (int t : {n / 2, n}) {
            const Scenario s(n, t);
            double prev = ghz_weight(s, Imprecision(0.0));
            for (double e : eps_grid_fine()) {
                const double w = ghz_weight(s, Imprecision(e));
                EXPECT_LE(w, prev + 1e-15) << "n=" << n << " t=" << t << " eps=" << e;
                prev = w;
            }
        }
    }
}

TEST(Depolarized, WeightIsLinear) {
    const Scenario s(4, 2);
    EXPECT_EQ(depolarized_weight(s, Imprecision(0.0), 0.0), 0.0);
    EXPECT_NEAR(depolarized_weight(s, Imprecision(0.0), 0.25), 1.0, 1e-15);
    EXPECT_NEAR(depolarized_weight(s, Imprecision(0.01), 0.38), 1.0103221359724577, 1e-12);
    for (double p : {0.1, 0.37, 0.9}) {
        const Imprecision eps(0.02);
        EXPECT_EQ(depolarized_weight(s, eps, p), p * ghz_weight(s, eps));
    }
    EXPECT_THROW(depolarized_weight(s, Imprecision(0.0), 1.5), std::invalid_argument);
}

TEST(Depolarized, MatrixLValueScalesWithPSquared) {
    for (int n : {2, 3, 4}) {
        for (double e : {0.0, 0.01, 0.1}) {
            const auto pairs = device_pairs(n, Imprecision(e));
            const auto pattern = SignPattern::all_plus(n);
            const double pure = l_value(density(ghz(n)), pairs, pattern);
            for (double p : {0.0, 0.3, 0.7, 1.0}) {
                EXPECT_NEAR(l_value(depolarized_ghz(n, p), pairs, pattern), p * p * pure, 1e-10);
            }
        }
    }
}

TEST(DeviceIndependent, Weight) {
    EXPECT_NEAR(di_weight(4, Imprecision(0.0), 0.25), 0.5, 1e-15);
    EXPECT_NEAR(di_weight(4, Imprecision(0.005), 0.52), 0.99943170080, 1e-10);
    EXPECT_NEAR(di_weight(4, Imprecision(0.01), 0.54), 0.99785122560, 1e-10);
    EXPECT_THROW(di_weight(4, Imprecision(0.0), -0.1), std::invalid_argument);
}

TEST(Threshold, QuantitativeAndDeviceIndependent) {
    const Scenario s(4, 2);
    const auto q0 = threshold_p(s, Imprecision(0.0), Method::Quantitative);
    ASSERT_TRUE(q0.verifiable());
    EXPECT_NEAR(*q0.p_star, 0.25, 1e-15);
    EXPECT_NEAR(*threshold_p(s, Imprecision(0.005), Method::Quantitative).p_star,
                0.33281061282834196, 1e-12);
    EXPECT_NEAR(*threshold_p(s, Imprecision(0.01), Method::Quantitative).p_star,
                0.3761176623476051, 1e-12);
    EXPECT_NEAR(*threshold_p(s, Imprecision(0.0), Method::DeviceIndependent).p_star, 0.5, 1e-15);
    EXPECT_NEAR(*threshold_p(s, Imprecision(0.005), Method::DeviceIndependent).p_star,
                0.5202956836207652, 1e-12);
    EXPECT_NEAR(*threshold_p(s, Imprecision(0.01), Method::DeviceIndependent).p_star,
                0.5411628368500548, 1e-12);
}

TEST(Threshold, UnverifiableWhenWeightAtMostOne) {
    // N = 6 at eps1: W_G = 0.
    const auto th = threshold_p(Scenario(6, 3), Imprecision(kMaxImprecision), Method::Quantitative);
    EXPECT_FALSE(th.verifiable());
    // N = 4 at eps1: W_G = 1 exactly, not above it.
    const auto edge = threshold_p(Scenario(4, 2), Imprecision(kMaxImprecision), Method::Quantitative);
    EXPECT_FALSE(edge.verifiable() && *edge.p_star < 1.0 - 1e-12);
}

TEST(Verify, GhzIdealIsViolation) {
    const Scenario s(4, 2);
    const auto r = verify(density(ghz(4)), s, device_pairs(4, Imprecision(0.0)),
                          SignPattern::all_plus(4));
    EXPECT_NEAR(r.l_value, 64.0, 1e-10);
    EXPECT_EQ(r.bound_ideal, 4.0);
    EXPECT_EQ(r.bound_imprecise, 4.0);
    EXPECT_NEAR(r.weight, 4.0, 1e-12);
    EXPECT_EQ(r.classification, Classification::Violation);
}

TEST(Verify, MaximallyMixedIsNoViolation) {
    for (int n : {2, 3}) {
        const Scenario s = Scenario::uniform(n, 1, Imprecision(0.02));
        const CMatrix rho = CMatrix::identity(std::size_t{1} << n) *
                            Complex{1.0 / static_cast<double>(std::size_t{1} << n)};
        const auto r = verify(rho, s, device_pairs(n, Imprecision(0.02)), SignPattern::all_plus(n));
        EXPECT_NEAR(r.l_value, 0.0, 1e-15);
        EXPECT_EQ(r.weight, 0.0);
        EXPECT_EQ(r.classification, Classification::NoViolation);
    }
}

TEST(Verify, WeightInvariant) {
    const Scenario s = Scenario::uniform(3, 2, Imprecision(0.03));
    const auto r = verify(depolarized_ghz(3, 0.8), s, device_pairs(3, Imprecision(0.03)),
                          SignPattern::all_plus(3));
    EXPECT_NEAR(r.weight, std::sqrt(r.l_value / r.bound_imprecise), 1e-12);
}

TEST(Verify, FalsePositiveGap) {
    // Depolarized GHZ_4 whose L lands between B_0 = 4 and B_eps at eps = 0.05.
    const Imprecision eps(0.05);
    const Scenario s = Scenario::uniform(4, 2, eps);
    const auto pairs = device_pairs(4, Imprecision(0.0));
    const double pure = l_value(density(ghz(4)), pairs, SignPattern::all_plus(4));
    const double target = 0.5 * (bound_ideal(s) + bound_imprecise_perparty(s));
    const double p = std::sqrt(target / pure);
    const auto r = verify(depolarized_ghz(4, p), s, pairs, SignPattern::all_plus(4));
    EXPECT_GT(r.l_value, r.bound_ideal);
    EXPECT_LE(r.l_value, r.bound_imprecise);
    EXPECT_EQ(r.classification, Classification::FalsePositiveGap);
}

TEST(Classify, Boundaries) {
    EXPECT_EQ(classify(4.0, 4.0, 7.0), Classification::NoViolation);
    EXPECT_EQ(classify(5.0, 4.0, 7.0), Classification::FalsePositiveGap);
    EXPECT_EQ(classify(7.0, 4.0, 7.0), Classification::FalsePositiveGap);
    EXPECT_EQ(classify(7.0 + 1e-9, 4.0, 7.0), Classification::Violation);
}

TEST(Scenario, Validation) {
    EXPECT_THROW(Scenario(0, 0), std::invalid_argument);
    EXPECT_THROW(Scenario(3, 4), std::invalid_argument);
    EXPECT_THROW(Scenario(3, -1), std::invalid_argument);
    EXPECT_THROW(Scenario(3, 1, {Imprecision(0.0)}), std::invalid_argument);
}
