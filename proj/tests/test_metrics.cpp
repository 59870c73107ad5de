// Copyright 2026 The cavity-entangler Authors
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

#include <gtest/gtest.h>

#include <unsupported/Eigen/KroneckerProduct>

#include <random>

#include "cavent/cavent.hpp"
#include "support.hpp"

namespace cavent {
namespace {

/// Dense K^(a) = sigma_z^(a-1) sigma_x^(a) sigma_z^(a+1) with sigma_z = |1><1| - |0><0|.
Eigen::MatrixXcd stabilizer_matrix(int n, int a) {
    Eigen::Matrix2cd x, z, id;
    x << 0, 1, 1, 0;
    z << -1, 0, 0, 1;
    id.setIdentity();
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = 1; q <= n; ++q) {
        const Eigen::Matrix2cd &f = q == a ? x : (q == a - 1 || q == a + 1 ? z : id);
        k = Eigen::kroneckerProduct(k, f).eval();
    }
    return k;
}

double brute_force_expectation(const StateVector &psi, int a) {
    const Eigen::VectorXcd v = to_eigen(psi);
    return v.dot(stabilizer_matrix(psi.qubit_count(), a) * v).real() / v.squaredNorm();
}

TEST(Fidelity, Examples) {
    std::mt19937 rng(61);
    const StateVector psi = testing::random_state(rng, 3, 1);
    EXPECT_NEAR(fidelity(psi, psi), 1.0, 1e-15);
    EXPECT_EQ(fidelity(make_register_state({0}), make_register_state({1})), 0.0);
    const ClusterAnalytic r = cluster_analytic(EffectiveModel::equal(5, 1.0, 0.0), 5);
    EXPECT_NEAR(fidelity(r.state, ideal_cluster(5)), 1.0, 1e-12);
    EXPECT_THROW(fidelity(StateVector::zero(1, 1), psi.scaled(0.0)), ArgumentError);
}

TEST(Fidelity, SymmetricAndScaleInvariant) {
    std::mt19937 rng(62);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 30; ++trial) {
        const StateVector a = testing::random_state(rng, 3, 2);
        const StateVector b = testing::random_state(rng, 3, 2);
        const Complex c(normal(rng), normal(rng));
        EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-15);
        EXPECT_NEAR(fidelity(a.scaled(c), b), fidelity(a, b), 1e-14);
        EXPECT_NEAR(fidelity(a, b.scaled(c)), fidelity(a, b), 1e-14);
        const double f = fidelity(a, b);
        EXPECT_GE(f, 0.0);
        EXPECT_LE(f, 1.0);
    }
}

TEST(RawFidelity, IsFidelityTimesNorm) {
    const ProtocolRun r = run_cluster(EffectiveModel::equal(3, 1.0, 0.07), 3, Mode::analytic);
    EXPECT_NEAR(raw_fidelity(r.state, ideal_cluster(3)), r.report.fidelity * r.report.success_probability, 1e-14);
    EXPECT_THROW(raw_fidelity(r.state, r.state.scaled(0.0)), ArgumentError);
}

TEST(SuccessProbability, Examples) {
    const ProtocolRun ideal = run_cluster(EffectiveModel::equal(4, 1.0, 0.0), 4, Mode::analytic);
    EXPECT_NEAR(success_probability(ideal.state), 1.0, 1e-12);

    const WSolution sol = w_solve_lambda1({1.0, 1.0}, 0.07);
    const ProtocolRun w = run_w({1.0, 1.0}, 0.07, Mode::analytic);
    EXPECT_NEAR(success_probability(w.state), std::exp(-0.07 * sol.t / 4), 1e-10);

    const EffectiveModel m = EffectiveModel::equal(2, 1.0, 0.04);
    const ProtocolRun c = run_cluster(m, 2, Mode::analytic);
    const double p = success_probability(c.state);
    EXPECT_GT(p, 0.0);
    EXPECT_LT(p, 1.0);
    // dense norm of the full numeric qubit-cavity state before factorization
    StateVector psi = cluster_input(2);
    for (const ScheduleStep &s : cluster_schedule(m, 2).steps) {
        psi = evolve(build_effective(m.only(s.qubit), 2, 2), psi, s.duration);
    }
    EXPECT_NEAR(p, to_eigen(psi).squaredNorm(), 1e-10);
}

TEST(Stabilizer, IdealClusterIsEigenstateWithRecordedSigns) {
    for (int n = 1; n <= 6; ++n) {
        const StateVector c = ideal_cluster(n);
        for (int a = 1; a <= n; ++a) {
            const StabilizerReport r = stabilizer_expectation(c, a);
            EXPECT_NEAR(std::abs(r.expectation), 1.0, 1e-12);
            if (n <= 4) {
                const double brute = brute_force_expectation(c, a);
                EXPECT_NEAR(r.expectation, brute, 1e-12);
                // brute-force sign pattern: -1 everywhere except the last site
                ASSERT_TRUE(r.sign.has_value());
                EXPECT_EQ(*r.sign, a == n ? 1 : -1) << "n " << n << " a " << a;
            }
        }
    }
}

TEST(Stabilizer, MatchesBruteForceOnRandomStates) {
    std::mt19937 rng(63);
    for (int n = 1; n <= 4; ++n) {
        const StateVector psi = testing::random_state(rng, n, 1);
        for (int a = 1; a <= n; ++a) {
            EXPECT_NEAR(stabilizer_expectation(psi, a).expectation, brute_force_expectation(psi, a), 1e-12);
            EXPECT_FALSE(stabilizer_expectation(psi, a).sign.has_value());
        }
    }
}

TEST(Stabilizer, ProductStateHasZeroExpectation) {
    const StateVector zeros = make_register_state({0, 0, 0, 0});
    for (int a = 2; a <= 3; ++a) {
        EXPECT_EQ(stabilizer_expectation(zeros, a).expectation, 0.0);
    }
}

TEST(Stabilizer, ProtocolOutputsDegradeMonotonically) {
    const int n = 4;
    std::vector<double> previous(n, 1.0);
    for (int k = 0; k <= 5; ++k) {
        const ProtocolRun r = run_cluster(EffectiveModel::equal(n, 1.0, 0.02 * k), n, Mode::analytic);
        const std::vector<StabilizerReport> profile = stabilizer_profile(r.state);
        ASSERT_EQ(profile.size(), 4u);
        for (int a = 0; a < n; ++a) {
            const double m = std::abs(profile[a].expectation);
            if (k == 0) {
                EXPECT_NEAR(m, 1.0, 1e-12);
            } else {
                EXPECT_LT(m, 1.0);
                EXPECT_LE(m, previous[a]);
            }
            previous[a] = m;
        }
    }
}

TEST(Stabilizer, Errors) {
    EXPECT_THROW(stabilizer_expectation(make_basis_state({0, 1}, 0, 2), 1), ArgumentError);
    EXPECT_THROW(stabilizer_expectation(make_register_state({0, 1}), 3), ArgumentError);
    EXPECT_THROW(stabilizer_expectation(StateVector::zero(2, 1), 1), ArgumentError);
}

}  // namespace
}  // namespace cavent
