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

#include <random>
#include <sstream>

#include "cavent/cavent.hpp"
#include "support.hpp"

namespace cavent {
namespace {

TEST(BuildEffective, SingleQubitBlock) {
    const OperatorMatrix h = build_effective(EffectiveModel::equal(1, 1.0, 0.0), 1, 2);
    ASSERT_EQ(h.dimension(), 4);
    EXPECT_TRUE(h.hermitian);
    // basis order: |0,0>, |0,1>, |1,0>, |1,1>
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
    expected(1, 2) = expected(2, 1) = 1.0;
    EXPECT_EQ((h.matrix - expected).norm(), 0.0);
}

TEST(BuildEffective, DecayOnOnePhotonStates) {
    const OperatorMatrix h = build_effective(EffectiveModel::equal(1, 1.0, 0.1), 1, 2);
    EXPECT_FALSE(h.hermitian);
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
    expected(1, 2) = expected(2, 1) = 1.0;
    expected(1, 1) = expected(3, 3) = Complex(0.0, -0.05);
    EXPECT_NEAR((h.matrix - expected).norm(), 0.0, 1e-16);
}

TEST(BuildEffective, ConservesExcitationNumber) {
    std::mt19937 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        for (int cutoff : {2, 3}) {
            EffectiveModel m = testing::random_model(rng, 3);
            if (trial % 2 == 0) {
                m.kappa = 0.0;
            }
            const Eigen::MatrixXcd h = build_effective(m, 3, cutoff).matrix;
            const Eigen::MatrixXcd n = excitation_number(3, cutoff);
            EXPECT_LT((h * n - n * h).cwiseAbs().maxCoeff(), 1e-14);
        }
    }
}

TEST(BuildEffective, HermitianWithoutDecay) {
    std::mt19937 rng(22);
    EffectiveModel m = testing::random_model(rng, 4);
    m.kappa = 0.0;
    const Eigen::MatrixXcd h = build_effective(m, 4, 3).matrix;
    EXPECT_EQ((h - h.adjoint()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(BuildEffective, FockLadderUsesSqrtFactor) {
    const OperatorMatrix h = build_effective(EffectiveModel::equal(1, 1.0, 0.0), 1, 3);
    // |1>|1> <-> |0>|2> carries sqrt(2)
    EXPECT_NEAR(h.matrix(1 * 3 + 1, 0 * 3 + 2).real(), std::sqrt(2.0), 1e-15);
}

TEST(BuildEffective, InactiveQubitsAreDecoupled) {
    const OperatorMatrix h = build_effective(EffectiveModel::equal(3, 1.0, 0.0).only(2), 3, 2);
    const StateVector excited1 = make_basis_state({1, 0, 0}, 0, 2);
    EXPECT_EQ((h.matrix * to_eigen(excited1)).norm(), 0.0);
    const StateVector excited2 = make_basis_state({0, 1, 0}, 0, 2);
    EXPECT_EQ((h.matrix * to_eigen(excited2)).norm(), 1.0);
}

TEST(BuildEffective, CapacityAndValidation) {
    EXPECT_THROW(build_effective(EffectiveModel::equal(11, 1.0, 0.0), 11, 2), CapacityError);
    EXPECT_THROW(build_effective(EffectiveModel::equal(2, 1.0, 0.0), 3, 2), ArgumentError);
    EXPECT_THROW(build_effective(EffectiveModel::equal(1, -1.0, 0.0), 1, 2), ArgumentError);
    EXPECT_THROW(build_effective(EffectiveModel::equal(1, 1.0, -0.1), 1, 2), ArgumentError);
}

TEST(EffectiveModel, RegimeFlag) {
    EXPECT_TRUE(EffectiveModel::equal(3, 1.0, 0.1).in_supported_regime());
    EXPECT_FALSE(EffectiveModel::equal(3, 1.0, 0.11).in_supported_regime());
    EffectiveModel m = EffectiveModel::all_active({1.0, 0.5, 2.0}, 0.04);
    EXPECT_DOUBLE_EQ(m.min_active_lambda(), 0.5);
    EXPECT_DOUBLE_EQ(m.kappa_over_lambda(), 0.08);
    EXPECT_DOUBLE_EQ(m.only(3).min_active_lambda(), 2.0);
}

TEST(BuildFullRotated, NoCouplingGivesDetuningOnLevelTwo) {
    const OperatorMatrix h = build_full_rotated(ThreeLevelModel::uniform(1, 0.0, 0.0, 3.5), 1, 2);
    ASSERT_EQ(h.dimension(), 6);
    Eigen::VectorXcd diag = Eigen::VectorXcd::Zero(6);
    diag(4) = diag(5) = 3.5;
    EXPECT_EQ((h.matrix - Eigen::MatrixXcd(diag.asDiagonal())).norm(), 0.0);
}

TEST(BuildFullRotated, Hermitian) {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (int n : {1, 2}) {
        ThreeLevelModel m{{u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng) * 10, u(rng) * 10}};
        m.g.resize(n);
        m.omega.resize(n);
        m.delta.resize(n);
        const Eigen::MatrixXcd h = build_full_rotated(m, n, 3).matrix;
        EXPECT_EQ((h - h.adjoint()).cwiseAbs().maxCoeff(), 0.0);
    }
    EXPECT_THROW(build_full_rotated(ThreeLevelModel::uniform(3, 1, 1, 10), 3, 2), ArgumentError);
    EXPECT_THROW(build_full_rotated(ThreeLevelModel::uniform(1, 1, 1, -10), 1, 2), ArgumentError);
}

TEST(BuildFullRotated, SecondOrderCouplingMatchesElimination) {
    const double g = 0.1;
    const double omega = 0.1;
    const double delta = 10.0;
    const Eigen::MatrixXcd h = build_full_rotated(ThreeLevelModel::uniform(1, g, omega, delta), 1, 2).matrix;
    // one-excitation sector {|1,0>, |0,1>, |2,0>}
    const std::array<int, 3> idx{2, 1, 4};
    Eigen::Matrix3cd block;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            block(r, c) = h(idx[r], idx[c]);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3cd> eig(block);
    // the two low-lying levels split by 2 lambda (Stark shifts are equal for Omega = g)
    const double split = std::abs(eig.eigenvalues()(1) - eig.eigenvalues()(0)) / 2.0;
    EXPECT_NEAR(split, 1e-3, 1e-6);
    EXPECT_NEAR(split, effective_coupling(g, omega, delta), 1e-6);
}

TEST(EffectiveCoupling, Examples) {
    EXPECT_NEAR(effective_coupling(1.8e8, 8.5e7, 1.5e9), 1.02e7, 1e-5);
    EXPECT_EQ(effective_coupling(0.0, 8.5e7, 1.5e9), 0.0);
    EXPECT_EQ(effective_coupling(1.0, 1.0, 1.0), 1.0);
    EXPECT_THROW(effective_coupling(1.0, 1.0, 0.0), ArgumentError);
}

TEST(EffectiveCoupling, HomogeneousOfDegreeOne) {
    std::mt19937 rng(24);
    std::uniform_real_distribution<double> u(0.1, 10.0);
    for (int trial = 0; trial < 20; ++trial) {
        double g = u(rng), o = u(rng), d = u(rng) * 10, c = u(rng);
        EXPECT_NEAR(effective_coupling(c * g, c * o, c * d), c * effective_coupling(g, o, d),
                    1e-12 * c * effective_coupling(g, o, d));
    }
}

TEST(KappaFromQuality, Examples) {
    const double kappa = kappa_from_quality(1e7, 4e10);
    EXPECT_NEAR(kappa, 2.5132741228718345e4, 1e-9);
    EXPECT_NEAR(1.0 / kappa, 3.98e-5, 0.01e-5);
    EXPECT_LT(kappa_from_quality(1e12, 4e10), 1.0);
    EXPECT_NEAR(kappa_from_quality(2.0 * std::numbers::pi, 1.0), 1.0, 1e-15);
    EXPECT_THROW(kappa_from_quality(0.0, 1.0), ArgumentError);
}

TEST(KappaFromQuality, MonotoneInQAndLinearInFrequency) {
    double previous = kappa_from_quality(1e3, 4e10);
    for (double q = 1e4; q <= 1e12; q *= 10) {
        const double k = kappa_from_quality(q, 4e10);
        EXPECT_LT(k, previous);
        previous = k;
    }
    EXPECT_NEAR(kappa_from_quality(1e7, 8e10), 2.0 * kappa_from_quality(1e7, 4e10), 1e-9);
}

TEST(ThreeLevelModel, AdiabaticityClassesAndElimination) {
    EXPECT_EQ(ThreeLevelModel::uniform(1, 1, 1, 10).adiabaticity(), Adiabaticity::good);
    EXPECT_EQ(ThreeLevelModel::uniform(1, 1, 1, 6).adiabaticity(), Adiabaticity::marginal);
    EXPECT_EQ(ThreeLevelModel::uniform(1, 1, 1, 2).adiabaticity(), Adiabaticity::violated);
    const EffectiveModel m = ThreeLevelModel{{1.8e8, 1.0}, {8.5e7, 2.0}, {1.5e9, 40.0}}.eliminated(0.5);
    EXPECT_NEAR(m.lambda(1), 1.02e7, 1e-5);
    EXPECT_NEAR(m.lambda(2), 0.05, 1e-17);
    EXPECT_EQ(m.kappa, 0.5);
    EXPECT_THROW(ThreeLevelModel::uniform(1, 1, 1, 2).eliminated(0.0), RegimeError);
}

TEST(MatrixDump, RowColumnFormat) {
    const OperatorMatrix h = build_effective(EffectiveModel::equal(1, 1.0, 0.1), 1, 2);
    std::ostringstream out;
    write_matrix_dump(out, h);
    EXPECT_EQ(out.str(),
              "1 1 0.0000000000000000e+00 -5.0000000000000003e-02\n"
              "1 2 1.0000000000000000e+00 0.0000000000000000e+00\n"
              "2 1 1.0000000000000000e+00 0.0000000000000000e+00\n"
              "3 3 0.0000000000000000e+00 -5.0000000000000003e-02\n");
}

TEST(EmbedInThreeLevel, MapsBitsToLevels) {
    const Eigen::VectorXcd v = embed_in_three_level(make_basis_state({1, 0}, 1, 2));
    ASSERT_EQ(v.size(), 18);
    EXPECT_EQ(v((1 * 3 + 0) * 2 + 1), Complex(1.0));
    EXPECT_EQ(v.norm(), 1.0);
}

}  // namespace
}  // namespace cavent
