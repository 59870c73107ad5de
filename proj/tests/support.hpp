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

#pragma once

#include <complex>
#include <random>
#include <vector>

#include "cavent/cavent.hpp"

namespace cavent::testing {

inline StateVector random_state(std::mt19937 &rng, int qubits, int cutoff) {
    std::normal_distribution<double> normal;
    std::vector<Complex> amps(StateVector::expected_dimension(qubits, cutoff));
    for (Complex &a : amps) {
        a = Complex(normal(rng), normal(rng));
    }
    return StateVector(qubits, cutoff, std::move(amps)).normalized();
}

/// Couplings in [0.5, 2] with kappa/min(lambda) drawn from [0, 0.1].
inline EffectiveModel random_model(std::mt19937 &rng, int qubits) {
    std::uniform_real_distribution<double> lam(0.5, 2.0);
    std::uniform_real_distribution<double> ratio(0.0, 0.1);
    std::vector<double> lambdas(static_cast<std::size_t>(qubits));
    for (double &l : lambdas) {
        l = lam(rng);
    }
    double lmin = *std::min_element(lambdas.begin(), lambdas.end());
    return EffectiveModel::all_active(std::move(lambdas), ratio(rng) * lmin);
}

inline Eigen::MatrixXcd random_matrix(std::mt19937 &rng, int dim, double scale) {
    std::normal_distribution<double> normal;
    Eigen::MatrixXcd m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
            m(r, c) = Complex(normal(rng), normal(rng)) * scale;
        }
    }
    return m;
}

}  // namespace cavent::testing
