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

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "cavent/analytic.hpp"
#include "cavent/hamiltonian.hpp"
#include "cavent/statespace.hpp"

namespace cavent {

/// Agreement between the three-level model and the eliminated effective coupling over one
/// full-transfer step.
struct EliminationCheck {
    /// g Omega / delta.
    double lambda = 0.0;
    /// pi / (2 lambda), the kappa = 0 full-transfer time.
    double step_time = 0.0;
    /// Fidelity between the two models at the end of the step.
    double endpoint_fidelity = 0.0;
    /// Largest infidelity over the sampled trajectory [0, step_time].
    double worst_infidelity = 0.0;
    Adiabaticity adiabaticity = Adiabaticity::good;
};

/// One qubit starting in |1>|0>_c, evolved under the rotated three-level Hamiltonian and under
/// the single-qubit effective block for t = pi / (2 lambda).
///
/// In the frame with +delta on |2>, the eliminated exchange carries -g Omega / delta; the
/// effective state is mapped into that convention with sigma_z (|1> -> -|1>, up to a global
/// sign). With Omega = g the second-order Stark shifts are equal on |1>|0>_c and |0>|1>_c and
/// only contribute a global phase.
inline EliminationCheck compare_elimination(double g, double omega, double delta, int min_samples = 2001) {
    const ThreeLevelModel model = ThreeLevelModel::uniform(1, g, omega, delta);
    model.validate(1);
    EliminationCheck check;
    check.lambda = effective_coupling(g, omega, delta);
    if (!(check.lambda > 0.0)) {
        throw ArgumentError("elimination check needs positive g and Omega");
    }
    check.adiabaticity = model.adiabaticity();
    check.step_time = std::numbers::pi / (2.0 * check.lambda);

    const OperatorMatrix full = build_full_rotated(model, 1, 2);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(full.matrix);
    const StateVector start = make_basis_state({1}, 0, 2);
    const Eigen::VectorXcd coeffs = eig.eigenvectors().adjoint() * embed_in_three_level(start);
    const StepParams effective = step_params(check.lambda, 0.0);

    // resolve the fast delta oscillation with at least ~40 samples per period
    const double periods = delta * check.step_time / (2.0 * std::numbers::pi);
    const int samples = std::max(min_samples, static_cast<int>(std::ceil(40.0 * periods)) + 1);

    auto fidelity_at = [&](double t) {
        Eigen::VectorXcd phases(coeffs.size());
        for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
            phases(k) = std::polar(1.0, -eig.eigenvalues()(k) * t) * coeffs(k);
        }
        const Eigen::VectorXcd three = eig.eigenvectors() * phases;
        const StateVector eff = apply_sigma_z(single_step_map(start, 1, effective, t), 1);
        const Eigen::VectorXcd eff3 = embed_in_three_level(eff);
        return std::norm(eff3.dot(three)) / (eff3.squaredNorm() * three.squaredNorm());
    };

    for (int k = 0; k < samples; ++k) {
        const double t = check.step_time * static_cast<double>(k) / static_cast<double>(samples - 1);
        check.worst_infidelity = std::max(check.worst_infidelity, 1.0 - fidelity_at(t));
    }
    check.endpoint_fidelity = fidelity_at(check.step_time);
    return check;
}

}  // namespace cavent
