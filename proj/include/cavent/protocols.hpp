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

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <sstream>
#include <vector>

#include "cavent/analytic.hpp"
#include "cavent/errors.hpp"
#include "cavent/hamiltonian.hpp"
#include "cavent/metrics.hpp"
#include "cavent/numeric.hpp"
#include "cavent/report.hpp"
#include "cavent/statespace.hpp"

namespace cavent {

/// Disentanglement tolerances (relative amplitude) for the two execution modes.
inline constexpr double kAnalyticResidualTol = 1e-10;
inline constexpr double kNumericResidualTol = 1e-7;

struct RunOptions {
    /// Cavity truncation for numeric mode. Analytic mode always works with one photon.
    int fock_cutoff = 2;
    PropagatorOptions propagator;
};

struct ProtocolRun {
    StateVector state;
    RunReport report;
};

inline double residual_tolerance(Mode mode) {
    return mode == Mode::analytic ? kAnalyticResidualTol : kNumericResidualTol;
}

/// Product input of the cluster protocol: |+>^{N-1} |0>_N (x) (|0>_c + i|1>_c)/sqrt(2).
inline StateVector cluster_input(int qubit_count, int cutoff = 2) {
    if (cutoff < 2) {
        throw ArgumentError("cluster protocol needs a cavity cutoff of at least 2");
    }
    const double h = std::numbers::sqrt2 / 2.0;
    if (qubit_count < 2) {
        throw ArgumentError("cluster protocol needs at least two qubits");
    }
    const StateVector plus = superpose({{h, make_register_state({0})}, {h, make_register_state({1})}});
    StateVector reg = plus;
    for (int j = 2; j < qubit_count; ++j) {
        reg = tensor(reg, plus);
    }
    reg = tensor(reg, make_register_state({0}));
    std::vector<Complex> cavity(cutoff);
    cavity[0] = h;
    cavity[1] = Complex(0.0, h);
    return with_cavity(reg, cavity);
}

/// Runs the sequential cluster protocol and returns the N-qubit register with the cavity
/// factored out at vacuum. Analytic mode applies the closed-form step map; numeric mode
/// propagates each step with a Hamiltonian that couples only the scheduled qubit.
inline ProtocolRun run_cluster(const EffectiveModel &model, int qubit_count, Mode mode,
                               const RunOptions &opts = {}) {
    model.validate(qubit_count);
    const Schedule schedule = cluster_schedule(model, qubit_count);
    const int cutoff = mode == Mode::analytic ? 2 : opts.fock_cutoff;
    StateVector psi = cluster_input(qubit_count, cutoff);

    RunReport report;
    report.mode = mode;
    report.kappa_over_lambda = model.kappa_over_lambda();
    report.in_supported_regime = model.in_supported_regime();
    report.duration = schedule.total_duration();
    for (const ScheduleStep &step : schedule.steps) {
        if (mode == Mode::analytic) {
            psi = single_step_map(psi, step.qubit, step_params(step.lambda, model.kappa, step.branch), step.duration);
        } else {
            psi = evolve(build_effective(model.only(step.qubit), qubit_count, cutoff), psi, step.duration,
                         opts.propagator);
        }
        report.per_step.push_back({step.qubit, psi.norm_squared()});
    }

    const double total = psi.norm_squared();
    StateVector out = factor_out_cavity(psi, 0, residual_tolerance(mode));
    report.residual = std::sqrt(std::max(0.0, total - out.norm_squared()) / total);
    report.success_probability = success_probability(out);
    report.fidelity = fidelity(out, ideal_cluster(qubit_count));
    return {std::move(out), std::move(report)};
}

/// |1>_1 |0...0> |0>_c.
inline StateVector w_input(int qubit_count, int cutoff = 2) {
    std::vector<int> bits(static_cast<std::size_t>(qubit_count), 0);
    bits.front() = 1;
    return make_basis_state(bits, 0, cutoff);
}

/// Runs the W protocol for time t with every qubit coupled, then removes qubit 1 and the cavity.
/// Throws ProtocolError if either retains more than the mode's residual tolerance.
inline ProtocolRun run_w(const EffectiveModel &model, double t, Mode mode, const RunOptions &opts = {}) {
    const int n = model.qubit_count();
    if (n < 2) {
        throw ArgumentError("W protocol needs at least two qubits");
    }
    model.validate(n);
    if (static_cast<int>(model.active.size()) != n) {
        throw ArgumentError("W protocol couples every qubit simultaneously");
    }
    const int cutoff = mode == Mode::analytic ? 2 : opts.fock_cutoff;
    StateVector psi = mode == Mode::analytic
                          ? w_state(w_amplitudes(model, t))
                          : evolve(build_effective(model, n, cutoff), w_input(n, cutoff), t, opts.propagator);

    RunReport report;
    report.mode = mode;
    report.kappa_over_lambda = model.kappa_over_lambda();
    report.in_supported_regime = model.in_supported_regime();
    report.duration = t;
    report.per_step.push_back({1, psi.norm_squared()});

    double leftover = 0.0;
    auto amps = psi.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (psi.bit(i, 1) == 1 || psi.photon(i) != 0) {
            leftover += std::norm(amps[i]);
        }
    }
    report.residual = std::sqrt(leftover / psi.norm_squared());
    if (report.residual > residual_tolerance(mode)) {
        std::ostringstream msg;
        msg << "qubit 1 and cavity did not disentangle: relative residual " << std::scientific << report.residual;
        throw ProtocolError(msg.str(), report.residual);
    }
    StateVector out = factor_out_cavity(project_out_qubit(psi, 1, 0, 1.0), 0, 1.0);

    std::vector<double> rest(model.lambdas.begin() + 1, model.lambdas.end());
    report.success_probability = success_probability(out);
    report.fidelity = fidelity(out, w_target(rest, model.kappa, t));
    return {std::move(out), std::move(report)};
}

/// Solves for lambda_1 and t, then runs the W protocol on the N-1 target couplings.
inline ProtocolRun run_w(const std::vector<double> &lambda_rest, double kappa, Mode mode,
                         const RunOptions &opts = {}) {
    const WSolution sol = w_solve_lambda1(lambda_rest, kappa);
    std::vector<double> lambdas{sol.lambda1};
    lambdas.insert(lambdas.end(), lambda_rest.begin(), lambda_rest.end());
    return run_w(EffectiveModel::all_active(std::move(lambdas), kappa), sol.t, mode, opts);
}

/// Applies diag(1, e^{i phi_j}) to every qubit j.
inline StateVector inject_phase_errors(const StateVector &state, std::span<const double> phases) {
    if (static_cast<int>(phases.size()) != state.qubit_count()) {
        throw ArgumentError("need one phase per qubit");
    }
    auto in = state.amplitudes();
    std::vector<Complex> out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        double phase = 0.0;
        for (int j = 1; j <= state.qubit_count(); ++j) {
            if (state.bit(i, j) == 1) {
                phase += phases[static_cast<std::size_t>(j - 1)];
            }
        }
        out[i] = in[i] * std::polar(1.0, phase);
    }
    return StateVector(state.qubit_count(), state.fock_cutoff(), std::move(out));
}

}  // namespace cavent
