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
#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cavent/errors.hpp"
#include "cavent/hamiltonian.hpp"
#include "cavent/metrics.hpp"
#include "cavent/report.hpp"
#include "cavent/statespace.hpp"

namespace cavent {

// ---------------------------------------------------------------------------------------------
// Single qubit + cavity exchange.
//
// With one qubit j coupled, the Hamiltonian splits into blocks. |0>_c|0>_j is dark. The pair
// {|0>_c|1>_j, |1>_c|0>_j} forms a damped exchange doublet whose propagator is
//   e^{-kt/4} [cos(Gt) - i sin(Gt)/G * M],   M = [[ik/4, lambda], [lambda, -ik/4]],
// with G = sqrt(lambda^2 - k^2/16). Hence:
//   |0>_c|1>_j stays with e^{-kt/4}[cos(Gt) + (k/4G) sin(Gt)]
//   |1>_c|0>_j stays with e^{-kt/4}[cos(Gt) - (k/4G) sin(Gt)]
//   either one transfers to the other with -i e^{-kt/4} (lambda/G) sin(Gt)
// and |1>_c|1>_j only decays, e^{-kt/2}, because the cavity is truncated at one photon.
// ---------------------------------------------------------------------------------------------

/// Which half of the exchange doublet a step time empties.
enum class TransferBranch {
    /// |0>_c|1>_j moves entirely into |1>_c|0>_j: (k/4G) sin(Gt) + cos(Gt) = 0.
    qubit_to_cavity,
    /// |1>_c|0>_j moves entirely into |0>_c|1>_j: cos(Gt) - (k/4G) sin(Gt) = 0.
    cavity_to_qubit,
};

/// Closed-form coefficients of the exchange doublet after time t.
struct ExchangeCoefficients {
    /// Amplitude left on |0>_c|1>_j.
    double stay_qubit = 1.0;
    /// Amplitude left on |1>_c|0>_j.
    double stay_cavity = 1.0;
    /// e^{-kt/4} (lambda/G) sin(Gt); the transfer amplitude is -i times this.
    double transfer = 0.0;
    /// e^{-kt/2}, the decay of |1>_c|1>_j.
    double both_excited = 1.0;
};

inline void require_exchange_regime(double lambda, double kappa) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw ArgumentError("coupling must be positive and finite");
    }
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
        throw ArgumentError("cavity decay rate must be non-negative and finite");
    }
    if (kappa >= 4.0 * lambda) {
        std::ostringstream msg;
        msg << "kappa/lambda = " << kappa / lambda << " >= 4: exchange is overdamped (G imaginary)";
        throw RegimeError(msg.str());
    }
}

/// G = sqrt(lambda^2 - kappa^2/16), factored to avoid cancellation.
inline double damped_frequency(double lambda, double kappa) {
    return std::sqrt((lambda - 0.25 * kappa) * (lambda + 0.25 * kappa));
}

inline ExchangeCoefficients exchange_coefficients(double lambda, double kappa, double t) {
    require_exchange_regime(lambda, kappa);
    if (!(t >= 0.0)) {
        throw ArgumentError("duration must be non-negative");
    }
    const double g = damped_frequency(lambda, kappa);
    const double envelope = std::exp(-0.25 * kappa * t);
    const double c = std::cos(g * t);
    const double s = std::sin(g * t);
    const double r = kappa / (4.0 * g);
    return {envelope * (c + r * s), envelope * (c - r * s), envelope * (lambda / g) * s, std::exp(-0.5 * kappa * t)};
}

/// Timing and coefficients of one exchange step.
struct StepParams {
    double lambda = 0.0;
    double kappa = 0.0;
    /// sqrt(lambda^2 - kappa^2/16).
    double G = 0.0;
    /// Step duration (s).
    double t = 0.0;
    /// e^{-kt/4} (lambda/G) sin(Gt).
    double a_coef = 0.0;
    /// e^{-kt/2}.
    double b_coef = 0.0;
    /// Residual stay amplitudes at t; the one selected by `branch` vanishes.
    double stay_qubit = 0.0;
    double stay_cavity = 0.0;
    TransferBranch branch = TransferBranch::qubit_to_cavity;
};

/// Smallest positive step time that empties the requested half of the exchange doublet.
///
/// For qubit_to_cavity this is t = [pi + arctan(-4G/k)] / G, written as atan2(4G, -k) / G so
/// the k -> 0 limit pi / (2 lambda) is exact. For cavity_to_qubit it is atan2(4G, k) / G. At
/// either time sin(Gt) = G / lambda, so a_coef = e^{-kt/4}.
inline StepParams step_params(double lambda, double kappa,
                              TransferBranch branch = TransferBranch::qubit_to_cavity) {
    require_exchange_regime(lambda, kappa);
    StepParams p;
    p.lambda = lambda;
    p.kappa = kappa;
    p.G = damped_frequency(lambda, kappa);
    p.branch = branch;
    const double angle = branch == TransferBranch::qubit_to_cavity ? std::atan2(4.0 * p.G, -kappa)
                                                                   : std::atan2(4.0 * p.G, kappa);
    p.t = angle / p.G;
    const ExchangeCoefficients c = exchange_coefficients(lambda, kappa, p.t);
    p.a_coef = c.transfer;
    p.b_coef = c.both_excited;
    p.stay_qubit = c.stay_qubit;
    p.stay_cavity = c.stay_cavity;
    return p;
}

/// Evolves `psi` for `duration` with only qubit `j` coupled (coupling and decay from `p`).
/// Throws UnsupportedSectorError if any amplitude with two or more photons exceeds 1e-12.
inline StateVector single_step_map(const StateVector &psi, int j, const StepParams &p, double duration) {
    require_qubit_index(psi, j);
    if (psi.fock_cutoff() < 2) {
        throw ArgumentError("single_step_map needs a cavity mode (cutoff >= 2)");
    }
    const ExchangeCoefficients c = exchange_coefficients(p.lambda, p.kappa, duration);
    const Complex transfer(0.0, -c.transfer);
    auto in = psi.amplitudes();
    std::vector<Complex> out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        const int n = psi.photon(i);
        const int b = psi.bit(i, j);
        if (n >= 2) {
            if (std::abs(in[i]) > 1e-12) {
                throw UnsupportedSectorError("closed-form step map covers at most one photon");
            }
            continue;
        }
        if (n == 0 && b == 0) {
            out[i] = in[i];
        } else if (n == 1 && b == 1) {
            out[i] = c.both_excited * in[i];
        } else if (n == 0 && b == 1) {
            // partner |1>_c|0>_j sits at flip(j) with one more photon
            const std::size_t partner = psi.flip(i, j) + 1;
            out[i] = c.stay_qubit * in[i] + transfer * in[partner];
        } else {
            const std::size_t partner = psi.flip(i, j) - 1;
            out[i] = c.stay_cavity * in[i] + transfer * in[partner];
        }
    }
    return StateVector(psi.qubit_count(), psi.fock_cutoff(), std::move(out));
}

// ---------------------------------------------------------------------------------------------
// Sequential cluster protocol.
// ---------------------------------------------------------------------------------------------

struct ScheduleStep {
    int qubit = 0;
    double lambda = 0.0;
    double duration = 0.0;
    TransferBranch branch = TransferBranch::qubit_to_cavity;
};

struct Schedule {
    std::vector<ScheduleStep> steps;
    double kappa = 0.0;

    double total_duration() const {
        double t = 0.0;
        for (const auto &s : steps) {
            t += s.duration;
        }
        return t;
    }
};

/// One step per qubit, in order 1..N, each coupling only that qubit.
///
/// Steps 1..N-1 use the qubit-to-cavity time. The last qubit starts in |0>, so only the
/// cavity-to-qubit half of its doublet is populated; it uses the cavity-to-qubit time, which
/// returns the cavity exactly to vacuum.
inline Schedule cluster_schedule(const EffectiveModel &model, int qubit_count) {
    if (qubit_count < 2) {
        throw ArgumentError("cluster protocol needs at least two qubits");
    }
    if (model.qubit_count() != qubit_count) {
        throw ArgumentError("model must carry one coupling per qubit");
    }
    Schedule s;
    s.kappa = model.kappa;
    for (int j = 1; j <= qubit_count; ++j) {
        const TransferBranch branch =
            j < qubit_count ? TransferBranch::qubit_to_cavity : TransferBranch::cavity_to_qubit;
        const StepParams p = step_params(model.lambda(j), model.kappa, branch);
        s.steps.push_back({j, model.lambda(j), p.t, branch});
    }
    return s;
}

/// 2^{-N/2} (x)_j (|0>_j + |1>_j sigma_z^{j-1}) with sigma_z^0 = identity and
/// sigma_z = |1><1| - |0><0|. The amplitude of |b_1..b_N> is 2^{-N/2} (-1)^m, where m counts
/// the adjacent pairs with b_{j-1} = 0 and b_j = 1.
inline StateVector ideal_cluster(int qubit_count) {
    if (qubit_count < 1 || qubit_count > kMaxDenseQubits) {
        throw ArgumentError("ideal cluster size must lie in [1, " + std::to_string(kMaxDenseQubits) + "]");
    }
    const std::size_t dim = std::size_t{1} << qubit_count;
    const std::size_t below_top = (std::size_t{1} << (qubit_count - 1)) - 1;
    const double scale = std::pow(2.0, -0.5 * qubit_count);
    std::vector<Complex> amps(dim);
    for (std::size_t reg = 0; reg < dim; ++reg) {
        // bit p holds qubit N - p; its left neighbour sits at bit p + 1
        const std::size_t rising = reg & ~(reg >> 1) & below_top;
        amps[reg] = (std::popcount(rising) % 2 == 0) ? scale : -scale;
    }
    return StateVector(qubit_count, 1, std::move(amps));
}

namespace detail {

/// Per-step linear maps of the (X, Y) recursion.
///
/// Before step n the state is 2^{-N/2} (|0>_c X + i |1>_c Y) (x) |+>... with X, Y on qubits
/// 1..n-1. Coupling qubit n (initially |0> + |1>) gives
///   X_n = |0>_n X + |1>_n (s X + a Y)
///   Y_n = |0>_n (s' Y - a X) + |1>_n b Y
/// i.e. V_n = |0> (x) M0 V + |1> (x) M1 V with V = (X, Y),
///   M0 = [[1, 0], [-a, s']],  M1 = [[s, a], [0, b]].
struct StepMaps {
    Eigen::Matrix2cd zero;
    Eigen::Matrix2cd one;
};

inline StepMaps step_maps(double stay_qubit, double stay_cavity, double a, double b) {
    StepMaps m;
    m.zero << 1.0, 0.0, -a, stay_cavity;
    m.one << stay_qubit, a, 0.0, b;
    return m;
}

}  // namespace detail

/// Dense analytic output of the cluster protocol.
struct ClusterAnalytic {
    StateVector state;
    RunReport report;
};

/// Builds the N-qubit output of `schedule` through the (X, Y) recursion and the final
/// combination 2^{-N/2} (|0>_N X + a_N |1>_N Y) (x) |0>_c. Throws FactorizationError if the
/// schedule leaves cavity weight above 1e-10 (relative).
inline ClusterAnalytic cluster_analytic(const Schedule &schedule) {
    const int n_qubits = static_cast<int>(schedule.steps.size());
    if (n_qubits < 2) {
        throw ArgumentError("cluster protocol needs at least two qubits");
    }
    if (n_qubits > kMaxDenseQubits) {
        throw CapacityError(
            "dense cluster construction is limited to " + std::to_string(kMaxDenseQubits) +
            " qubits; use cluster_fidelity_recursive");
    }
    for (int k = 0; k < n_qubits; ++k) {
        if (schedule.steps[k].qubit != k + 1) {
            throw ArgumentError("cluster schedule must address qubits 1..N in order");
        }
    }

    RunReport report;
    report.mode = Mode::analytic;
    std::vector<Complex> x{1.0};
    std::vector<Complex> y{1.0};
    auto norm_sq = [](const std::vector<Complex> &v) {
        double t = 0.0;
        for (const Complex &c : v) {
            t += std::norm(c);
        }
        return t;
    };

    for (int k = 0; k + 1 < n_qubits; ++k) {
        const ScheduleStep &step = schedule.steps[k];
        const ExchangeCoefficients c = exchange_coefficients(step.lambda, schedule.kappa, step.duration);
        const std::size_t old = x.size();
        x.resize(2 * old);
        y.resize(2 * old);
        for (std::size_t r = old; r-- > 0;) {
            const Complex xr = x[r];
            const Complex yr = y[r];
            x[2 * r] = xr;
            x[2 * r + 1] = c.stay_qubit * xr + c.transfer * yr;
            y[2 * r] = c.stay_cavity * yr - c.transfer * xr;
            y[2 * r + 1] = c.both_excited * yr;
        }
        const double full = (norm_sq(x) + norm_sq(y)) / std::ldexp(1.0, k + 2);
        report.per_step.push_back({k + 1, full});
    }

    const ScheduleStep &last = schedule.steps.back();
    const ExchangeCoefficients c = exchange_coefficients(last.lambda, schedule.kappa, last.duration);
    const double scale = std::pow(2.0, -0.5 * n_qubits);
    std::vector<Complex> amps(2 * x.size());
    for (std::size_t r = 0; r < x.size(); ++r) {
        amps[2 * r] = scale * x[r];
        amps[2 * r + 1] = scale * c.transfer * y[r];
    }
    StateVector state(n_qubits, 1, std::move(amps));
    const double cavity_weight = std::norm(scale * c.stay_cavity) * norm_sq(y);
    const double register_weight = state.norm_squared();
    report.per_step.push_back({n_qubits, register_weight + cavity_weight});
    report.residual = std::sqrt(cavity_weight / (register_weight + cavity_weight));
    if (report.residual > 1e-10) {
        std::ostringstream msg;
        msg << "schedule leaves the cavity excited: relative residual " << std::scientific << report.residual;
        throw FactorizationError(msg.str(), report.residual);
    }
    report.success_probability = register_weight;
    report.fidelity = fidelity(state, ideal_cluster(n_qubits));
    report.duration = schedule.total_duration();
    return {std::move(state), std::move(report)};
}

inline ClusterAnalytic cluster_analytic(const EffectiveModel &model, int qubit_count) {
    model.validate(qubit_count);
    ClusterAnalytic out = cluster_analytic(cluster_schedule(model, qubit_count));
    out.report.kappa_over_lambda = model.kappa_over_lambda();
    out.report.in_supported_regime = model.in_supported_regime();
    return out;
}

/// How the O(N) recursion models each exchange step.
enum class RecursionModel {
    /// Exact closed-form dynamics with the cluster_schedule timing.
    exact,
    /// Drops both stay amplitudes and uses the qubit-to-cavity time on every step, including
    /// the last. This does not solve the dynamics; it reproduces the commonly quoted closed
    /// form and is kept only for comparison.
    vanishing_stay,
};

struct ClusterMetrics {
    double fidelity = 0.0;
    double success_probability = 0.0;
};

/// Fidelity against the ideal cluster and success probability in O(N) time.
///
/// Only Gram matrices of the recursion are needed. With V = (X, Y) and the ideal V~ (k = 0:
/// a = b = 1, s = s' = 0), the cross-Gram C_ik = <V~_i|V_k> and self-Gram S_ik = <V_i|V_k>
/// obey
///   C_n = conj(M~0) C M0^T + conj(M~1) C M1^T,   S_n = conj(M0) S M0^T + conj(M1) S M1^T,
/// because the |0>_n and |1>_n branches are orthogonal. Then, with qubit N starting in |0>,
///   <Phi|psi> = 2^{-N} (C_00 + a_N C_11),   ||psi||^2 = 2^{-N} (S_00 + |a_N|^2 S_11).
/// A factor 1/2 is folded into every step to keep the matrices O(1).
inline ClusterMetrics cluster_fidelity_recursive(const EffectiveModel &model, int qubit_count,
                                                 RecursionModel variant = RecursionModel::exact) {
    if (qubit_count < 2) {
        throw ArgumentError("cluster protocol needs at least two qubits");
    }
    model.validate(qubit_count);
    const detail::StepMaps ideal = detail::step_maps(0.0, 0.0, 1.0, 1.0);
    Eigen::Matrix2cd cross = Eigen::Matrix2cd::Ones();
    Eigen::Matrix2cd self = Eigen::Matrix2cd::Ones();
    Eigen::Matrix2cd target = Eigen::Matrix2cd::Ones();

    for (int j = 1; j < qubit_count; ++j) {
        const StepParams p = step_params(model.lambda(j), model.kappa, TransferBranch::qubit_to_cavity);
        const detail::StepMaps m = variant == RecursionModel::exact
                                       ? detail::step_maps(p.stay_qubit, p.stay_cavity, p.a_coef, p.b_coef)
                                       : detail::step_maps(0.0, 0.0, p.a_coef, p.b_coef);
        cross = 0.5 * (ideal.zero.conjugate() * cross * m.zero.transpose() +
                       ideal.one.conjugate() * cross * m.one.transpose());
        self = 0.5 * (m.zero.conjugate() * self * m.zero.transpose() + m.one.conjugate() * self * m.one.transpose());
        target = 0.5 * (ideal.zero.conjugate() * target * ideal.zero.transpose() +
                        ideal.one.conjugate() * target * ideal.one.transpose());
    }
    const TransferBranch last_branch =
        variant == RecursionModel::exact ? TransferBranch::cavity_to_qubit : TransferBranch::qubit_to_cavity;
    const StepParams last = step_params(model.lambda(qubit_count), model.kappa, last_branch);
    const double a = last.a_coef;

    const Complex overlap = 0.5 * (cross(0, 0) + a * cross(1, 1));
    const double norm_psi = 0.5 * (self(0, 0).real() + a * a * self(1, 1).real());
    const double norm_target = 0.5 * (target(0, 0).real() + target(1, 1).real());
    ClusterMetrics out;
    out.success_probability = norm_psi;
    out.fidelity = std::clamp(std::norm(overlap) / (norm_psi * norm_target), 0.0, 1.0);
    return out;
}

// ---------------------------------------------------------------------------------------------
// W protocol: all qubits coupled at once, single excitation starting on qubit 1.
//
// Only the bright mode sum_j lambda_j |1_j> / A couples to the cavity, with strength A; it forms
// the same damped doublet as above with G = B/4, B = sqrt(16 A^2 - k^2).
// ---------------------------------------------------------------------------------------------

struct WAmplitudes {
    /// qubits[k - 1] is the amplitude of |1_k> (all other qubits |0>, cavity empty).
    std::vector<Complex> qubits;
    /// Amplitude of |0...0>|1>_c.
    Complex cavity;
};

/// Amplitudes at time t for the initial state |1>_1 |0...0> |0>_c with every qubit coupled.
inline WAmplitudes w_amplitudes(const EffectiveModel &model, double t) {
    const int n = model.qubit_count();
    if (n < 1) {
        throw ArgumentError("W dynamics needs at least one qubit");
    }
    model.validate(n);
    if (static_cast<int>(model.active.size()) != n) {
        throw ArgumentError("W dynamics needs every qubit coupled");
    }
    if (!(t >= 0.0)) {
        throw ArgumentError("duration must be non-negative");
    }
    double a_sq = 0.0;
    for (double l : model.lambdas) {
        a_sq += l * l;
    }
    const double b_sq = 16.0 * a_sq - model.kappa * model.kappa;
    if (!(b_sq > 0.0)) {
        throw RegimeError("16 A^2 <= kappa^2: W dynamics is overdamped");
    }
    const double b = std::sqrt(b_sq);
    const double envelope = std::exp(-0.25 * model.kappa * t);
    const double phase = 0.25 * b * t;
    const double bracket = -1.0 + envelope * (std::cos(phase) + (model.kappa / b) * std::sin(phase));
    const double l1 = model.lambdas.front();

    WAmplitudes out;
    out.qubits.reserve(n);
    out.qubits.emplace_back(1.0 + (l1 * l1 / a_sq) * bracket);
    for (int k = 1; k < n; ++k) {
        out.qubits.emplace_back((l1 * model.lambdas[k] / a_sq) * bracket);
    }
    out.cavity = Complex(0.0, -(4.0 * l1 / b) * std::sin(phase) * envelope);
    return out;
}

/// Full qubit-cavity state (cutoff 2) assembled from w_amplitudes.
inline StateVector w_state(const WAmplitudes &w) {
    const int n = static_cast<int>(w.qubits.size());
    StateVector blank = StateVector::zero(n, 2);
    std::vector<Complex> amps(blank.dimension());
    std::vector<int> bits(n, 0);
    amps[blank.index_of({bits, 1})] = w.cavity;
    for (int k = 0; k < n; ++k) {
        bits[k] = 1;
        amps[blank.index_of({bits, 0})] = w.qubits[k];
        bits[k] = 0;
    }
    return StateVector(n, 2, std::move(amps));
}

/// Operating point of the W protocol.
struct WSolution {
    double lambda1 = 0.0;
    /// 4 pi / B.
    double t = 0.0;
    double B = 0.0;
    /// sum_{j=1}^N lambda_j^2.
    double A_sq = 0.0;
    /// sum_{k=2}^N lambda_k^2.
    double A_prime_sq = 0.0;
    int iterations = 0;
    /// |lambda1^2 - A'^2 e^{k t/4}| / lambda1^2 at the returned point.
    double residual = 0.0;
};

/// Solves lambda1 = A' exp(k pi / (2 B(lambda1))), B(l) = sqrt(16 (l^2 + A'^2) - k^2), by
/// fixed-point iteration damped by 1/2. At the solution t = 4 pi / B empties both qubit 1 and
/// the cavity.
inline WSolution w_solve_lambda1(const std::vector<double> &lambda_rest, double kappa) {
    if (lambda_rest.empty()) {
        throw ArgumentError("W protocol needs at least one target qubit");
    }
    double a_prime_sq = 0.0;
    for (double l : lambda_rest) {
        if (!(l > 0.0) || !std::isfinite(l)) {
            throw ArgumentError("target couplings must be positive and finite");
        }
        a_prime_sq += l * l;
    }
    if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
        throw ArgumentError("cavity decay rate must be non-negative and finite");
    }
    const double a_prime = std::sqrt(a_prime_sq);
    auto b_of = [&](double l1) {
        const double b_sq = 16.0 * (l1 * l1 + a_prime_sq) - kappa * kappa;
        if (!(b_sq > 0.0)) {
            throw RegimeError("16 A^2 <= kappa^2: W dynamics is overdamped");
        }
        return std::sqrt(b_sq);
    };

    constexpr int kMaxIterations = 200;
    constexpr double kDamping = 0.5;
    WSolution sol;
    double l1 = a_prime;
    int it = 0;
    double change = 0.0;
    if (kappa > 0.0) {
        for (;;) {
            if (++it > kMaxIterations) {
                throw ConvergenceError("lambda1 fixed point did not converge", change / l1);
            }
            const double mapped = a_prime * std::exp(kappa * std::numbers::pi / (2.0 * b_of(l1)));
            const double next = (1.0 - kDamping) * l1 + kDamping * mapped;
            change = std::abs(next - l1);
            l1 = next;
            if (change <= 4.0 * std::numeric_limits<double>::epsilon() * l1) {
                break;
            }
        }
    }
    sol.lambda1 = l1;
    sol.iterations = it;
    sol.A_prime_sq = a_prime_sq;
    sol.A_sq = l1 * l1 + a_prime_sq;
    sol.B = b_of(l1);
    sol.t = 4.0 * std::numbers::pi / sol.B;
    sol.residual = std::abs(l1 * l1 - a_prime_sq * std::exp(0.25 * kappa * sol.t)) / (l1 * l1);
    if (sol.residual > 1e-12) {
        throw ConvergenceError("lambda1 fixed point residual above 1e-12", sol.residual);
    }
    return sol;
}

/// e^{-k t/8} sum_k (lambda_k / A') |1_k> on the N-1 target qubits (unnormalized).
inline StateVector w_target(const std::vector<double> &lambda_rest, double kappa, double t) {
    if (lambda_rest.empty()) {
        throw ArgumentError("W target needs at least one qubit");
    }
    double a_prime_sq = 0.0;
    for (double l : lambda_rest) {
        a_prime_sq += l * l;
    }
    if (!(a_prime_sq > 0.0)) {
        throw ArgumentError("W target needs non-zero couplings");
    }
    const int n = static_cast<int>(lambda_rest.size());
    const double scale = std::exp(-0.125 * kappa * t) / std::sqrt(a_prime_sq);
    StateVector blank = StateVector::zero(n, 1);
    std::vector<Complex> amps(blank.dimension());
    for (int k = 0; k < n; ++k) {
        amps[std::size_t{1} << (n - 1 - k)] = scale * lambda_rest[k];
    }
    return StateVector(n, 1, std::move(amps));
}

}  // namespace cavent
