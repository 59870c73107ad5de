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
#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <sstream>
#include <vector>

#include "cavent/errors.hpp"
#include "cavent/hamiltonian.hpp"
#include "cavent/statespace.hpp"

namespace cavent {

enum class PropagationMethod { matrix_exponential, adaptive_integrator };

struct PropagatorOptions {
    PropagationMethod method = PropagationMethod::matrix_exponential;
    /// Relative tolerance of the adaptive integrator, in (0, 1e-4].
    double tol = 1e-10;
    /// Largest step the adaptive integrator may take.
    double max_step = std::numeric_limits<double>::infinity();
    /// Step budget of the adaptive integrator.
    long max_steps = 2'000'000;

    void validate() const {
        if (!(tol > 0.0) || tol > 1e-4) {
            throw ArgumentError("propagator tolerance must lie in (0, 1e-4]");
        }
        if (!(max_step > 0.0)) {
            throw ArgumentError("max_step must be positive");
        }
    }
};

namespace detail {

inline void require_finite(const Eigen::MatrixXcd &m, const char *what) {
    if (!m.allFinite()) {
        throw NumericError(std::string(what) + " contains non-finite entries");
    }
}

inline double one_norm(const Eigen::MatrixXcd &a) {
    return a.cwiseAbs().colwise().sum().maxCoeff();
}

// Pade coefficients b_0 .. b_m of the [m/m] approximant to exp.
inline constexpr std::array<double, 4> kPade3{120.0, 60.0, 12.0, 1.0};
inline constexpr std::array<double, 6> kPade5{30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
inline constexpr std::array<double, 8> kPade7{17297280.0, 8648640.0, 1995840.0, 277200.0,
                                              25200.0,    1512.0,    56.0,      1.0};
inline constexpr std::array<double, 10> kPade9{17643225600.0, 8821612800.0, 2075673600.0, 302702400.0,
                                               30270240.0,    2162160.0,    110880.0,     3960.0,
                                               90.0,          1.0};
inline constexpr std::array<double, 14> kPade13{
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0, 129060195264000.0,
    10559470521600.0,    670442572800.0,      33522128640.0,      1323241920.0,       40840800.0,
    960960.0,            16380.0,             182.0,              1.0};

// Largest 1-norm for which the [m/m] approximant is accurate to unit roundoff.
inline constexpr double kTheta3 = 1.495585217958292e-2;
inline constexpr double kTheta5 = 2.539398330063230e-1;
inline constexpr double kTheta7 = 9.504178996162932e-1;
inline constexpr double kTheta9 = 2.097847961257068e0;
inline constexpr double kTheta13 = 5.371920351148152e0;

template <std::size_t M>
void pade_low_order(const Eigen::MatrixXcd &a, const std::array<double, M> &b, Eigen::MatrixXcd &u,
                    Eigen::MatrixXcd &v) {
    const Eigen::Index n = a.rows();
    const Eigen::MatrixXcd ident = Eigen::MatrixXcd::Identity(n, n);
    const Eigen::MatrixXcd a2 = a * a;
    Eigen::MatrixXcd power = ident;
    Eigen::MatrixXcd odd = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd even = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t k = 0; k + 1 < M; k += 2) {
        even += b[k] * power;
        odd += b[k + 1] * power;
        power = power * a2;
    }
    u = a * odd;
    v = even;
}

inline void pade13(const Eigen::MatrixXcd &a, Eigen::MatrixXcd &u, Eigen::MatrixXcd &v) {
    const auto &b = kPade13;
    const Eigen::Index n = a.rows();
    const Eigen::MatrixXcd ident = Eigen::MatrixXcd::Identity(n, n);
    const Eigen::MatrixXcd a2 = a * a;
    const Eigen::MatrixXcd a4 = a2 * a2;
    const Eigen::MatrixXcd a6 = a4 * a2;
    Eigen::MatrixXcd inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
    u = a * (a6 * inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident);
    inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
    v = a6 * inner + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident;
}

}  // namespace detail

/// Matrix exponential by scaling and squaring with diagonal Pade approximants of degree
/// 3, 5, 7, 9 or 13, selected from the 1-norm.
inline Eigen::MatrixXcd expm(const Eigen::MatrixXcd &a) {
    if (a.rows() != a.cols()) {
        throw ArgumentError("expm needs a square matrix");
    }
    detail::require_finite(a, "expm input");
    const Eigen::Index n = a.rows();
    if (n == 0) {
        return a;
    }
    const double norm = detail::one_norm(a);
    Eigen::MatrixXcd u;
    Eigen::MatrixXcd v;
    int squarings = 0;
    if (norm <= detail::kTheta3) {
        detail::pade_low_order(a, detail::kPade3, u, v);
    } else if (norm <= detail::kTheta5) {
        detail::pade_low_order(a, detail::kPade5, u, v);
    } else if (norm <= detail::kTheta7) {
        detail::pade_low_order(a, detail::kPade7, u, v);
    } else if (norm <= detail::kTheta9) {
        detail::pade_low_order(a, detail::kPade9, u, v);
    } else {
        squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm / detail::kTheta13))));
        const Eigen::MatrixXcd scaled = a / std::ldexp(1.0, squarings);
        detail::pade13(scaled, u, v);
    }
    Eigen::MatrixXcd result = (v - u).partialPivLu().solve(v + u);
    for (int k = 0; k < squarings; ++k) {
        result = result * result;
    }
    detail::require_finite(result, "expm result");
    return result;
}

/// Integrates d psi/dt = -i H psi with the Dormand-Prince 5(4) embedded pair and per-step error
/// control against `opts.tol` (relative, with an absolute floor scaled by ||psi_0||). The system
/// is autonomous, so stage nodes never enter and the last stage of an accepted step is reused.
inline Eigen::VectorXcd integrate_adaptive(const Eigen::MatrixXcd &h, Eigen::VectorXcd psi, double t,
                                           const PropagatorOptions &opts) {
    if (t == 0.0) {
        return psi;
    }
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b - b_hat for the embedded fourth-order solution
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                     e6 = 22.0 / 525, e7 = -1.0 / 40;

    const Complex minus_i(0.0, -1.0);
    auto rhs = [&](const Eigen::VectorXcd &y) -> Eigen::VectorXcd { return minus_i * (h * y); };

    const double atol = opts.tol * std::max(psi.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    const double hnorm = std::max(detail::one_norm(h), 1e-300);
    double step = std::min({opts.max_step, t, 0.1 / hnorm});
    double elapsed = 0.0;
    long steps = 0;
    Eigen::VectorXcd k1 = rhs(psi);
    while (elapsed < t) {
        if (++steps > opts.max_steps) {
            std::ostringstream msg;
            msg << "adaptive integrator exceeded " << opts.max_steps << " steps at t = " << elapsed << " of " << t;
            throw ConvergenceError(msg.str(), t - elapsed);
        }
        step = std::min(step, t - elapsed);
        const Eigen::VectorXcd k2 = rhs(psi + step * (a21 * k1));
        const Eigen::VectorXcd k3 = rhs(psi + step * (a31 * k1 + a32 * k2));
        const Eigen::VectorXcd k4 = rhs(psi + step * (a41 * k1 + a42 * k2 + a43 * k3));
        const Eigen::VectorXcd k5 = rhs(psi + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Eigen::VectorXcd k6 = rhs(psi + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const Eigen::VectorXcd next = psi + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Eigen::VectorXcd k7 = rhs(next);
        const Eigen::VectorXcd err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double ratio = 0.0;
        for (Eigen::Index i = 0; i < psi.size(); ++i) {
            const double scale = atol + opts.tol * std::max(std::abs(psi(i)), std::abs(next(i)));
            ratio = std::max(ratio, std::abs(err(i)) / scale);
        }
        if (!std::isfinite(ratio)) {
            throw NumericError("adaptive integrator produced non-finite values");
        }
        if (ratio <= 1.0) {
            elapsed += step;
            psi = next;
            k1 = k7;
        }
        const double factor = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
        step = std::min(step * factor, opts.max_step);
        if (step < 1e-14 * t) {
            throw ConvergenceError("adaptive integrator step size underflow", ratio * opts.tol);
        }
    }
    return psi;
}

/// exp(-i H t) psi for a possibly non-Hermitian H.
inline Eigen::VectorXcd evolve(const Eigen::MatrixXcd &h, const Eigen::VectorXcd &psi, double t,
                               const PropagatorOptions &opts = {}) {
    opts.validate();
    if (h.rows() != h.cols() || h.rows() != psi.size()) {
        throw ArgumentError("Hamiltonian and state dimensions do not match");
    }
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw ArgumentError("evolution time must be finite and non-negative");
    }
    detail::require_finite(h, "Hamiltonian");
    if (!psi.allFinite()) {
        throw NumericError("state contains non-finite amplitudes");
    }
    Eigen::VectorXcd out;
    if (opts.method == PropagationMethod::matrix_exponential) {
        out = expm(Complex(0.0, -t) * h) * psi;
    } else {
        out = integrate_adaptive(h, psi, t, opts);
    }
    if (!out.allFinite()) {
        throw NumericError("evolution produced non-finite amplitudes");
    }
    return out;
}

inline StateVector evolve(const OperatorMatrix &h, const StateVector &psi, double t,
                          const PropagatorOptions &opts = {}) {
    if (h.local_dim != 2 || h.qubit_count != psi.qubit_count() || h.fock_cutoff != psi.fock_cutoff()) {
        throw ArgumentError("Hamiltonian basis does not match the state");
    }
    return from_eigen(evolve(h.matrix, to_eigen(psi), t, opts), psi.qubit_count(), psi.fock_cutoff());
}

struct Segment {
    OperatorMatrix hamiltonian;
    double duration = 0.0;
};

/// Piecewise-constant evolution: applies the segments in order.
inline StateVector evolve_step_sequence(std::span<const Segment> segments, const StateVector &psi,
                                        const PropagatorOptions &opts = {}) {
    StateVector current = psi;
    for (const Segment &s : segments) {
        current = evolve(s.hamiltonian, current, s.duration, opts);
    }
    return current;
}

}  // namespace cavent
