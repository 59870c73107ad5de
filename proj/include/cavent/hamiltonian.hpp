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
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cavent/errors.hpp"
#include "cavent/statespace.hpp"

namespace cavent {

/// Dense operators are built for at most this many qubits (2^10 x cutoff rows).
inline constexpr int kMaxDenseOperatorQubits = 10;

/// Upper edge of the supported kappa / lambda regime.
inline constexpr double kSupportedKappaRatio = 0.1;

/// Qubit-cavity couplings lambda_j and cavity decay kappa of the effective model, all in rad/s.
struct EffectiveModel {
    /// lambdas[j - 1] couples qubit j.
    std::vector<double> lambdas;
    double kappa = 0.0;
    /// 1-based indices of the qubits currently coupled to the cavity.
    std::vector<int> active;

    static EffectiveModel all_active(std::vector<double> lambdas, double kappa) {
        EffectiveModel m{std::move(lambdas), kappa, {}};
        for (int j = 1; j <= static_cast<int>(m.lambdas.size()); ++j) {
            m.active.push_back(j);
        }
        return m;
    }

    static EffectiveModel equal(int qubit_count, double lambda, double kappa) {
        return all_active(std::vector<double>(static_cast<std::size_t>(qubit_count), lambda), kappa);
    }

    /// Same couplings and decay with only qubit `j` coupled.
    EffectiveModel only(int j) const {
        EffectiveModel m = *this;
        m.active = {j};
        return m;
    }

    int qubit_count() const noexcept {
        return static_cast<int>(lambdas.size());
    }

    double lambda(int j) const {
        if (j < 1 || j > qubit_count()) {
            throw ArgumentError("qubit index " + std::to_string(j) + " has no coupling");
        }
        return lambdas[static_cast<std::size_t>(j - 1)];
    }

    double min_active_lambda() const {
        double m = std::numeric_limits<double>::infinity();
        for (int j : active) {
            m = std::min(m, lambda(j));
        }
        return m;
    }

    /// kappa / min over active lambda_j; 0 when nothing is active.
    double kappa_over_lambda() const {
        if (active.empty()) {
            return 0.0;
        }
        return kappa / min_active_lambda();
    }

    bool in_supported_regime() const {
        return kappa_over_lambda() <= kSupportedKappaRatio * (1.0 + 1e-12);
    }

    void validate(int qubit_count) const {
        if (static_cast<int>(lambdas.size()) != qubit_count) {
            throw ArgumentError(
                "model has " + std::to_string(lambdas.size()) + " couplings for " + std::to_string(qubit_count) +
                " qubits");
        }
        if (!(kappa >= 0.0) || !std::isfinite(kappa)) {
            throw ArgumentError("cavity decay rate must be finite and non-negative");
        }
        for (std::size_t k = 0; k < active.size(); ++k) {
            int j = active[k];
            if (j < 1 || j > qubit_count) {
                throw ArgumentError("active qubit " + std::to_string(j) + " outside [1, N]");
            }
            if (std::count(active.begin(), active.end(), j) > 1) {
                throw ArgumentError("active qubit " + std::to_string(j) + " listed twice");
            }
            if (!(lambda(j) > 0.0) || !std::isfinite(lambda(j))) {
                throw ArgumentError("active qubit " + std::to_string(j) + " needs a positive finite coupling");
            }
        }
    }
};

enum class Adiabaticity { good, marginal, violated };

/// Per-qubit cavity coupling g_j, microwave coupling Omega_j and detuning delta_j (rad/s) of the
/// three-level model before the excited level is eliminated.
struct ThreeLevelModel {
    std::vector<double> g;
    std::vector<double> omega;
    std::vector<double> delta;

    static ThreeLevelModel uniform(int qubit_count, double g, double omega, double delta) {
        auto n = static_cast<std::size_t>(qubit_count);
        return {std::vector<double>(n, g), std::vector<double>(n, omega), std::vector<double>(n, delta)};
    }

    int qubit_count() const noexcept {
        return static_cast<int>(g.size());
    }

    void validate(int qubit_count) const {
        auto n = static_cast<std::size_t>(qubit_count);
        if (g.size() != n || omega.size() != n || delta.size() != n) {
            throw ArgumentError("three-level model needs g, omega and delta for every qubit");
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (!(delta[j] > 0.0)) {
                throw ArgumentError("detuning must be positive");
            }
            if (!std::isfinite(g[j]) || !std::isfinite(omega[j])) {
                throw ArgumentError("couplings must be finite");
            }
        }
    }

    /// max_j max(|g_j|, |Omega_j|) / delta_j.
    double max_ratio() const {
        double r = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) {
            r = std::max(r, std::max(std::abs(g[j]), std::abs(omega[j])) / delta[j]);
        }
        return r;
    }

    /// good below 0.1, marginal up to 0.2, violated beyond.
    Adiabaticity adiabaticity() const {
        double r = max_ratio();
        if (r <= 0.1) {
            return Adiabaticity::good;
        }
        if (r <= 0.2) {
            return Adiabaticity::marginal;
        }
        return Adiabaticity::violated;
    }

    /// Effective model after eliminating level |2>: lambda_j = g_j Omega_j / delta_j.
    EffectiveModel eliminated(double kappa) const;
};

/// Dense operator over the qubit (x) cavity basis. local_dim is 2 for the effective model and 3
/// for the three-level model; basis ordering follows StateVector (qubit 1 most significant).
struct OperatorMatrix {
    Eigen::MatrixXcd matrix;
    bool hermitian = false;
    int qubit_count = 0;
    int local_dim = 2;
    int fock_cutoff = 2;

    Eigen::Index dimension() const noexcept {
        return matrix.rows();
    }
};

/// lambda = g Omega / delta.
inline double effective_coupling(double g, double omega, double delta) {
    if (!(delta > 0.0)) {
        throw ArgumentError("detuning must be positive");
    }
    return g * omega / delta;
}

/// kappa = 2 pi nu_c / Q, with nu_c in Hz and the result in rad/s.
inline double kappa_from_quality(double quality, double nu_c_hz) {
    if (!(quality > 0.0) || !(nu_c_hz > 0.0)) {
        throw ArgumentError("quality factor and cavity frequency must be positive");
    }
    return 2.0 * std::numbers::pi * nu_c_hz / quality;
}

inline EffectiveModel ThreeLevelModel::eliminated(double kappa) const {
    validate(qubit_count());
    if (adiabaticity() == Adiabaticity::violated) {
        std::ostringstream msg;
        msg << "max(g, Omega)/delta = " << max_ratio() << " exceeds 0.2; adiabatic elimination does not apply";
        throw RegimeError(msg.str());
    }
    std::vector<double> lambdas;
    for (std::size_t j = 0; j < g.size(); ++j) {
        lambdas.push_back(effective_coupling(g[j], omega[j], delta[j]));
    }
    return EffectiveModel::all_active(std::move(lambdas), kappa);
}

namespace detail {

inline void require_operator_capacity(int qubit_count, int cutoff) {
    if (qubit_count < 1) {
        throw ArgumentError("operators need at least one qubit");
    }
    if (qubit_count > kMaxDenseOperatorQubits) {
        throw CapacityError(
            "dense operators are limited to " + std::to_string(kMaxDenseOperatorQubits) + " qubits");
    }
    if (cutoff < 2) {
        throw ArgumentError("cavity cutoff must be at least 2");
    }
}

inline Eigen::Index ipow(Eigen::Index base, int exp) {
    Eigen::Index r = 1;
    for (int k = 0; k < exp; ++k) {
        r *= base;
    }
    return r;
}

}  // namespace detail

/// H = sum_{j in active} lambda_j (a^dag |0><1|_j + a |1><0|_j) - i (kappa/2) a^dag a.
inline OperatorMatrix build_effective(const EffectiveModel &model, int qubit_count, int cutoff = 2) {
    detail::require_operator_capacity(qubit_count, cutoff);
    model.validate(qubit_count);
    const Eigen::Index dim = detail::ipow(2, qubit_count) * cutoff;
    OperatorMatrix op;
    op.matrix = Eigen::MatrixXcd::Zero(dim, dim);
    op.hermitian = model.kappa == 0.0;
    op.qubit_count = qubit_count;
    op.local_dim = 2;
    op.fock_cutoff = cutoff;
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        const Eigen::Index reg = idx / cutoff;
        const int photon = static_cast<int>(idx % cutoff);
        op.matrix(idx, idx) += Complex(0.0, -0.5 * model.kappa * photon);
        if (photon + 1 >= cutoff) {
            continue;
        }
        for (int j : model.active) {
            const Eigen::Index mask = Eigen::Index{1} << (qubit_count - j);
            if ((reg & mask) == 0) {
                continue;
            }
            // |1>_j |n> <-> |0>_j |n+1>
            const Eigen::Index to = (reg ^ mask) * cutoff + photon + 1;
            const double amp = model.lambda(j) * std::sqrt(static_cast<double>(photon + 1));
            op.matrix(to, idx) += amp;
            op.matrix(idx, to) += amp;
        }
    }
    return op;
}

/// Rotated-frame three-level Hamiltonian
/// H = sum_j [delta_j |2><2|_j + g_j (a^dag |0><2|_j + a |2><0|_j) + Omega_j (|1><2|_j + |2><1|_j)].
/// Supports one or two qubits.
inline OperatorMatrix build_full_rotated(const ThreeLevelModel &model, int qubit_count, int cutoff = 2) {
    if (qubit_count < 1 || qubit_count > 2) {
        throw ArgumentError("three-level simulation supports one or two qubits");
    }
    if (cutoff < 2) {
        throw ArgumentError("cavity cutoff must be at least 2");
    }
    model.validate(qubit_count);
    const Eigen::Index dim = detail::ipow(3, qubit_count) * cutoff;
    OperatorMatrix op;
    op.matrix = Eigen::MatrixXcd::Zero(dim, dim);
    op.hermitian = true;
    op.qubit_count = qubit_count;
    op.local_dim = 3;
    op.fock_cutoff = cutoff;
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        const Eigen::Index reg = idx / cutoff;
        const int photon = static_cast<int>(idx % cutoff);
        for (int j = 1; j <= qubit_count; ++j) {
            const Eigen::Index place = detail::ipow(3, qubit_count - j);
            const int level = static_cast<int>((reg / place) % 3);
            if (level != 2) {
                continue;
            }
            const auto k = static_cast<std::size_t>(j - 1);
            op.matrix(idx, idx) += model.delta[k];
            // |2>_j <-> |1>_j, photon unchanged
            const Eigen::Index to_one = (reg - place) * cutoff + photon;
            op.matrix(to_one, idx) += model.omega[k];
            op.matrix(idx, to_one) += model.omega[k];
            // |2>_j |n> <-> |0>_j |n+1>
            if (photon + 1 < cutoff) {
                const Eigen::Index to_zero = (reg - 2 * place) * cutoff + photon + 1;
                const double amp = model.g[k] * std::sqrt(static_cast<double>(photon + 1));
                op.matrix(to_zero, idx) += amp;
                op.matrix(idx, to_zero) += amp;
            }
        }
    }
    return op;
}

/// a^dag a + sum_j |1><1|_j over the two-level basis.
inline Eigen::MatrixXcd excitation_number(int qubit_count, int cutoff) {
    detail::require_operator_capacity(qubit_count, cutoff);
    const Eigen::Index dim = detail::ipow(2, qubit_count) * cutoff;
    Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        auto reg = static_cast<unsigned long long>(idx / cutoff);
        n(idx, idx) = static_cast<double>(idx % cutoff) + static_cast<double>(__builtin_popcountll(reg));
    }
    return n;
}

/// a^dag a over the two-level basis.
inline Eigen::MatrixXcd photon_number(int qubit_count, int cutoff) {
    detail::require_operator_capacity(qubit_count, cutoff);
    const Eigen::Index dim = detail::ipow(2, qubit_count) * cutoff;
    Eigen::VectorXcd diag(dim);
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        diag(idx) = static_cast<double>(idx % cutoff);
    }
    return diag.asDiagonal();
}

/// Embeds a two-level state into the three-level basis (level |2> unpopulated).
inline Eigen::VectorXcd embed_in_three_level(const StateVector &s) {
    const int n = s.qubit_count();
    const int cutoff = s.fock_cutoff();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(detail::ipow(3, n) * cutoff);
    auto amps = s.amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        Eigen::Index reg3 = 0;
        for (int j = 1; j <= n; ++j) {
            reg3 = reg3 * 3 + s.bit(i, j);
        }
        out(reg3 * cutoff + s.photon(i)) = amps[i];
    }
    return out;
}

/// Text dump of the nonzero entries: `<row> <col> <re> <im>` with 17 significant digits.
inline void write_matrix_dump(std::ostream &out, const OperatorMatrix &op) {
    std::ostringstream line;
    line << std::scientific << std::setprecision(16);
    for (Eigen::Index r = 0; r < op.matrix.rows(); ++r) {
        for (Eigen::Index c = 0; c < op.matrix.cols(); ++c) {
            const Complex v = op.matrix(r, c);
            if (v == Complex(0.0, 0.0)) {
                continue;
            }
            line.str("");
            line << r << ' ' << c << ' ' << v.real() << ' ' << v.imag() << '\n';
            out << line.str();
        }
    }
}

inline Eigen::VectorXcd to_eigen(const StateVector &s) {
    auto amps = s.amplitudes();
    Eigen::VectorXcd v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = amps[i];
    }
    return v;
}

inline StateVector from_eigen(const Eigen::VectorXcd &v, int qubit_count, int cutoff) {
    return StateVector(qubit_count, cutoff, std::vector<Complex>(v.data(), v.data() + v.size()));
}

}  // namespace cavent
