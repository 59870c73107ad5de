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

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "cavent/statespace.hpp"

namespace cavent {

/// |<target|psi>|^2 / (||psi||^2 ||target||^2). Global-phase invariant, in [0, 1].
inline double fidelity(const StateVector &psi, const StateVector &target) {
    double np = psi.norm_squared();
    double nt = target.norm_squared();
    if (np == 0.0 || nt == 0.0) {
        throw ArgumentError("fidelity of a zero-norm state is undefined");
    }
    double f = std::norm(inner(target, psi)) / (np * nt);
    return std::clamp(f, 0.0, 1.0);
}

/// |<target|psi>|^2 / ||target||^2 with psi left unnormalized, i.e. fidelity times the
/// success probability of a protocol output.
inline double raw_fidelity(const StateVector &psi, const StateVector &target) {
    double nt = target.norm_squared();
    if (nt == 0.0) {
        throw ArgumentError("fidelity against a zero-norm target is undefined");
    }
    return std::norm(inner(target, psi)) / nt;
}

/// Squared norm of an unnormalized protocol output: the probability that no photon leaked.
inline double success_probability(const StateVector &psi) {
    return psi.norm_squared();
}

struct StabilizerReport {
    int site = 0;
    double expectation = 0.0;
    /// +1 or -1 once |expectation| is within 1e-9 of 1; empty otherwise.
    std::optional<int> sign;
};

/// <K^(a)> on the normalized register state for the 1-D chain stabilizer
/// K^(a) = sigma_x^(a) sigma_z^(a-1) sigma_z^(a+1), using sigma_z = |1><1| - |0><0|.
inline StabilizerReport stabilizer_expectation(const StateVector &psi, int site) {
    if (psi.has_cavity()) {
        throw ArgumentError("stabilizer_expectation expects a bare qubit register");
    }
    require_qubit_index(psi, site);
    double norm_sq = psi.norm_squared();
    if (norm_sq == 0.0) {
        throw ArgumentError("stabilizer expectation of a zero-norm state is undefined");
    }
    const int n = psi.qubit_count();
    auto amps = psi.amplitudes();
    Complex total = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        double sign = 1.0;
        if (site > 1 && psi.bit(i, site - 1) == 0) {
            sign = -sign;
        }
        if (site < n && psi.bit(i, site + 1) == 0) {
            sign = -sign;
        }
        total += std::conj(amps[psi.flip(i, site)]) * sign * amps[i];
    }
    StabilizerReport report;
    report.site = site;
    report.expectation = std::clamp(total.real() / norm_sq, -1.0, 1.0);
    if (std::abs(report.expectation) > 1.0 - 1e-9) {
        report.sign = report.expectation > 0 ? 1 : -1;
    }
    return report;
}

inline std::vector<StabilizerReport> stabilizer_profile(const StateVector &psi) {
    std::vector<StabilizerReport> out;
    out.reserve(psi.qubit_count());
    for (int a = 1; a <= psi.qubit_count(); ++a) {
        out.push_back(stabilizer_expectation(psi, a));
    }
    return out;
}

}  // namespace cavent
