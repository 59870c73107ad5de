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

#include <string_view>
#include <vector>

namespace cavent {

enum class Mode { analytic, numeric };

inline std::string_view to_string(Mode m) {
    return m == Mode::analytic ? "analytic" : "numeric";
}

struct StepNorm {
    int step = 0;
    /// Squared norm of the full qubit-cavity state after this step.
    double norm_squared = 1.0;
};

/// Summary of one protocol execution.
struct RunReport {
    /// Normalized-state fidelity against the ideal target.
    double fidelity = 0.0;
    /// Squared norm of the unnormalized output.
    double success_probability = 0.0;
    std::vector<StepNorm> per_step;
    Mode mode = Mode::analytic;
    double kappa_over_lambda = 0.0;
    bool in_supported_regime = true;
    /// Relative weight left in the subsystems that should have disentangled.
    double residual = 0.0;
    /// Total protocol time (s).
    double duration = 0.0;
};

}  // namespace cavent
