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

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "cavent/cavent.hpp"
#include "cli/config.hpp"

namespace cavent::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int argument = 1;
inline constexpr int regime = 2;
inline constexpr int convergence = 3;
inline constexpr int validation = 4;
}  // namespace exit_code

enum class FidelityConvention { normalized, raw };

struct CliOptions {
    std::string dump_state;
    std::string dump_h;
    int jobs = 1;
    FidelityConvention convention = FidelityConvention::normalized;
    /// Off: runtime_s is written as 0 so sweep CSVs are byte-identical.
    bool timing = true;
};

/// Exit code for an exception escaping a command.
inline int classify(const std::exception &e) {
    if (dynamic_cast<const RegimeError *>(&e) != nullptr) {
        return exit_code::regime;
    }
    if (dynamic_cast<const ResidualError *>(&e) != nullptr || dynamic_cast<const NumericError *>(&e) != nullptr ||
        dynamic_cast<const UnsupportedSectorError *>(&e) != nullptr) {
        return exit_code::convergence;
    }
    return exit_code::argument;
}

inline std::string_view status_name(int code) {
    switch (code) {
    case exit_code::ok:
        return "ok";
    case exit_code::regime:
        return "regime_error";
    case exit_code::convergence:
        return "convergence_error";
    default:
        return "argument_error";
    }
}

/// Runs `body`, reporting any escaping exception on `err` and mapping it to an exit code.
inline int guarded(const std::function<int()> &body, std::ostream &err) {
    try {
        return body();
    } catch (const std::exception &e) {
        const int code = classify(e);
        err << "error: " << e.what() << '\n';
        return code;
    }
}

inline std::string fixed12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12f", v);
    return buf;
}

inline std::string sig12(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

/// Throws RegimeError when kappa / lambda_min leaves the perturbative window.
inline void require_supported_regime(double kappa, double lambda_min) {
    const double ratio = kappa / lambda_min;
    if (ratio > kSupportedKappaRatio * (1.0 + 1e-12)) {
        throw RegimeError("kappa/lambda = " + sig12(ratio) + " is outside the supported regime kappa/lambda <= " +
                          sig12(kSupportedKappaRatio));
    }
}

// ---------------------------------------------------------------------------------------------
// run

struct ResolvedRun {
    EffectiveModel model;
    StateVector target;
    ProtocolRun run;
    std::optional<WSolution> w;
};

inline ResolvedRun execute(const RunConfig &cfg, int n) {
    const std::vector<double> couplings = cfg.couplings_for(n);
    const double lambda_min = *std::min_element(couplings.begin(), couplings.end());
    const double kappa = cfg.resolved_kappa(lambda_min);
    require_supported_regime(kappa, lambda_min);
    RunOptions opts;
    opts.fock_cutoff = cfg.fock_cutoff;

    if (cfg.protocol == Protocol::cluster) {
        EffectiveModel model = EffectiveModel::all_active(couplings, kappa);
        ProtocolRun run = run_cluster(model, n, cfg.mode, opts);
        return {std::move(model), ideal_cluster(n), std::move(run), std::nullopt};
    }
    const WSolution sol = w_solve_lambda1(couplings, kappa);
    std::vector<double> all{sol.lambda1};
    all.insert(all.end(), couplings.begin(), couplings.end());
    EffectiveModel model = EffectiveModel::all_active(std::move(all), kappa);
    ProtocolRun run = run_w(model, sol.t, cfg.mode, opts);
    return {std::move(model), w_target(couplings, kappa, sol.t), std::move(run), sol};
}

inline int cmd_run(const RunConfig &cfg, const CliOptions &opts, std::ostream &out) {
    if (cfg.n < 1) {
        throw ArgumentError("config needs N");
    }
    const ResolvedRun r = execute(cfg, cfg.n);
    const RunReport &rep = r.run.report;
    const bool raw = opts.convention == FidelityConvention::raw;

    out << "protocol=" << to_string(cfg.protocol) << '\n';
    out << "mode=" << to_string(rep.mode) << '\n';
    out << "N=" << cfg.n << '\n';
    out << "kappa=" << sig12(r.model.kappa) << '\n';
    out << "lambda_min=" << sig12(r.model.min_active_lambda()) << '\n';
    out << "kappa_over_lambda=" << sig12(rep.kappa_over_lambda) << '\n';
    if (r.w) {
        out << "lambda1=" << sig12(r.w->lambda1) << '\n';
        out << "lambda1_iterations=" << r.w->iterations << '\n';
        out << "expected_success_probability=" << fixed12(std::exp(-r.model.kappa * r.w->t / 4.0)) << '\n';
    }
    out << "duration_s=" << sig12(rep.duration) << '\n';
    out << "fidelity_convention=" << (raw ? "raw" : "normalized") << '\n';
    out << "fidelity=" << fixed12(raw ? raw_fidelity(r.run.state, r.target) : rep.fidelity) << '\n';
    out << "success_probability=" << fixed12(rep.success_probability) << '\n';
    out << "residual=" << sci(rep.residual) << '\n';
    out << "in_supported_regime=" << (rep.in_supported_regime ? "true" : "false") << '\n';
    for (const StepNorm &s : rep.per_step) {
        out << "step_norm_squared." << s.step << '=' << sig12(s.norm_squared) << '\n';
    }
    if (cfg.protocol == Protocol::cluster) {
        for (const StabilizerReport &s : stabilizer_profile(r.run.state.normalized())) {
            out << "stabilizer." << s.site << '=' << sig12(s.expectation) << '\n';
        }
    }

    if (!opts.dump_state.empty()) {
        std::ofstream f(opts.dump_state);
        if (!f) {
            throw ArgumentError("cannot write state dump '" + opts.dump_state + "'");
        }
        write_state_dump(f, r.run.state);
        out << "state_dump=" << opts.dump_state << '\n';
    }
    if (!opts.dump_h.empty()) {
        const OperatorMatrix h = build_effective(r.model, r.model.qubit_count(), cfg.fock_cutoff);
        std::ofstream f(opts.dump_h);
        if (!f) {
            throw ArgumentError("cannot write Hamiltonian dump '" + opts.dump_h + "'");
        }
        write_matrix_dump(f, h);
        out << "hamiltonian_dump=" << opts.dump_h << '\n';
    }
    return exit_code::ok;
}

// ---------------------------------------------------------------------------------------------
// sweep

struct SweepRow {
    int n = 0;
    double kappa_over_lambda = 0.0;
    double fidelity = std::numeric_limits<double>::quiet_NaN();
    double success_probability = std::numeric_limits<double>::quiet_NaN();
    double runtime_s = 0.0;
    int code = exit_code::ok;
};

inline SweepRow sweep_point(const RunConfig &cfg, int n, double ratio, FidelityConvention convention) {
    SweepRow row;
    row.n = n;
    row.kappa_over_lambda = ratio;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const std::vector<double> couplings = cfg.couplings_for(n);
        const double lambda_min = *std::min_element(couplings.begin(), couplings.end());
        const double kappa = ratio * lambda_min;
        require_supported_regime(kappa, lambda_min);
        if (cfg.protocol == Protocol::cluster && n > kMaxDenseQubits) {
            if (cfg.mode == Mode::numeric) {
                throw CapacityError("numeric mode supports at most " + std::to_string(kMaxDenseOperatorQubits) +
                                    " qubits");
            }
            const ClusterMetrics m = cluster_fidelity_recursive(EffectiveModel::all_active(couplings, kappa), n);
            row.fidelity = m.fidelity;
            row.success_probability = m.success_probability;
        } else {
            RunOptions opts;
            opts.fock_cutoff = cfg.fock_cutoff;
            const ProtocolRun run = cfg.protocol == Protocol::cluster
                                        ? run_cluster(EffectiveModel::all_active(couplings, kappa), n, cfg.mode, opts)
                                        : run_w(couplings, kappa, cfg.mode, opts);
            row.fidelity = run.report.fidelity;
            row.success_probability = run.report.success_probability;
        }
        if (convention == FidelityConvention::raw) {
            // targets are normalized, so |<t|psi>|^2 = F * ||psi||^2
            row.fidelity *= row.success_probability;
        }
    } catch (const std::exception &e) {
        row.code = classify(e);
        row.fidelity = std::numeric_limits<double>::quiet_NaN();
        row.success_probability = std::numeric_limits<double>::quiet_NaN();
    }
    row.runtime_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return row;
}

/// Evaluates every grid point on up to `jobs` threads; rows come back in grid order.
inline std::vector<SweepRow> run_sweep(const RunConfig &cfg, int jobs, FidelityConvention convention) {
    if (!cfg.sweep) {
        throw ArgumentError("config has no sweep grid");
    }
    const std::vector<double> ratios = cfg.sweep->kappa_over_lambda.values();
    std::vector<std::pair<int, double>> grid;
    for (int n : cfg.sweep->n_list) {
        for (double r : ratios) {
            grid.emplace_back(n, r);
        }
    }
    if (grid.empty()) {
        throw ArgumentError("sweep grid is empty");
    }
    std::vector<SweepRow> rows(grid.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++) {
            rows[i] = sweep_point(cfg, grid[i].first, grid[i].second, convention);
        }
    };
    const int threads = std::clamp(jobs, 1, static_cast<int>(grid.size()));
    std::vector<std::jthread> pool;
    for (int k = 1; k < threads; ++k) {
        pool.emplace_back(worker);
    }
    worker();
    pool.clear();
    return rows;
}

inline void write_sweep_csv(std::ostream &out, Protocol protocol, const std::vector<SweepRow> &rows, bool timing) {
    out << "protocol,N,kappa_over_lambda,fidelity,success_probability,runtime_s,status\n";
    for (const SweepRow &r : rows) {
        out << to_string(protocol) << ',' << r.n << ',' << sig12(r.kappa_over_lambda) << ',' << sig12(r.fidelity)
            << ',' << sig12(r.success_probability) << ',' << sig12(timing ? r.runtime_s : 0.0) << ','
            << status_name(r.code) << '\n';
    }
}

/// Gnuplot script plotting F and P against kappa/lambda, one curve per N.
inline void write_gnuplot(std::ostream &out, const std::string &csv, const std::vector<int> &n_list) {
    std::string ns;
    for (int n : n_list) {
        ns += (ns.empty() ? "" : " ") + std::to_string(n);
    }
    out << "set datafile separator ','\n"
        << "set xlabel 'kappa/lambda'\n"
        << "set key bottom left\n"
        << "set multiplot layout 1,2\n"
        << "set ylabel 'F'\n"
        << "plot for [n in \"" << ns << "\"] '" << csv
        << "' every ::1 using ($2 == n+0 ? $3 : 1/0):4 with linespoints title 'N='.n\n"
        << "set ylabel 'P'\n"
        << "plot for [n in \"" << ns << "\"] '" << csv
        << "' every ::1 using ($2 == n+0 ? $3 : 1/0):5 with linespoints title 'N='.n\n"
        << "unset multiplot\n";
}

inline int cmd_sweep(const RunConfig &cfg, const CliOptions &opts, std::ostream &out) {
    const std::vector<SweepRow> rows = run_sweep(cfg, opts.jobs, opts.convention);
    if (cfg.output.empty() || cfg.output == "-") {
        write_sweep_csv(out, cfg.protocol, rows, opts.timing);
    } else {
        std::ofstream f(cfg.output);
        if (!f) {
            throw ArgumentError("cannot write sweep output '" + cfg.output + "'");
        }
        write_sweep_csv(f, cfg.protocol, rows, opts.timing);
        out << "output=" << cfg.output << '\n';
    }
    if (!cfg.gnuplot.empty()) {
        std::ofstream g(cfg.gnuplot);
        if (!g) {
            throw ArgumentError("cannot write gnuplot script '" + cfg.gnuplot + "'");
        }
        write_gnuplot(g, cfg.output.empty() ? "sweep.csv" : cfg.output, cfg.sweep->n_list);
    }
    int worst = exit_code::ok;
    std::size_t failed = 0;
    for (const SweepRow &r : rows) {
        if (r.code != exit_code::ok) {
            ++failed;
            worst = std::max(worst, r.code);
        }
    }
    if (!(cfg.output.empty() || cfg.output == "-")) {
        out << "rows=" << rows.size() << '\n' << "failed=" << failed << '\n';
    }
    return worst;
}

// ---------------------------------------------------------------------------------------------
// validate

enum class CheckStatus { pass, fail, flagged };

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::pass;
    double residual = 0.0;
    double threshold = 0.0;
};

inline CheckResult threshold_check(std::string name, double residual, double threshold) {
    return {std::move(name), residual <= threshold ? CheckStatus::pass : CheckStatus::fail, residual, threshold};
}

struct ValidationParams {
    double lambda = 1.0;
    double kappa_over_lambda = 0.05;
    int w_qubits = 4;
    int cluster_max = 4;
    double delta_over_g = 10.0;
    double omega_over_g = 1.0;
};

inline ValidationParams validation_params(const RunConfig &cfg) {
    ValidationParams p;
    p.lambda = cfg.scalar_lambda();
    if (cfg.has_kappa_source()) {
        p.kappa_over_lambda = cfg.resolved_kappa(p.lambda) / p.lambda;
    }
    require_supported_regime(p.kappa_over_lambda * p.lambda, p.lambda);
    if (cfg.n >= 2) {
        p.w_qubits = std::min(cfg.n, kMaxDenseOperatorQubits);
        p.cluster_max = std::min(cfg.n, 6);
    }
    p.delta_over_g = cfg.three_level.delta_over_g;
    p.omega_over_g = cfg.three_level.omega_over_g;
    return p;
}

inline std::vector<CheckResult> run_validation(const ValidationParams &p) {
    std::vector<CheckResult> checks;
    const double kappa = p.kappa_over_lambda * p.lambda;

    {
        std::mt19937 rng(20260101);
        std::uniform_real_distribution<double> lam(0.2, 5.0);
        std::uniform_real_distribution<double> ratio(0.0, kSupportedKappaRatio);
        double worst = 0.0;
        for (int k = 0; k < 200; ++k) {
            const double l = lam(rng);
            const double kap = ratio(rng) * l;
            const StepParams q = step_params(l, kap, TransferBranch::qubit_to_cavity);
            const StepParams c = step_params(l, kap, TransferBranch::cavity_to_qubit);
            worst = std::max({worst, std::abs(q.stay_qubit), std::abs(c.stay_cavity),
                              std::abs(q.a_coef - std::exp(-kap * q.t / 4.0)),
                              std::abs(c.a_coef - std::exp(-kap * c.t / 4.0))});
        }
        checks.push_back(threshold_check("full_transfer_roots", worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (int n = 2; n <= p.cluster_max; ++n) {
            const EffectiveModel m = EffectiveModel::equal(n, p.lambda, kappa);
            const ProtocolRun a = run_cluster(m, n, Mode::analytic);
            const ProtocolRun b = run_cluster(m, n, Mode::numeric);
            worst = std::max(worst, distance(a.state, b.state));
        }
        checks.push_back(threshold_check("cluster_analytic_vs_numeric", worst, 1e-8));
    }
    {
        double worst = 0.0;
        for (int n = 2; n <= 8; ++n) {
            const EffectiveModel m = EffectiveModel::equal(n, p.lambda, kappa);
            const ClusterAnalytic dense = cluster_analytic(m, n);
            const ClusterMetrics rec = cluster_fidelity_recursive(m, n);
            worst = std::max({worst, std::abs(rec.fidelity - dense.report.fidelity),
                              std::abs(rec.success_probability - dense.report.success_probability)});
        }
        checks.push_back(threshold_check("cluster_recursion_vs_dense", worst, 1e-10));
    }
    {
        const std::vector<double> rest(static_cast<std::size_t>(p.w_qubits - 1), p.lambda);
        const WSolution sol = w_solve_lambda1(rest, kappa);
        std::vector<double> all{sol.lambda1};
        all.insert(all.end(), rest.begin(), rest.end());
        const WAmplitudes amps = w_amplitudes(EffectiveModel::all_active(all, kappa), sol.t);
        double leftover = std::max(std::abs(amps.cavity), std::abs(amps.qubits.front()));
        checks.push_back(threshold_check("w_cancellation", leftover, 1e-10));

        const ProtocolRun a = run_w(rest, kappa, Mode::analytic);
        const ProtocolRun b = run_w(rest, kappa, Mode::numeric);
        checks.push_back(threshold_check("w_analytic_vs_numeric", distance(a.state, b.state), 1e-8));
        checks.push_back(threshold_check("w_success_probability",
                                         std::abs(a.report.success_probability - std::exp(-kappa * sol.t / 4.0)),
                                         1e-12));
    }
    {
        const EliminationCheck e = compare_elimination(1.0, p.omega_over_g, p.delta_over_g);
        CheckResult c = threshold_check("three_level_elimination", 1.0 - e.endpoint_fidelity, 0.01);
        if (c.status == CheckStatus::fail && e.adiabaticity != Adiabaticity::good) {
            c.status = CheckStatus::flagged;
        }
        checks.push_back(std::move(c));
    }
    return checks;
}

inline int cmd_validate(const RunConfig &cfg, std::ostream &out) {
    const ValidationParams p = validation_params(cfg);
    out << "lambda=" << sig12(p.lambda) << '\n';
    out << "kappa_over_lambda=" << sig12(p.kappa_over_lambda) << '\n';
    if (cfg.coupling) {
        out << "lambda_effective=" << sig12(effective_coupling(cfg.coupling->g, cfg.coupling->omega,
                                                                cfg.coupling->delta))
            << '\n';
    }
    if (cfg.quality) {
        out << "kappa_from_quality=" << sig12(kappa_from_quality(*cfg.quality, *cfg.nu_c_hz)) << '\n';
    }
    const ThreeLevelModel three = ThreeLevelModel::uniform(1, 1.0, p.omega_over_g, p.delta_over_g);
    out << "three_level.delta_over_g=" << sig12(p.delta_over_g) << '\n';
    out << "three_level.adiabaticity="
        << (three.adiabaticity() == Adiabaticity::good
                ? "good"
                : (three.adiabaticity() == Adiabaticity::marginal ? "marginal" : "violated"))
        << '\n';

    const std::vector<CheckResult> checks = run_validation(p);
    const CheckResult *worst = nullptr;
    for (const CheckResult &c : checks) {
        const char *status = c.status == CheckStatus::pass ? "pass" : (c.status == CheckStatus::fail ? "fail" : "flagged");
        out << "check." << c.name << '=' << status << " residual=" << sci(c.residual)
            << " threshold=" << sci(c.threshold) << '\n';
        if (c.status == CheckStatus::fail &&
            (worst == nullptr || c.residual / c.threshold > worst->residual / worst->threshold)) {
            worst = &c;
        }
    }
    if (worst != nullptr) {
        out << "worst_check=" << worst->name << '\n' << "worst_residual=" << sci(worst->residual) << '\n';
        return exit_code::validation;
    }
    return exit_code::ok;
}

}  // namespace cavent::cli
